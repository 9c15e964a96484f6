//! Benchmarks with a known solution: noisy data, relative errors, the error
//! tables and convergence-rate fits.

mod config;
mod noise;
mod output;
mod problem;
mod rate;
pub mod reference;
mod sweep;
mod table;

pub use config::ExperimentConfig;
pub use noise::{amplitude_for_delta, inject_noise, NoisyData};
pub use output::{
    read_boundary_csv, write_amplification_csv, write_rate_csv, write_solution_csv,
    write_sweep_csv, write_table_csv,
};
pub use problem::{
    exact_solution, example_source, smooth_profile, smooth_profile_derivative, Problem,
};
pub use rate::{fit_loglog, run_rate, LogLogFit, RatePoint, RateStudy, SlopeFit};
pub use sweep::{noise_sweep, SweepEntry, SweepResult};
pub use table::{compensated_sum, run_table, run_table_with_amplitude, ErrorCell, ErrorTable};

use crate::error::{Error, Result};
use crate::solver::{
    field_to_time, picard_solve, BoundaryPair, PicardConfig, PicardSolution, SpaceGrid,
    SpectralData, TimeField,
};
use crate::spectral::TimeGrid;

/// `(Σ_l |u - v|² / Σ_l |u|²)^{1/2}` over the samples `t_l`, `l = 0..N-1`.
pub fn relative_error(exact: &[f64], approx: &[f64]) -> Result<f64> {
    if exact.len() != approx.len() {
        return Err(Error::GridMismatch(format!(
            "rows have {} and {} samples",
            exact.len(),
            approx.len()
        )));
    }
    let den: f64 = exact.iter().map(|u| u * u).sum();
    if den == 0.0 {
        return Err(Error::ZeroDenominator(
            "the exact row vanishes identically".into(),
        ));
    }
    let num: f64 = exact
        .iter()
        .zip(approx)
        .map(|(u, v)| (u - v) * (u - v))
        .sum();
    Ok((num / den).sqrt())
}

/// Grids of a configuration and the exact solution on its report rows.
#[derive(Debug, Clone)]
pub struct SpaceSetup {
    pub space: SpaceGrid,
    pub time: TimeGrid,
    /// Node index of every entry of `cfg.x`.
    pub rows: Vec<usize>,
    /// Exact solution on those rows.
    pub exact: Vec<Vec<f64>>,
}

impl SpaceSetup {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let space = SpaceGrid::new(cfg.n_x)?;
        let time = TimeGrid::new(cfg.n_samples, cfg.t_max)?;
        let rows: Vec<usize> = cfg.x.iter().map(|&x| space.nearest(x)).collect();
        let exact = rows
            .iter()
            .map(|&j| {
                let x = space.point(j);
                time.points().map(|t| cfg.problem.exact(x, t)).collect()
            })
            .collect();
        Ok(Self {
            space,
            time,
            rows,
            exact,
        })
    }
}

/// The Picard settings of a configuration.
pub fn picard_config(cfg: &ExperimentConfig) -> PicardConfig {
    PicardConfig {
        tol: cfg.tol,
        max_iter: cfg.max_iter,
        ..PicardConfig::default()
    }
}

/// Solves the configured problem from the given boundary data.
pub fn solve_pair(
    cfg: &ExperimentConfig,
    space: SpaceGrid,
    data: &BoundaryPair,
    cutoff: Option<f64>,
) -> Result<PicardSolution> {
    let order = cfg.order()?;
    let spectral = SpectralData::from_boundary(data);
    picard_solve(
        order,
        space,
        &spectral,
        &cfg.problem.source(order),
        cutoff,
        &picard_config(cfg),
    )
}

fn solve_boundary(
    cfg: &ExperimentConfig,
    setup: &SpaceSetup,
    data: &BoundaryPair,
    cutoff: Option<f64>,
) -> Result<TimeField> {
    let sol = solve_pair(cfg, setup.space, data, cutoff)?;
    let field = field_to_time(&sol.field);
    field.ensure_real()?;
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_error_cases() {
        let u = [1.0, 2.0, 3.0];
        assert_eq!(relative_error(&u, &u).unwrap(), 0.0);
        assert_eq!(relative_error(&u, &[0.0; 3]).unwrap(), 1.0);
        assert!(matches!(
            relative_error(&[0.0; 3], &u),
            Err(Error::ZeroDenominator(_))
        ));
        assert!(relative_error(&u, &[0.0; 2]).is_err());
    }
}
