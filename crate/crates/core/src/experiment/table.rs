use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::noise::inject_noise;
use super::{relative_error, solve_boundary, SpaceSetup};
use crate::error::Result;

/// Mean and spread of one `(x, ω_max)` cell over the repetitions that
/// solved successfully.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorCell {
    pub mean: f64,
    pub std: f64,
    /// Repetitions that contributed; failed solves are left out.
    pub n_valid: usize,
}

impl ErrorCell {
    pub fn is_valid(&self) -> bool {
        self.n_valid > 0
    }

    fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        if n == 0 {
            return Self {
                mean: f64::NAN,
                std: f64::NAN,
                n_valid: 0,
            };
        }
        let mean = compensated_sum(samples.iter().copied()) / n as f64;
        let var = if n > 1 {
            compensated_sum(samples.iter().map(|s| (s - mean) * (s - mean))) / (n - 1) as f64
        } else {
            0.0
        };
        Self {
            mean,
            std: var.sqrt(),
            n_valid: n,
        }
    }
}

/// Neumaier summation.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Relative errors indexed by `x` (rows) and `ω_max` (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub alpha: f64,
    pub seed: u64,
    pub repetitions: usize,
    pub noise_amplitude: f64,
    pub x: Vec<f64>,
    pub omega_max: Vec<f64>,
    /// `cells[row][col]`.
    pub cells: Vec<Vec<ErrorCell>>,
    /// Mean measured noise level over the repetitions.
    pub mean_delta: f64,
}

impl ErrorTable {
    pub fn cell(&self, row: usize, col: usize) -> &ErrorCell {
        &self.cells[row][col]
    }

    pub fn means(&self) -> Vec<Vec<f64>> {
        self.cells
            .iter()
            .map(|r| r.iter().map(|c| c.mean).collect())
            .collect()
    }

    /// Every column nondecreasing in `x`.
    pub fn nondecreasing_in_x(&self) -> bool {
        (0..self.omega_max.len())
            .all(|c| self.cells.windows(2).all(|w| w[0][c].mean <= w[1][c].mean))
    }

    /// Every row nonincreasing in `ω_max`.
    pub fn nonincreasing_in_omega(&self) -> bool {
        self.cells
            .iter()
            .all(|r| r.windows(2).all(|w| w[1].mean <= w[0].mean))
    }
}

/// For each repetition, perturbs the data once, solves once per cutoff and
/// records the relative error on every requested row. Jobs run in parallel;
/// the reduction is done in a fixed order, so the table is bit-identical
/// across thread counts.
pub fn run_table(cfg: &ExperimentConfig) -> Result<ErrorTable> {
    run_table_with_amplitude(cfg, cfg.noise_amplitude)
}

pub fn run_table_with_amplitude(cfg: &ExperimentConfig, amplitude: f64) -> Result<ErrorTable> {
    cfg.validate()?;
    let setup = SpaceSetup::new(cfg)?;
    let clean = cfg.problem.boundary(setup.time);
    let n_cols = cfg.omega_max.len();
    let reps = cfg.repetitions as u64;

    let noisy: Vec<_> = (0..reps)
        .map(|r| inject_noise(&clean, amplitude, cfg.seed, r))
        .collect::<Result<_>>()?;

    let jobs: Vec<(usize, usize)> = (0..cfg.repetitions)
        .flat_map(|r| (0..n_cols).map(move |c| (r, c)))
        .collect();
    let results: Vec<Option<Vec<f64>>> = jobs
        .par_iter()
        .map(|&(r, c)| {
            let field = solve_boundary(cfg, &setup, &noisy[r].data, Some(cfg.omega_max[c])).ok()?;
            setup
                .rows
                .iter()
                .zip(&setup.exact)
                .map(|(&j, exact)| relative_error(exact, field.row(j)).ok())
                .collect()
        })
        .collect();

    let mut cells = vec![Vec::with_capacity(n_cols); cfg.x.len()];
    for c in 0..n_cols {
        for (row, cells_row) in cells.iter_mut().enumerate() {
            let samples: Vec<f64> = (0..cfg.repetitions)
                .filter_map(|r| results[r * n_cols + c].as_ref().map(|v| v[row]))
                .collect();
            cells_row.push(ErrorCell::from_samples(&samples));
        }
    }
    Ok(ErrorTable {
        alpha: cfg.alpha,
        seed: cfg.seed,
        repetitions: cfg.repetitions,
        noise_amplitude: amplitude,
        x: cfg.x.clone(),
        omega_max: cfg.omega_max.clone(),
        cells,
        mean_delta: compensated_sum(noisy.iter().map(|n| n.measured_delta)) / reps as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancellation() {
        assert_eq!(compensated_sum([1.0, 1e100, 1.0, -1e100]), 2.0);
        assert_eq!(compensated_sum(std::iter::empty()), 0.0);
    }

    #[test]
    fn cell_statistics() {
        let c = ErrorCell::from_samples(&[1.0, 2.0, 3.0]);
        assert_eq!(c.mean, 2.0);
        assert_eq!(c.std, 1.0);
        assert_eq!(c.n_valid, 3);
        assert!(!ErrorCell::from_samples(&[]).is_valid());
        assert_eq!(ErrorCell::from_samples(&[0.5]).std, 0.0);
    }
}
