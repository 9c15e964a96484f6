use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::noise::{amplitude_for_delta, inject_noise};
use super::table::compensated_sum;
use super::{relative_error, solve_boundary, SpaceSetup};
use crate::error::{Error, Result};
use crate::regularization::{bound_l2, epsilon_l2};

/// Measured `δ`, cutoff and per-row errors of one repetition.
type Run = (f64, f64, Vec<f64>);

/// Least-squares line through `(ln δ, ln e)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
}

/// Fits `ln e = slope · ln δ + intercept`. Needs at least three points with
/// positive values and `δ` spanning two decades.
pub fn fit_loglog(deltas: &[f64], errors: &[f64]) -> Result<LogLogFit> {
    if deltas.len() != errors.len() {
        return Err(Error::DegenerateFit(
            "deltas and errors differ in length".into(),
        ));
    }
    if deltas.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "{} points, need at least 3",
            deltas.len()
        )));
    }
    if deltas
        .iter()
        .chain(errors)
        .any(|v| !(*v > 0.0) || !v.is_finite())
    {
        return Err(Error::DegenerateFit(
            "values must be positive and finite".into(),
        ));
    }
    let (lo, hi) = deltas
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &d| {
            (lo.min(d), hi.max(d))
        });
    if hi / lo < 100.0 {
        return Err(Error::DegenerateFit(format!(
            "deltas span {:.2} decades, need 2",
            (hi / lo).log10()
        )));
    }
    let xs: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    Ok(LogLogFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
    })
}

/// Averages at one target noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct RatePoint {
    pub target_delta: f64,
    pub mean_delta: f64,
    /// Mean cutoff `1/ε` over the repetitions.
    pub mean_omega_max: f64,
    /// Mean relative error per report row.
    pub mean_error: Vec<f64>,
    pub n_valid: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub x: f64,
    pub fit: LogLogFit,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateStudy {
    pub points: Vec<RatePoint>,
    /// Fits of the measured errors.
    pub fits: Vec<SlopeFit>,
    /// Fits of the theoretical bound at the same noise levels.
    pub bound_fits: Vec<SlopeFit>,
}

/// For each target level, perturbs the data `repetitions` times, picks
/// `ε = epsilon_l2(δ)` from the measured `δ` of each draw, solves with
/// cutoff `1/ε` and records the relative error on every report row. Slopes
/// are fitted to the mean error against the mean measured `δ`.
pub fn run_rate(cfg: &ExperimentConfig) -> Result<RateStudy> {
    cfg.validate()?;
    let order = cfg.order()?;
    let setup = SpaceSetup::new(cfg)?;
    let clean = cfg.problem.boundary(setup.time);
    let reps = cfg.repetitions;

    let mut points = Vec::with_capacity(cfg.noise_levels.len());
    for (level_idx, &target) in cfg.noise_levels.iter().enumerate() {
        let amp = amplitude_for_delta(&clean, target);
        let runs: Vec<Option<Run>> = (0..reps)
            .into_par_iter()
            .map(|r| {
                let stream = (level_idx * reps + r) as u64;
                let noisy = inject_noise(&clean, amp, cfg.seed, stream).ok()?;
                let omega_max = 1.0 / epsilon_l2(noisy.measured_delta, order).ok()?;
                let field = solve_boundary(cfg, &setup, &noisy.data, Some(omega_max)).ok()?;
                let errors = setup
                    .rows
                    .iter()
                    .zip(&setup.exact)
                    .map(|(&j, exact)| relative_error(exact, field.row(j)).ok())
                    .collect::<Option<Vec<f64>>>()?;
                Some((noisy.measured_delta, omega_max, errors))
            })
            .collect();
        let ok: Vec<&Run> = runs.iter().flatten().collect();
        let n = ok.len();
        let mean = |f: &dyn Fn(&Run) -> f64| {
            if n == 0 {
                f64::NAN
            } else {
                compensated_sum(ok.iter().map(|v| f(v))) / n as f64
            }
        };
        points.push(RatePoint {
            target_delta: target,
            mean_delta: mean(&|v| v.0),
            mean_omega_max: mean(&|v| v.1),
            mean_error: (0..cfg.x.len()).map(|row| mean(&|v| v.2[row])).collect(),
            n_valid: n,
        });
    }

    let deltas: Vec<f64> = points.iter().map(|p| p.mean_delta).collect();
    let mut fits = Vec::new();
    let mut bound_fits = Vec::new();
    for (row, &j) in setup.rows.iter().enumerate() {
        let x = setup.space.point(j);
        let errors: Vec<f64> = points.iter().map(|p| p.mean_error[row]).collect();
        fits.push(SlopeFit {
            x,
            fit: fit_loglog(&deltas, &errors)?,
            expected: 1.0 - x,
        });
        if x < 1.0 {
            let bounds = deltas
                .iter()
                .map(|&d| bound_l2(x, d, epsilon_l2(d, order)?, order, 1.0, 1.0))
                .collect::<Result<Vec<f64>>>()?;
            bound_fits.push(SlopeFit {
                x,
                fit: fit_loglog(&deltas, &bounds)?,
                expected: 1.0 - x,
            });
        }
    }
    Ok(RateStudy {
        points,
        fits,
        bound_fits,
    })
}
