use super::field::{SpaceGrid, SpectralData, SpectralField};
use super::phi::{Phi, Quadrature};
use super::source::Source;
use crate::error::{Error, Result};
use crate::kernel::FractionalOrder;

/// Stopping rule for the fixed-point iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardConfig {
    /// Threshold on `sup_j ‖w_{n+1}(x_j,·) - w_n(x_j,·)‖`.
    pub tol: f64,
    pub max_iter: usize,
    pub quadrature: Quadrature,
}

impl Default for PicardConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 200,
            quadrature: Quadrature::default(),
        }
    }
}

impl PicardConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter(
                "max_iter must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PicardReport {
    /// Applications of `Φ` performed.
    pub iterations: usize,
    /// `increments[n] = sup_j ‖w_{n+1} - w_n‖`, starting from `w_0 = 0`.
    pub increments: Vec<f64>,
    pub converged: bool,
    /// Some kernel evaluation hit the exponent clamp.
    pub saturated: bool,
}

impl PicardReport {
    pub fn last_increment(&self) -> f64 {
        self.increments.last().copied().unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PicardSolution {
    pub field: SpectralField,
    pub report: PicardReport,
}

/// Iterates `w_{n+1} = Φ(w_n)` from `w_0 = 0` until the sup-over-x `L²`
/// increment drops below `cfg.tol`.
///
/// A source with `K = 0` makes `Φ` constant, so the first iterate is the
/// fixed point. Increments growing three times in a row are reported as
/// divergence; running out of iterations returns the last iterate inside
/// [`Error::MaxIterExceeded`].
pub fn picard_solve(
    order: FractionalOrder,
    space: SpaceGrid,
    data: &SpectralData,
    src: &dyn Source,
    cutoff: Option<f64>,
    cfg: &PicardConfig,
) -> Result<PicardSolution> {
    cfg.validate()?;
    let phi = Phi::new(order, space, data, cutoff, cfg.quadrature)?;
    picard_iterate(&phi, src, cfg)
}

/// Same as [`picard_solve`] with a prebuilt operator.
pub fn picard_iterate(
    phi: &Phi<'_>,
    src: &dyn Source,
    cfg: &PicardConfig,
) -> Result<PicardSolution> {
    cfg.validate()?;
    let mut w = SpectralField::zeros(*phi.space(), *phi.data().band());
    let mut increments = Vec::new();
    let saturated = phi.saturated();

    if src.lipschitz() == 0.0 {
        let next = phi.apply(&w, src)?;
        increments.push(next.sup_l2_distance(&w));
        return Ok(PicardSolution {
            field: next,
            report: PicardReport {
                iterations: 1,
                increments,
                converged: true,
                saturated,
            },
        });
    }

    for n in 1..=cfg.max_iter {
        let next = phi.apply(&w, src)?;
        let inc = next.sup_l2_distance(&w);
        increments.push(inc);
        w = next;
        if inc < cfg.tol {
            return Ok(PicardSolution {
                field: w,
                report: PicardReport {
                    iterations: n,
                    increments,
                    converged: true,
                    saturated,
                },
            });
        }
        let k = increments.len();
        if k >= 4 && (k - 3..k).all(|m| increments[m] > increments[m - 1]) {
            return Err(Error::Diverged(Box::new(PicardSolution {
                field: w,
                report: PicardReport {
                    iterations: n,
                    increments,
                    converged: false,
                    saturated,
                },
            })));
        }
    }
    Err(Error::MaxIterExceeded(Box::new(PicardSolution {
        field: w,
        report: PicardReport {
            iterations: cfg.max_iter,
            increments,
            converged: false,
            saturated,
        },
    })))
}

/// Squared `m`-step contraction factor `(K e^{ω_max^{α/2} cos(απ/4)})^{2m} / m!`
/// for `m = 1..=m_max`, computed in log space.
pub fn contraction_bound(
    order: FractionalOrder,
    lipschitz_k: f64,
    omega_max: f64,
    m_max: usize,
) -> Vec<f64> {
    let growth = omega_max.powf(0.5 * order.alpha()) * order.cos_quarter();
    let log_c2 = 2.0 * (lipschitz_k.ln() + growth);
    let mut log_fact = 0.0;
    (1..=m_max)
        .map(|m| {
            log_fact += (m as f64).ln();
            (m as f64 * log_c2 - log_fact).exp()
        })
        .collect()
}
