//! The instability construction: a source with Lipschitz constant ½ and data
//! concentrated on a narrow high-frequency band, whose solutions blow up
//! while the data vanish.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{symbol, FractionalOrder};
use crate::solver::{
    picard_solve, LineSource, PicardConfig, SpaceGrid, SpectralData, SpectralField,
};
use crate::spectral::{FrequencyBand, FrequencyGrid, TimeGrid};

/// `f̂(z, ω, û) = ½ e^{-k(ω)} û` for `ω >= 0`, zero for `ω < 0`.
pub fn special_factor(order: FractionalOrder, omega: f64) -> Complex64 {
    if omega < 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        0.5 * (-symbol(order, omega).value()).exp()
    }
}

/// The special source as a line-wise source with `K = ½`.
pub fn special_source(order: FractionalOrder) -> LineSource {
    LineSource::new(0.5, move |_, omega, u| special_factor(order, omega) * u)
}

/// The special source applied to a whole field.
pub fn special_source_hat(order: FractionalOrder, field: &SpectralField) -> SpectralField {
    let band = *field.band();
    let factors: Vec<Complex64> = (0..band.len())
        .map(|i| special_factor(order, band.omega(i)))
        .collect();
    let rows = field
        .rows()
        .map(|row| row.iter().zip(&factors).map(|(u, c)| c * u).collect())
        .collect();
    SpectralField::from_rows(*field.space(), band, rows).expect("same shape as the input")
}

/// Bins per band used by [`illposed_grid`].
pub const BINS_PER_BAND: usize = 8;

/// A frequency grid with `Δω = 1/(8n)` reaching past `n + 1/n`.
///
/// Only the band is ever touched, so the (possibly huge) sample count costs
/// nothing.
pub fn illposed_grid(n: u32) -> Result<FrequencyGrid> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let n = n as f64;
    let spacing = 1.0 / (BINS_PER_BAND as f64 * n);
    let needed = 2.0 * ((n + 1.0 / n) / spacing + 1.0);
    let n_samples = (needed.ceil() as usize).next_power_of_two();
    Ok(TimeGrid::new(n_samples, std::f64::consts::TAU / spacing)?.frequencies())
}

/// `ĝ_n = χ/k`, `ĥ_n = χ` on the half-open band `[n, n + 1/n)`.
pub fn build_gn_hn(n: u32, grid: FrequencyGrid, order: FractionalOrder) -> Result<SpectralData> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let lo = n as f64;
    let hi = lo + 1.0 / lo;
    let band = FrequencyBand::covering(grid, lo, hi)?;
    if band.len() < 4 {
        return Err(Error::UnresolvableBand {
            lo,
            hi,
            reason: format!(
                "only {} samples fall in the band, need at least 4",
                band.len()
            ),
        });
    }
    let h_hat = vec![Complex64::new(1.0, 0.0); band.len()];
    let g_hat = (0..band.len())
        .map(|i| 1.0 / symbol(order, band.omega(i)).value())
        .collect();
    SpectralData::new(band, g_hat, h_hat)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Amplification {
    pub n: u32,
    /// `‖g_n‖ + ‖h_n‖`.
    pub data_norm: f64,
    /// `sup_x ‖u_n(x, ·)‖`.
    pub sup_solution_norm: f64,
    /// `sup_x ‖u_n‖ / (‖g_n‖ + ‖h_n‖)`, 0 when both vanish.
    pub ratio: f64,
    pub saturated: bool,
    pub iterations: usize,
}

impl Amplification {
    /// `sup_x ‖u_n(x, ·)‖²`.
    pub fn sup_squared(&self) -> f64 {
        self.sup_solution_norm * self.sup_solution_norm
    }
}

/// Solves the problem with the special source and data `(g_n, h_n)` on
/// `space`, without truncation unless `cutoff` is given. The zero-data
/// solution is identically zero, so `u_n - u_0 = u_n`.
///
/// `cfg.tol` is taken relative to the size of the linear part.
pub fn amplification(
    n: u32,
    order: FractionalOrder,
    space: SpaceGrid,
    cfg: &PicardConfig,
    cutoff: Option<f64>,
) -> Result<Amplification> {
    let data = build_gn_hn(n, illposed_grid(n)?, order)?;
    amplification_with_data(n, &data, order, space, cfg, cutoff)
}

pub fn amplification_with_data(
    n: u32,
    data: &SpectralData,
    order: FractionalOrder,
    space: SpaceGrid,
    cfg: &PicardConfig,
    cutoff: Option<f64>,
) -> Result<Amplification> {
    let scale = linear_part_scale(order, data, space);
    let cfg = PicardConfig {
        tol: cfg.tol * scale.max(1.0),
        ..*cfg
    };
    let sol = picard_solve(order, space, data, &special_source(order), cutoff, &cfg)?;
    let data_norm = data.data_norm();
    let sup = sol.field.sup_l2_norm();
    Ok(Amplification {
        n,
        data_norm,
        sup_solution_norm: sup,
        ratio: if data_norm == 0.0 {
            0.0
        } else {
            sup / data_norm
        },
        saturated: sol.report.saturated,
        iterations: sol.report.iterations,
    })
}

fn linear_part_scale(order: FractionalOrder, data: &SpectralData, space: SpaceGrid) -> f64 {
    let band = data.band();
    let x = space.point(space.n_x());
    let s: f64 = (0..band.len())
        .map(|i| {
            let k = symbol(order, band.omega(i));
            (k.cosh_at(x).value * data.g_hat()[i] + k.sinh_ratio_at(x).value * data.h_hat()[i])
                .norm_sqr()
        })
        .sum();
    (s * band.grid().spacing()).sqrt()
}

/// [`amplification`] over several `n`, in parallel.
pub fn amplification_sweep(
    ns: &[u32],
    order: FractionalOrder,
    space: SpaceGrid,
    cfg: &PicardConfig,
    cutoff: Option<f64>,
) -> Result<Vec<Amplification>> {
    if ns.is_empty() {
        return Err(Error::InvalidParameter(
            "the list of n values is empty".into(),
        ));
    }
    ns.par_iter()
        .map(|&n| amplification(n, order, space, cfg, cutoff))
        .collect()
}

/// `|A(x, ω)| = e^{x Re k(ω)} / |k(ω)|`, the leading term of the solution.
pub fn leading_term(order: FractionalOrder, omega: f64, x: f64) -> f64 {
    let k = symbol(order, omega);
    (x * k.re()).exp() / k.value().norm()
}

/// Lower bound on `sup_x ‖u_n(x, ·)‖²` valid for every `n`:
///
/// ```text
/// sup_x ‖u_n(x,·)‖² >= (1/3) ∫_{[n, n+1/n]} |A(1, ω)|² dω
/// ```
///
/// evaluated by composite Simpson on `panels` (even) subintervals.
pub fn analytic_lower_bound(order: FractionalOrder, n: u32, panels: usize) -> f64 {
    let lo = n as f64;
    let hi = lo + 1.0 / lo;
    let m = panels.max(2) + panels % 2;
    let h = (hi - lo) / m as f64;
    let f = |w: f64| leading_term(order, w, 1.0).powi(2);
    let mut s = f(lo) + f(hi);
    for i in 1..m {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(lo + i as f64 * h);
    }
    s * h / 3.0 / 3.0
}

/// Smallest `ω >= 1` from which `|A(1, ω)| >= √6 ω` holds for good, the
/// condition behind `sup_x ‖u_n‖² >= (2/3) n` for bands starting there.
pub fn hadamard_threshold(order: FractionalOrder) -> f64 {
    let (a, c) = (0.5 * order.alpha(), order.cos_quarter());
    // log gap c w^a - (1+a) ln w - ln √6 falls then rises
    let gap = |w: f64| c * w.powf(a) - (1.0 + a) * w.ln() - 0.5 * 6f64.ln();
    let rising = |w: f64| c * a * w.powf(a) >= 1.0 + a;
    let holds = |w: f64| rising(w) && gap(w) >= 0.0;
    let (mut lo, mut hi) = (1.0, 2.0);
    if holds(lo) {
        return lo;
    }
    while !holds(hi) {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-9 * hi {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn special_factor_cases() {
        let o = order(0.9);
        assert_eq!(special_factor(o, 0.0), Complex64::new(0.5, 0.0));
        assert_eq!(special_factor(o, -1.0), Complex64::new(0.0, 0.0));
        let mut prev = 1.0;
        for w in [0.5, 1.0, 4.0, 16.0, 64.0] {
            let m = special_factor(o, w).norm();
            assert!((m - 0.5 * (-symbol(o, w).re()).exp()).abs() < 1e-15);
            assert!(m < prev);
            prev = m;
        }
        let space = SpaceGrid::new(4).unwrap();
        let band = FrequencyBand::full(TimeGrid::new(8, 1.0).unwrap().frequencies());
        let zero = SpectralField::zeros(space, band);
        assert_eq!(special_source_hat(o, &zero), zero);
    }

    #[test]
    fn band_data() {
        let o = order(0.5);
        let grid = TimeGrid::new(1024, 64.0 * std::f64::consts::PI)
            .unwrap()
            .frequencies();
        assert_eq!(grid.spacing(), 1.0 / 32.0);
        let data = build_gn_hn(4, grid, o).unwrap();
        assert_eq!(data.band().len(), 8);
        let h2 = data.band().l2_norm(data.h_hat()).powi(2);
        assert!((h2 - 0.25).abs() <= grid.spacing());
        for (i, g) in data.g_hat().iter().enumerate() {
            assert!((g.norm() - data.band().omega(i).powf(-0.25)).abs() < 1e-14);
        }
        let coarse = TimeGrid::new(64, std::f64::consts::TAU)
            .unwrap()
            .frequencies();
        assert!(matches!(
            build_gn_hn(4, coarse, o),
            Err(Error::UnresolvableBand { .. })
        ));
    }

    #[test]
    fn illposed_grid_resolves_band() {
        for n in [1, 3, 50] {
            let grid = illposed_grid(n).unwrap();
            let data = build_gn_hn(n, grid, order(0.9)).unwrap();
            assert_eq!(data.band().len(), BINS_PER_BAND);
            let h = data.band().l2_norm(data.h_hat());
            assert!((h * h - 1.0 / n as f64).abs() < 1e-12);
            assert!(data.data_norm() <= 2.0 / (n as f64).sqrt());
        }
    }

    #[test]
    fn truncation_below_band_gives_zero() {
        let o = order(0.9);
        let space = SpaceGrid::new(16).unwrap();
        let a = amplification(20, o, space, &PicardConfig::default(), Some(16.0)).unwrap();
        assert_eq!(a.sup_solution_norm, 0.0);
        assert_eq!(a.ratio, 0.0);
    }

    #[test]
    fn zero_data_ratio_is_zero() {
        let o = order(0.9);
        let grid = illposed_grid(5).unwrap();
        let data = build_gn_hn(5, grid, o).unwrap();
        let zero = SpectralData::new(
            *data.band(),
            vec![Complex64::new(0.0, 0.0); data.band().len()],
            vec![Complex64::new(0.0, 0.0); data.band().len()],
        )
        .unwrap();
        let space = SpaceGrid::new(8).unwrap();
        let a =
            amplification_with_data(5, &zero, o, space, &PicardConfig::default(), None).unwrap();
        assert_eq!(a.ratio, 0.0);
    }

    #[test]
    fn threshold_for_alpha_09() {
        let o = order(0.9);
        let w = hadamard_threshold(o);
        assert!((200.0..300.0).contains(&w), "threshold {w}");
        assert!(leading_term(o, w * (1.0 + 1e-6), 1.0) >= 6f64.sqrt() * w);
        assert!(leading_term(o, w * (1.0 - 1e-6), 1.0) < 6f64.sqrt() * w);
        for n in [w.ceil(), 2.0 * w, 10.0 * w] {
            assert!(leading_term(o, n, 1.0) >= 6f64.sqrt() * n);
        }
    }
}
