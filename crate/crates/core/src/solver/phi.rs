use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use super::field::{SpaceGrid, SpectralData, SpectralField};
use super::source::{RowContext, Source};
use crate::error::{Error, Result};
use crate::kernel::{symbol, FractionalOrder};
use crate::spectral::Transform;

/// Rule for `∫₀^{x_j} sinh(k(x_j - z))/k · f̂(z) dz` on the space nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quadrature {
    /// Composite trapezoid, `O(h²)`. Row `j` reads rows `0..=j`.
    Trapezoid,
    /// Composite Simpson, closed with the 3/8 rule on an odd interval
    /// count. The first cell uses the quadratic through nodes 0, 1, 2, so
    /// row 1 also reads row 2.
    #[default]
    Simpson,
}

/// Weights on the nodes of a uniform grid of step `h` for the integral up
/// to node `j`. The result has `j + 1` entries, except for the Simpson rule
/// at `j = 1` on a grid with `n_x >= 2`, which has 3.
pub fn volterra_weights(rule: Quadrature, j: usize, h: f64) -> Vec<f64> {
    volterra_weights_on(rule, j, usize::MAX, h)
}

fn volterra_weights_on(rule: Quadrature, j: usize, n_x: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; j + 1];
    if j == 0 {
        return w;
    }
    if rule == Quadrature::Simpson && j == 1 && n_x >= 2 {
        return vec![5.0 * h / 12.0, 8.0 * h / 12.0, -h / 12.0];
    }
    match rule {
        Quadrature::Trapezoid => {
            for (i, wi) in w.iter_mut().enumerate() {
                *wi = if i == 0 || i == j { 0.5 * h } else { h };
            }
        }
        Quadrature::Simpson => {
            if j == 1 {
                w[0] = 0.5 * h;
                w[1] = 0.5 * h;
                return w;
            }
            let simpson_end = if j.is_multiple_of(2) { j } else { j - 3 };
            for pair in (0..simpson_end).step_by(2) {
                w[pair] += h / 3.0;
                w[pair + 1] += 4.0 * h / 3.0;
                w[pair + 2] += h / 3.0;
            }
            if j % 2 == 1 {
                let s = j - 3;
                let c = 3.0 * h / 8.0;
                w[s] += c;
                w[s + 1] += 3.0 * c;
                w[s + 2] += 3.0 * c;
                w[s + 3] += c;
            }
        }
    }
    w
}

/// The mild-solution map
///
/// ```text
/// Φ(v)(x, ω) = cosh(k x) ĝ + sinh(k x)/k ĥ - ∫₀ˣ sinh(k(x-z))/k f̂(z, ω, v(z, ·)) dz
/// ```
///
/// with kernels tabulated once per line. With a cutoff, only lines with
/// `|ω| <= cutoff` are carried; `ĝ`, `ĥ` and `f̂` vanish on the others.
pub struct Phi<'a> {
    space: SpaceGrid,
    data: &'a SpectralData,
    /// band-local indices of the carried lines
    active: Vec<usize>,
    /// `sinh(k d h)/k`, indexed `[d][a]`
    sinh: Vec<Complex64>,
    /// `cosh(k x_j) ĝ + sinh(k x_j)/k ĥ`, indexed `[j][a]`
    linear: Vec<Complex64>,
    weights: Vec<Vec<f64>>,
    transform: OnceLock<Transform>,
    saturated: bool,
}

impl<'a> Phi<'a> {
    pub fn new(
        order: FractionalOrder,
        space: SpaceGrid,
        data: &'a SpectralData,
        cutoff: Option<f64>,
        quadrature: Quadrature,
    ) -> Result<Self> {
        if let Some(c) = cutoff {
            if !(c > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "cutoff must be positive, got {c}"
                )));
            }
        }
        let band = data.band();
        let active: Vec<usize> = (0..band.len())
            .filter(|&i| cutoff.is_none_or(|c| band.omega(i).abs() <= c))
            .collect();
        let n_a = active.len();
        let n_pts = space.n_points();
        let h = space.spacing();

        let mut sinh = vec![Complex64::new(0.0, 0.0); n_pts * n_a];
        let mut linear = vec![Complex64::new(0.0, 0.0); n_pts * n_a];
        let mut saturated = false;
        for (a, &i) in active.iter().enumerate() {
            let k = symbol(order, band.omega(i));
            // the unpaired line uses the mean of the kernels at ±ω so that
            // real data stay real
            let unpaired = band.contains_unpaired() && i == 0;
            for d in 0..n_pts {
                let x = d as f64 * h;
                let c = k.cosh_at(x);
                let s = k.sinh_ratio_at(x);
                saturated |= c.saturated || s.saturated;
                let (c, s) = if unpaired {
                    (
                        Complex64::new(c.value.re, 0.0),
                        Complex64::new(s.value.re, 0.0),
                    )
                } else {
                    (c.value, s.value)
                };
                sinh[d * n_a + a] = s;
                linear[d * n_a + a] = c * data.g_hat()[i] + s * data.h_hat()[i];
            }
        }
        let weights = (0..n_pts)
            .map(|j| volterra_weights_on(quadrature, j, space.n_x(), h))
            .collect();
        Ok(Self {
            space,
            data,
            active,
            sinh,
            linear,
            weights,
            transform: OnceLock::new(),
            saturated,
        })
    }

    /// Whether any kernel evaluation hit the exponent clamp.
    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn active_lines(&self) -> &[usize] {
        &self.active
    }

    pub fn space(&self) -> &SpaceGrid {
        &self.space
    }

    pub fn data(&self) -> &SpectralData {
        self.data
    }

    /// The source `f̂(x_j, ·, v(x_j, ·))` restricted to the carried lines.
    pub fn source_rows(
        &self,
        field: &SpectralField,
        src: &dyn Source,
    ) -> Result<Vec<Vec<Complex64>>> {
        self.check(field, src)?;
        let band = self.data.band();
        let transform = if src.needs_time_domain() {
            Some(
                self.transform
                    .get_or_init(|| Transform::new(band.grid().time_grid())),
            )
        } else {
            None
        };
        Ok((0..self.space.n_points())
            .into_par_iter()
            .map(|j| {
                let ctx = RowContext {
                    x: self.space.point(j),
                    band,
                    transform,
                };
                let full = src.source_hat(&ctx, field.row(j));
                self.active.iter().map(|&i| full[i]).collect()
            })
            .collect())
    }

    pub fn apply(&self, field: &SpectralField, src: &dyn Source) -> Result<SpectralField> {
        let f_rows = self.source_rows(field, src)?;
        Ok(self.assemble(&f_rows))
    }

    /// `Φ` with a given source table `f̂[j][a]` on the carried lines.
    pub fn assemble(&self, f_rows: &[Vec<Complex64>]) -> SpectralField {
        let band = *self.data.band();
        let n_a = self.active.len();
        let rows: Vec<Vec<Complex64>> = (0..self.space.n_points())
            .into_par_iter()
            .map(|j| {
                let mut acc = self.linear[j * n_a..(j + 1) * n_a].to_vec();
                let w = &self.weights[j];
                for (i, &wi) in w.iter().enumerate() {
                    // the z = x_j node carries sinh(0) = 0
                    if i == j {
                        continue;
                    }
                    // sinh(kλ)/k is odd in λ
                    let (d, wi) = if i < j { (j - i, wi) } else { (i - j, -wi) };
                    let kernel = &self.sinh[d * n_a..(d + 1) * n_a];
                    for ((out, s), f) in acc.iter_mut().zip(kernel).zip(&f_rows[i]) {
                        *out -= wi * s * f;
                    }
                }
                let mut row = vec![Complex64::new(0.0, 0.0); band.len()];
                for (a, &i) in self.active.iter().enumerate() {
                    row[i] = acc[a];
                }
                row
            })
            .collect();
        SpectralField::from_rows(self.space, band, rows).expect("rows built with the field shape")
    }

    fn check(&self, field: &SpectralField, src: &dyn Source) -> Result<()> {
        if *field.space() != self.space || field.band() != self.data.band() {
            return Err(Error::GridMismatch(
                "field and boundary data live on different grids".into(),
            ));
        }
        if src.needs_time_domain() && !self.data.band().is_full() {
            return Err(Error::GridMismatch(
                "a pointwise source needs the full frequency grid".into(),
            ));
        }
        Ok(())
    }
}

/// One application of the mild-solution map to `field`.
pub fn apply_phi(
    order: FractionalOrder,
    field: &SpectralField,
    data: &SpectralData,
    src: &dyn Source,
    cutoff: Option<f64>,
) -> Result<SpectralField> {
    Phi::new(order, *field.space(), data, cutoff, Quadrature::default())?.apply(field, src)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moment(w: &[f64], h: f64, p: i32) -> f64 {
        w.iter()
            .enumerate()
            .map(|(i, wi)| wi * (i as f64 * h).powi(p))
            .sum()
    }

    #[test]
    fn weights_integrate_polynomials() {
        let h = 1.0 / 64.0;
        for j in 1..20 {
            let x = j as f64 * h;
            let w = volterra_weights(Quadrature::Trapezoid, j, h);
            assert!((moment(&w, h, 1) - x * x / 2.0).abs() < 1e-15);

            let w = volterra_weights(Quadrature::Simpson, j, h);
            assert!((moment(&w, h, 0) - x).abs() < 1e-14);
            assert!(
                (moment(&w, h, 2) - x.powi(3) / 3.0).abs() < 1e-15,
                "j = {j}"
            );
            if j >= 2 {
                assert_eq!(w.len(), j + 1);
                assert!(
                    (moment(&w, h, 3) - x.powi(4) / 4.0).abs() < 1e-15,
                    "j = {j}"
                );
            }
        }
        assert_eq!(volterra_weights(Quadrature::Simpson, 0, h), vec![0.0]);
        assert_eq!(volterra_weights_on(Quadrature::Simpson, 1, 1, h).len(), 2);
    }
}
