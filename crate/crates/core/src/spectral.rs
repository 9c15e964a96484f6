//! Uniform time/frequency grids and the scaled discrete Fourier transform.
//!
//! The continuous transform
//!
//! ```text
//! v̂(ω) = (2π)^{-1/2} ∫ v(t) e^{-iωt} dt
//! ```
//!
//! is approximated by a `Δt`-scaled DFT over `[0, t_max)`. Signals are taken
//! to vanish for `t < 0`, so only non-negative sample times are stored.
//! Frequencies use a centered layout `ω_m = 2πm / t_max` with
//! `m = -N/2 .. N/2 - 1`; the single line `m = -N/2` has no positive partner.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Sample times `t_l = l·Δt`, `l = 0..N`, with `Δt = t_max / N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    n_samples: usize,
    t_max: f64,
}

impl TimeGrid {
    pub fn new(n_samples: usize, t_max: f64) -> Result<Self> {
        if n_samples < 2 || !n_samples.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_samples must be a power of two >= 2, got {n_samples}"
            )));
        }
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "t_max must be positive, got {t_max}"
            )));
        }
        Ok(Self { n_samples, t_max })
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn spacing(&self) -> f64 {
        self.t_max / self.n_samples as f64
    }

    pub fn point(&self, l: usize) -> f64 {
        l as f64 * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_samples).map(move |l| self.point(l))
    }

    /// The dual frequency grid.
    pub fn frequencies(&self) -> FrequencyGrid {
        FrequencyGrid {
            n_samples: self.n_samples,
            spacing: 2.0 * PI / self.t_max,
        }
    }
}

/// Centered frequency lines `ω = m·Δω`, `Δω = 2π / t_max`, stored at index
/// `idx = m + N/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    n_samples: usize,
    spacing: f64,
}

impl FrequencyGrid {
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// `Δω`.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn mode(&self, idx: usize) -> i64 {
        idx as i64 - (self.n_samples / 2) as i64
    }

    pub fn omega(&self, idx: usize) -> f64 {
        self.mode(idx) as f64 * self.spacing
    }

    pub fn index_of_mode(&self, m: i64) -> Option<usize> {
        let idx = m + (self.n_samples / 2) as i64;
        (0..self.n_samples as i64)
            .contains(&idx)
            .then_some(idx as usize)
    }

    /// Magnitude of the most negative line, `N/2 · Δω`.
    pub fn nyquist(&self) -> f64 {
        (self.n_samples / 2) as f64 * self.spacing
    }

    /// Index of the line without a `-ω` partner.
    pub fn unpaired_index(&self) -> usize {
        0
    }

    pub fn omegas(&self) -> Vec<f64> {
        (0..self.n_samples).map(|i| self.omega(i)).collect()
    }

    pub fn time_grid(&self) -> TimeGrid {
        TimeGrid {
            n_samples: self.n_samples,
            t_max: 2.0 * PI / self.spacing,
        }
    }
}

/// A contiguous window of lines of a [`FrequencyGrid`].
///
/// Solvers whose source acts line by line only need the lines where the data
/// live; the full grid is the window `0..N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyBand {
    grid: FrequencyGrid,
    start: usize,
    len: usize,
}

impl FrequencyBand {
    pub fn full(grid: FrequencyGrid) -> Self {
        Self {
            grid,
            start: 0,
            len: grid.n_samples,
        }
    }

    pub fn window(grid: FrequencyGrid, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start + len > grid.n_samples {
            return Err(Error::InvalidGrid(format!(
                "window {start}..{} outside grid of {} lines",
                start + len,
                grid.n_samples
            )));
        }
        Ok(Self { grid, start, len })
    }

    /// All lines with `lo <= ω < hi`.
    pub fn covering(grid: FrequencyGrid, lo: f64, hi: f64) -> Result<Self> {
        let unresolved = |reason: &str| Error::UnresolvableBand {
            lo,
            hi,
            reason: reason.to_string(),
        };
        if !(hi > lo) {
            return Err(unresolved("empty interval"));
        }
        // edges that sit on a line up to round-off count as on it
        let snap = |v: f64| {
            let r = v.round();
            if (v - r).abs() <= 1e-9 * r.abs().max(1.0) {
                r
            } else {
                v
            }
        };
        let m_lo = snap(lo / grid.spacing).ceil() as i64;
        let m_hi = snap(hi / grid.spacing).ceil() as i64 - 1;
        if m_hi < m_lo {
            return Err(unresolved("no frequency line inside the band"));
        }
        let (Some(a), Some(b)) = (grid.index_of_mode(m_lo), grid.index_of_mode(m_hi)) else {
            return Err(unresolved("band extends past the Nyquist line"));
        };
        Ok(Self {
            grid,
            start: a,
            len: b - a + 1,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.start == 0 && self.len == self.grid.n_samples
    }

    /// Frequency of the `i`-th line of the window.
    pub fn omega(&self, i: usize) -> f64 {
        self.grid.omega(self.start + i)
    }

    pub fn omegas(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.omega(i)).collect()
    }

    pub fn contains_unpaired(&self) -> bool {
        self.start == 0
    }

    /// Discrete `L²` norm `(Σ|v|² Δω)^{1/2}` of values living on this window.
    pub fn l2_norm(&self, values: &[Complex64]) -> f64 {
        debug_assert_eq!(values.len(), self.len);
        (values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.spacing).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSignal {
    grid: TimeGrid,
    values: Vec<Complex64>,
}

impl TimeSignal {
    pub fn new(grid: TimeGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_samples() {
            return Err(Error::GridMismatch(format!(
                "{} samples on a grid of {}",
                values.len(),
                grid.n_samples()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: TimeGrid, values: &[f64]) -> Result<Self> {
        Self::new(
            grid,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.points().map(|t| Complex64::new(f(t), 0.0)).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.n_samples()],
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSignal {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
}

impl SpectralSignal {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_samples() {
            return Err(Error::GridMismatch(format!(
                "{} lines on a grid of {}",
                values.len(),
                grid.n_samples()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: FrequencyGrid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.n_samples()],
        }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }
}

/// Planned forward/inverse transforms for one grid size.
///
/// Reuse one instance when transforming many rows of the same length.
#[derive(Clone)]
pub struct Transform {
    grid: TimeGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Transform")
            .field("grid", &self.grid)
            .finish()
    }
}

impl Transform {
    pub fn new(grid: TimeGrid) -> Self {
        let mut planner = FftPlanner::new();
        let n = grid.n_samples();
        Self {
            grid,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    /// Time samples to centered spectrum.
    pub fn forward(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.n_samples();
        assert_eq!(
            samples.len(),
            n,
            "sample count does not match the transform"
        );
        let mut buf = samples.to_vec();
        self.forward.process(&mut buf);
        let scale = self.grid.spacing() * INV_SQRT_2PI;
        let half = n / 2;
        // fft bin k holds mode m = k (k < N/2) or k - N; centered idx = m + N/2
        (0..n).map(|idx| buf[(idx + half) % n] * scale).collect()
    }

    /// Centered spectrum to time samples.
    pub fn inverse(&self, spectrum: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.n_samples();
        assert_eq!(spectrum.len(), n, "line count does not match the transform");
        let half = n / 2;
        let mut buf: Vec<Complex64> = (0..n).map(|k| spectrum[(k + half) % n]).collect();
        self.inverse.process(&mut buf);
        let scale = self.grid.frequencies().spacing() * INV_SQRT_2PI;
        for v in &mut buf {
            *v *= scale;
        }
        buf
    }
}

/// `v̂(ω_m) ≈ (2π)^{-1/2} Σ_l v(t_l) e^{-iω_m t_l} Δt`.
pub fn dft_forward(sig: &TimeSignal) -> SpectralSignal {
    let values = Transform::new(sig.grid).forward(&sig.values);
    SpectralSignal {
        grid: sig.grid.frequencies(),
        values,
    }
}

/// `v(t_l) ≈ (2π)^{-1/2} Σ_m v̂(ω_m) e^{iω_m t_l} Δω`; exact inverse of
/// [`dft_forward`] up to round-off.
pub fn dft_inverse(spec: &SpectralSignal) -> TimeSignal {
    let grid = spec.grid.time_grid();
    let values = Transform::new(grid).inverse(&spec.values);
    TimeSignal { grid, values }
}

/// `(Σ |v(t_l)|² Δt)^{1/2}`.
pub fn l2_norm(sig: &TimeSignal) -> f64 {
    (sig.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * sig.grid.spacing()).sqrt()
}

/// `(Σ |v̂(ω_l)|² Δω)^{1/2}`; equals [`l2_norm`] of the inverse by Parseval.
pub fn spectral_l2_norm(spec: &SpectralSignal) -> f64 {
    (spec.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * spec.grid.spacing()).sqrt()
}

/// Sobolev norm `(Σ (1+ω²)^p |v̂(ω_l)|² Δω)^{1/2}`.
pub fn hp_norm(spec: &SpectralSignal, p: f64) -> Result<f64> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Sobolev index must be non-negative, got {p}"
        )));
    }
    let sum: f64 = spec
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = spec.grid.omega(i);
            (1.0 + w * w).powf(p) * v.norm_sqr()
        })
        .sum();
    Ok((sum * spec.grid.spacing()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Direct O(N²) evaluation of the defining sum.
    fn brute_force_forward(sig: &TimeSignal) -> Vec<Complex64> {
        let grid = sig.grid();
        let freqs = grid.frequencies();
        (0..grid.n_samples())
            .map(|idx| {
                let w = freqs.omega(idx);
                let sum: Complex64 = sig
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(l, v)| v * Complex64::from_polar(1.0, -w * grid.point(l)))
                    .sum();
                sum * grid.spacing() / (2.0 * PI).sqrt()
            })
            .collect()
    }

    fn random_signal(n: usize, seed: u64) -> TimeSignal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grid = TimeGrid::new(n, 2.0 * PI).unwrap();
        let values = (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        TimeSignal::new(grid, values).unwrap()
    }

    fn rel_err(a: &[Complex64], b: &[Complex64]) -> f64 {
        let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
        let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
        (num / den).sqrt()
    }

    #[test]
    fn grid_rejects_non_power_of_two() {
        assert!(TimeGrid::new(12, 1.0).is_err());
        assert!(TimeGrid::new(1, 1.0).is_err());
        assert!(TimeGrid::new(8, 0.0).is_err());
        assert!(TimeGrid::new(8, 1.0).is_ok());
    }

    #[test]
    fn integer_frequencies_on_two_pi() {
        let f = TimeGrid::new(8, 2.0 * PI).unwrap().frequencies();
        let omegas = f.omegas();
        let expected = [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
        for (w, e) in omegas.iter().zip(expected) {
            assert!((w - e).abs() < 1e-14);
        }
        assert_eq!(f.index_of_mode(0), Some(4));
        assert_eq!(f.index_of_mode(4), None);
    }

    #[test]
    fn zero_signal_has_zero_spectrum() {
        let grid = TimeGrid::new(16, 2.0 * PI).unwrap();
        let spec = dft_forward(&TimeSignal::zeros(grid));
        assert!(spec.values().iter().all(|v| v.norm() == 0.0));
        let back = dft_inverse(&SpectralSignal::zeros(grid.frequencies()));
        assert!(back.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let grid = TimeGrid::new(8, 2.0 * PI).unwrap();
        let mut values = vec![c(0.0); 8];
        values[0] = c(1.0);
        let sig = TimeSignal::new(grid, values).unwrap();
        let spec = dft_forward(&sig);
        let level = grid.spacing() / (2.0 * PI).sqrt();
        for v in spec.values() {
            assert!((v - c(level)).norm() < 1e-15);
        }
        let back = dft_inverse(&spec);
        assert!(rel_err(back.values(), sig.values()) < 1e-14);
    }

    #[test]
    fn matches_defining_sum() {
        for (n, seed) in [(64, 1), (128, 2), (256, 3)] {
            let sig = random_signal(n, seed);
            let fast = dft_forward(&sig);
            let slow = brute_force_forward(&sig);
            assert!(rel_err(fast.values(), &slow) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn random_spectrum_round_trip() {
        let grid = TimeGrid::new(64, 2.0 * PI).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let values = (0..64)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let spec = SpectralSignal::new(grid.frequencies(), values).unwrap();
        let again = dft_forward(&dft_inverse(&spec));
        assert!(rel_err(again.values(), spec.values()) < 1e-12);
    }

    #[test]
    fn constant_norm_on_two_pi() {
        let grid = TimeGrid::new(512, 2.0 * PI).unwrap();
        let sig = TimeSignal::from_fn(grid, |_| 1.0);
        assert!((l2_norm(&sig) - (2.0 * PI).sqrt()).abs() < 1e-12);
        assert_eq!(l2_norm(&TimeSignal::zeros(grid)), 0.0);
    }

    #[test]
    fn parseval() {
        let sig = random_signal(512, 4);
        let a = l2_norm(&sig);
        let b = spectral_l2_norm(&dft_forward(&sig));
        assert!((a - b).abs() / a < 1e-12);
    }

    #[test]
    fn hp_norm_cases() {
        let grid = TimeGrid::new(32, 2.0 * PI).unwrap().frequencies();
        let zero = SpectralSignal::zeros(grid);
        assert_eq!(hp_norm(&zero, 2.5).unwrap(), 0.0);
        assert!(hp_norm(&zero, -0.1).is_err());

        let sig = random_signal(32, 5);
        let spec = dft_forward(&sig);
        assert_eq!(hp_norm(&spec, 0.0).unwrap(), spectral_l2_norm(&spec));

        let a = 0.75;
        let mut line = SpectralSignal::zeros(grid);
        line.values_mut()[grid.index_of_mode(1).unwrap()] = c(a);
        let expected = a * (2.0 * grid.spacing()).sqrt();
        assert!((hp_norm(&line, 1.0).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn band_covering_half_open() {
        let grid = FrequencyGrid {
            n_samples: 1024,
            spacing: 1.0 / 32.0,
        };
        let band = FrequencyBand::covering(grid, 4.0, 4.25).unwrap();
        assert_eq!(band.len(), 8);
        assert!((band.omega(0) - 4.0).abs() < 1e-15);
        assert!(band.omega(7) < 4.25);
        assert!(FrequencyBand::covering(grid, 15.0, 17.0).is_err());
    }
}
