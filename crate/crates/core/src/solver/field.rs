use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{FrequencyBand, TimeGrid, TimeSignal, Transform};

/// Nodes `x_j = j / n_x`, `j = 0..=n_x`, on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceGrid {
    n_x: usize,
}

impl SpaceGrid {
    pub fn new(n_x: usize) -> Result<Self> {
        if n_x == 0 {
            return Err(Error::InvalidGrid("n_x must be at least 1".into()));
        }
        Ok(Self { n_x })
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_points(&self) -> usize {
        self.n_x + 1
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.n_x as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        j as f64 / self.n_x as f64
    }

    /// Index of the node closest to `x`.
    pub fn nearest(&self, x: f64) -> usize {
        ((x * self.n_x as f64).round().max(0.0) as usize).min(self.n_x)
    }
}

/// Concentration `g = u(0, ·)` and flux `h = u_x(0, ·)` on a common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPair {
    g: TimeSignal,
    h: TimeSignal,
}

impl BoundaryPair {
    pub fn new(g: TimeSignal, h: TimeSignal) -> Result<Self> {
        if g.grid() != h.grid() {
            return Err(Error::GridMismatch(
                "concentration and flux are sampled on different grids".into(),
            ));
        }
        Ok(Self { g, h })
    }

    pub fn g(&self) -> &TimeSignal {
        &self.g
    }

    pub fn h(&self) -> &TimeSignal {
        &self.h
    }

    pub fn grid(&self) -> &TimeGrid {
        self.g.grid()
    }
}

/// Boundary spectra `ĝ`, `ĥ` on a frequency band.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    band: FrequencyBand,
    g_hat: Vec<Complex64>,
    h_hat: Vec<Complex64>,
}

impl SpectralData {
    pub fn new(band: FrequencyBand, g_hat: Vec<Complex64>, h_hat: Vec<Complex64>) -> Result<Self> {
        if g_hat.len() != band.len() || h_hat.len() != band.len() {
            return Err(Error::GridMismatch(format!(
                "band has {} lines, spectra have {} and {}",
                band.len(),
                g_hat.len(),
                h_hat.len()
            )));
        }
        Ok(Self { band, g_hat, h_hat })
    }

    pub fn from_boundary(pair: &BoundaryPair) -> Self {
        let transform = Transform::new(*pair.grid());
        Self {
            band: FrequencyBand::full(pair.grid().frequencies()),
            g_hat: transform.forward(pair.g().values()),
            h_hat: transform.forward(pair.h().values()),
        }
    }

    pub fn band(&self) -> &FrequencyBand {
        &self.band
    }

    pub fn g_hat(&self) -> &[Complex64] {
        &self.g_hat
    }

    pub fn h_hat(&self) -> &[Complex64] {
        &self.h_hat
    }

    /// `‖g‖ + ‖h‖` in the discrete `L²` norm.
    pub fn data_norm(&self) -> f64 {
        self.band.l2_norm(&self.g_hat) + self.band.l2_norm(&self.h_hat)
    }
}

/// `û(x_j, ω_l)` stored row-major, one row per space node.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    space: SpaceGrid,
    band: FrequencyBand,
    values: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(space: SpaceGrid, band: FrequencyBand) -> Self {
        Self {
            space,
            band,
            values: vec![Complex64::new(0.0, 0.0); space.n_points() * band.len()],
        }
    }

    pub fn from_rows(
        space: SpaceGrid,
        band: FrequencyBand,
        rows: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if rows.len() != space.n_points() || rows.iter().any(|r| r.len() != band.len()) {
            return Err(Error::GridMismatch(format!(
                "expected {} rows of {} lines",
                space.n_points(),
                band.len()
            )));
        }
        Ok(Self {
            space,
            band,
            values: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a field from `f(x, ω)`.
    pub fn from_fn(
        space: SpaceGrid,
        band: FrequencyBand,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Self {
        let mut values = Vec::with_capacity(space.n_points() * band.len());
        for j in 0..space.n_points() {
            let x = space.point(j);
            values.extend((0..band.len()).map(|i| f(x, band.omega(i))));
        }
        Self {
            space,
            band,
            values,
        }
    }

    pub fn space(&self) -> &SpaceGrid {
        &self.space
    }

    pub fn band(&self) -> &FrequencyBand {
        &self.band
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        let n = self.band.len();
        &self.values[j * n..(j + 1) * n]
    }

    pub fn row_mut(&mut self, j: usize) -> &mut [Complex64] {
        let n = self.band.len();
        &mut self.values[j * n..(j + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.values.chunks(self.band.len())
    }

    pub fn value(&self, j: usize, i: usize) -> Complex64 {
        self.values[j * self.band.len() + i]
    }

    /// Profile `x_j ↦ û(x_j, ω_i)` of one line.
    pub fn column(&self, i: usize) -> Vec<Complex64> {
        (0..self.space.n_points())
            .map(|j| self.value(j, i))
            .collect()
    }

    pub fn row_l2_norm(&self, j: usize) -> f64 {
        self.band.l2_norm(self.row(j))
    }

    /// `sup_j ‖u(x_j, ·)‖`.
    pub fn sup_l2_norm(&self) -> f64 {
        (0..self.space.n_points())
            .map(|j| self.row_l2_norm(j))
            .fold(0.0, f64::max)
    }

    /// `sup_j ‖u(x_j, ·) - v(x_j, ·)‖`.
    pub fn sup_l2_distance(&self, other: &Self) -> f64 {
        debug_assert!(self.same_shape(other));
        let n = self.band.len();
        let dw = self.band.grid().spacing();
        self.values
            .chunks(n)
            .zip(other.values.chunks(n))
            .map(|(a, b)| {
                let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
                (s * dw).sqrt()
            })
            .fold(0.0, f64::max)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.space == other.space && self.band == other.band
    }
}

/// Real-valued `u(x_j, t_l)` recovered from a spectral field.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeField {
    space: SpaceGrid,
    time: TimeGrid,
    values: Vec<f64>,
    max_imag: f64,
    max_real: f64,
}

/// Relative size of imaginary residue accepted as round-off.
pub const IMAG_RESIDUE_TOL: f64 = 1e-8;

impl TimeField {
    pub fn space(&self) -> &SpaceGrid {
        &self.space
    }

    pub fn time(&self) -> &TimeGrid {
        &self.time
    }

    pub fn row(&self, j: usize) -> &[f64] {
        let n = self.time.n_samples();
        &self.values[j * n..(j + 1) * n]
    }

    pub fn max_imag(&self) -> f64 {
        self.max_imag
    }

    pub fn max_real(&self) -> f64 {
        self.max_real
    }

    /// `max|Im| < 1e-8 · max|Re|` (an all-zero field passes).
    pub fn residue_ok(&self) -> bool {
        self.max_imag <= IMAG_RESIDUE_TOL * self.max_real
    }

    pub fn ensure_real(&self) -> Result<()> {
        if self.residue_ok() {
            Ok(())
        } else {
            Err(Error::ImaginaryResidue {
                max_imag: self.max_imag,
                max_real: self.max_real,
            })
        }
    }
}

/// Row-wise inverse transform. Fields on a partial band are zero-extended to
/// the full grid first. The imaginary residue is measured and kept on the
/// result rather than discarded silently.
pub fn field_to_time(field: &SpectralField) -> TimeField {
    let grid = *field.band().grid();
    let time = grid.time_grid();
    let transform = Transform::new(time);
    let n = grid.n_samples();
    let start = field.band().start();
    let mut values = Vec::with_capacity(field.space().n_points() * n);
    let (mut max_imag, mut max_real) = (0.0_f64, 0.0_f64);
    let mut full = vec![Complex64::new(0.0, 0.0); n];
    for row in field.rows() {
        full.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        full[start..start + row.len()].copy_from_slice(row);
        for v in transform.inverse(&full) {
            max_imag = max_imag.max(v.im.abs());
            max_real = max_real.max(v.re.abs());
            values.push(v.re);
        }
    }
    TimeField {
        space: *field.space(),
        time,
        values,
        max_imag,
        max_real,
    }
}
