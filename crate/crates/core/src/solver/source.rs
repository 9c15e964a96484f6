use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::spectral::{FrequencyBand, Transform};

/// What a source sees when asked for `f̂(x_j, ·, u(x_j, ·))`.
pub struct RowContext<'a> {
    pub x: f64,
    pub band: &'a FrequencyBand,
    /// Present when the source asked for time-domain evaluation; the band is
    /// then the full grid.
    pub transform: Option<&'a Transform>,
}

/// A source term `f(x, t, u)` seen through the Fourier transform in `t`.
pub trait Source: Send + Sync {
    /// Declared Lipschitz constant in `u`.
    fn lipschitz(&self) -> f64;

    /// Whether [`Source::source_hat`] needs the time-domain transform.
    /// Time-domain sources require the solver to work on the full grid.
    fn needs_time_domain(&self) -> bool;

    /// `f̂(x, ω, u(x, ·))` on the band, from the spectrum `row = û(x, ·)`.
    fn source_hat(&self, ctx: &RowContext<'_>, row: &[Complex64]) -> Vec<Complex64>;
}

type PointwiseFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;

/// A source given pointwise, `f(x, t, u)`, with a declared Lipschitz
/// constant `K`: `|f(x,t,v₁) - f(x,t,v₂)| <= K |v₁ - v₂|`.
///
/// The constant is taken on trust; nothing here proves it.
#[derive(Clone)]
pub struct SourceSpec {
    eval: Arc<PointwiseFn>,
    lipschitz_k: f64,
}

impl fmt::Debug for SourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SourceSpec")
            .field("lipschitz_k", &self.lipschitz_k)
            .finish_non_exhaustive()
    }
}

impl SourceSpec {
    pub fn new(
        lipschitz_k: f64,
        eval: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            lipschitz_k,
        }
    }

    pub fn eval(&self, x: f64, t: f64, u: f64) -> f64 {
        (self.eval)(x, t, u)
    }

    pub fn lipschitz_k(&self) -> f64 {
        self.lipschitz_k
    }
}

impl Source for SourceSpec {
    fn lipschitz(&self) -> f64 {
        self.lipschitz_k
    }

    fn needs_time_domain(&self) -> bool {
        true
    }

    fn source_hat(&self, ctx: &RowContext<'_>, row: &[Complex64]) -> Vec<Complex64> {
        let transform = ctx
            .transform
            .expect("time-domain source evaluated without a transform");
        let grid = transform.grid();
        let u = transform.inverse(row);
        // the data are real; any imaginary part is round-off
        let f: Vec<Complex64> = u
            .iter()
            .enumerate()
            .map(|(l, v)| Complex64::new(self.eval(ctx.x, grid.point(l), v.re), 0.0))
            .collect();
        transform.forward(&f)
    }
}

/// `f ≡ 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroSource;

impl Source for ZeroSource {
    fn lipschitz(&self) -> f64 {
        0.0
    }

    fn needs_time_domain(&self) -> bool {
        false
    }

    fn source_hat(&self, ctx: &RowContext<'_>, _row: &[Complex64]) -> Vec<Complex64> {
        vec![Complex64::new(0.0, 0.0); ctx.band.len()]
    }
}

type LineFn = dyn Fn(f64, f64, Complex64) -> Complex64 + Send + Sync;

/// A source acting on each frequency line separately,
/// `f̂(x, ω, û) = F(x, ω, û(x, ω))`, with `|F(x,ω,a) - F(x,ω,b)| <= K |a - b|`.
#[derive(Clone)]
pub struct LineSource {
    eval: Arc<LineFn>,
    lipschitz_k: f64,
}

impl fmt::Debug for LineSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LineSource")
            .field("lipschitz_k", &self.lipschitz_k)
            .finish_non_exhaustive()
    }
}

impl LineSource {
    pub fn new(
        lipschitz_k: f64,
        eval: impl Fn(f64, f64, Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            lipschitz_k,
        }
    }

    pub fn eval(&self, x: f64, omega: f64, u: Complex64) -> Complex64 {
        (self.eval)(x, omega, u)
    }
}

impl Source for LineSource {
    fn lipschitz(&self) -> f64 {
        self.lipschitz_k
    }

    fn needs_time_domain(&self) -> bool {
        false
    }

    fn source_hat(&self, ctx: &RowContext<'_>, row: &[Complex64]) -> Vec<Complex64> {
        row.iter()
            .enumerate()
            .map(|(i, &u)| self.eval(ctx.x, ctx.band.omega(i), u))
            .collect()
    }
}
