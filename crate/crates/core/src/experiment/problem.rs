use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::kernel::{gamma, symbol, FractionalOrder};
use crate::solver::{BoundaryPair, SourceSpec};
use crate::spectral::{TimeGrid, TimeSignal};

/// `u(x, t) = e^{-2x} t²`.
pub fn exact_solution(x: f64, t: f64) -> f64 {
    (-2.0 * x).exp() * t * t
}

/// `f(x, t, u) = u/(1+u²) + e^{-2x}(2t^{2-α}/Γ(3-α) - t²/(1+e^{-4x}t⁴) - 4t²)`.
pub fn example_source(order: FractionalOrder, x: f64, t: f64, u: f64) -> f64 {
    let a = order.alpha();
    let e = (-2.0 * x).exp();
    let forcing = e
        * (2.0 * t.powf(2.0 - a) / gamma(3.0 - a)
            - t * t / (1.0 + e * e * t.powi(4))
            - 4.0 * t * t);
    u / (1.0 + u * u) + forcing
}

/// Trigonometric profile `φ(t) = Σ c_m e^{imt}` of the smooth benchmark.
const SMOOTH_MODES: [(i64, Complex64); 7] = [
    (0, Complex64::new(2.0, 0.0)),
    (1, Complex64::new(0.0, -0.5)),
    (-1, Complex64::new(0.0, 0.5)),
    (3, Complex64::new(0.25, 0.0)),
    (-3, Complex64::new(0.25, 0.0)),
    (5, Complex64::new(0.0, 0.15)),
    (-5, Complex64::new(0.0, -0.15)),
];

/// `φ(t) = 2 + sin t + ½cos 3t - 0.3 sin 5t`.
pub fn smooth_profile(t: f64) -> f64 {
    2.0 + t.sin() + 0.5 * (3.0 * t).cos() - 0.3 * (5.0 * t).sin()
}

/// `Σ c_m (im)^α e^{imt}`, the fractional derivative of the periodic profile
/// with the symbol `(iω)^α` used by the solver.
pub fn smooth_profile_derivative(order: FractionalOrder, t: f64) -> f64 {
    SMOOTH_MODES
        .iter()
        .map(|&(m, c)| {
            let k = symbol(order, m as f64).value();
            (c * k * k * Complex64::new(0.0, m as f64 * t).exp()).re
        })
        .sum()
}

/// Benchmark problems with a known solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    /// `u = e^{-2x} t²` with the Caputo forcing.
    #[default]
    Polynomial,
    /// `u = e^{-2x} φ(t)` with `φ` a trigonometric polynomial of degree 5,
    /// periodic on `[0, 2π]`.
    Smooth,
}

impl Problem {
    pub fn exact(&self, x: f64, t: f64) -> f64 {
        match self {
            Problem::Polynomial => exact_solution(x, t),
            Problem::Smooth => (-2.0 * x).exp() * smooth_profile(t),
        }
    }

    /// The source, with Lipschitz constant 1.
    pub fn source(&self, order: FractionalOrder) -> SourceSpec {
        match self {
            Problem::Polynomial => SourceSpec::new(1.0, move |x, t, u| example_source(order, x, t, u)),
            Problem::Smooth => SourceSpec::new(1.0, move |x, t, u| {
                let e = (-2.0 * x).exp();
                let exact = e * smooth_profile(t);
                let forcing = e * (smooth_profile_derivative(order, t) - 4.0 * smooth_profile(t))
                    - exact / (1.0 + exact * exact);
                u / (1.0 + u * u) + forcing
            }),
        }
    }

    /// `g = u(0, ·)` and `h = u_x(0, ·)` sampled on `grid`.
    pub fn boundary(&self, grid: TimeGrid) -> BoundaryPair {
        let this = *self;
        let g = TimeSignal::from_fn(grid, move |t| this.exact(0.0, t));
        let h = TimeSignal::from_fn(grid, move |t| -2.0 * this.exact(0.0, t));
        BoundaryPair::new(g, h).expect("both sampled on the same grid")
    }
}
