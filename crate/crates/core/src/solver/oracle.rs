use num_complex::Complex64;

use super::field::SpaceGrid;
use crate::error::{Error, Result};
use crate::kernel::{symbol, FractionalOrder};

/// Reference solution of one frequency line,
///
/// ```text
/// u'' = k² u - F(x, u),   u(0) = ĝ,   u'(0) = ĥ,
/// ```
///
/// by classical RK4 with `refine` steps per space cell. Returns `u` at the
/// nodes of `space`.
pub fn ode_oracle(
    order: FractionalOrder,
    omega: f64,
    g_hat: Complex64,
    h_hat: Complex64,
    source: impl Fn(f64, Complex64) -> Complex64,
    space: SpaceGrid,
    refine: usize,
) -> Result<Vec<Complex64>> {
    if refine == 0 {
        return Err(Error::InvalidParameter("refine must be at least 1".into()));
    }
    let k = symbol(order, omega).value();
    let k2 = k * k;
    let rhs = |x: f64, u: Complex64, v: Complex64| (v, k2 * u - source(x, u));

    let step = space.spacing() / refine as f64;
    let (mut u, mut v) = (g_hat, h_hat);
    let mut out = Vec::with_capacity(space.n_points());
    out.push(u);
    for j in 0..space.n_x() {
        for s in 0..refine {
            let x = space.point(j) + s as f64 * step;
            let (a1, b1) = rhs(x, u, v);
            let (a2, b2) = rhs(x + 0.5 * step, u + 0.5 * step * a1, v + 0.5 * step * b1);
            let (a3, b3) = rhs(x + 0.5 * step, u + 0.5 * step * a2, v + 0.5 * step * b2);
            let (a4, b4) = rhs(x + step, u + step * a3, v + step * b3);
            u += step / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            v += step / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        }
        out.push(u);
    }
    Ok(out)
}
