//! The fractional symbol `k(ω) = (iω)^{α/2}` and the propagation kernels built
//! from it.
//!
//! `Re k(ω) = |ω|^{α/2} cos(απ/4)` grows with `|ω|`, which is what makes the
//! sideways problem unstable: `cosh(k x)` and `sinh(k x)/k` amplify high
//! frequencies like `exp(x |ω|^{α/2} cos(απ/4))`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest exponent real part evaluated before clamping.
pub const EXP_CLAMP: f64 = 700.0;

/// Below this `|kλ|` the sinh ratio switches to its Taylor expansion.
const TAYLOR_SWITCH: f64 = 1e-4;

/// Order `α` of the Caputo derivative, `0 < α < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidParameter(format!(
                "fractional order must lie in (0, 1), got {alpha}"
            )))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.0
    }

    /// `cos(απ/4)`, the damping factor on the growth rate.
    pub fn cos_quarter(&self) -> f64 {
        (self.0 * FRAC_PI_4).cos()
    }

    pub fn sin_quarter(&self) -> f64 {
        (self.0 * FRAC_PI_4).sin()
    }
}

/// A kernel value together with a flag telling whether the exponent clamp
/// engaged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub saturated: bool,
}

/// `k(ω) = (iω)^{α/2}` at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Symbol {
    omega: f64,
    value: Complex64,
}

impl Symbol {
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    /// `cosh(k x)`.
    pub fn cosh_at(&self, x: f64) -> KernelValue {
        let z = self.value * x;
        if z.re.abs() > EXP_CLAMP {
            let half = 0.5 * EXP_CLAMP.exp();
            return KernelValue {
                value: Complex64::from_polar(half, z.im * z.re.signum()),
                saturated: true,
            };
        }
        KernelValue {
            value: z.cosh(),
            saturated: false,
        }
    }

    /// `sinh(k λ)/k`, continuous through `k = 0` where it equals `λ`.
    pub fn sinh_ratio_at(&self, lam: f64) -> KernelValue {
        let k = self.value;
        let z = k * lam;
        if z.norm() < TAYLOR_SWITCH {
            let z2 = z * z;
            let value = lam * (1.0 + z2 / 6.0 + z2 * z2 / 120.0);
            return KernelValue {
                value,
                saturated: false,
            };
        }
        if z.re.abs() > EXP_CLAMP {
            let half = 0.5 * EXP_CLAMP.exp();
            let e = Complex64::from_polar(half, z.im * z.re.signum()) * z.re.signum();
            return KernelValue {
                value: e / k,
                saturated: true,
            };
        }
        KernelValue {
            value: z.sinh() / k,
            saturated: false,
        }
    }
}

/// `k(ω)` with `Re k = |ω|^{α/2} cos(απ/4)` and
/// `Im k = |ω|^{α/2} sign(ω) sin(απ/4)`; zero at `ω = 0`.
pub fn symbol(order: FractionalOrder, omega: f64) -> Symbol {
    if omega == 0.0 {
        return Symbol {
            omega,
            value: Complex64::new(0.0, 0.0),
        };
    }
    let r = omega.abs().powf(0.5 * order.alpha());
    Symbol {
        omega,
        value: Complex64::new(
            r * order.cos_quarter(),
            r * omega.signum() * order.sin_quarter(),
        ),
    }
}

pub fn kernel_cosh(order: FractionalOrder, omega: f64, x: f64) -> KernelValue {
    symbol(order, omega).cosh_at(x)
}

pub fn kernel_sinh_ratio(order: FractionalOrder, omega: f64, lam: f64) -> KernelValue {
    symbol(order, omega).sinh_ratio_at(lam)
}

/// Growth exponent `|ω|^{α/2} cos(απ/4)` of the fractional problem.
pub fn fractional_growth_rate(order: FractionalOrder, omega: f64) -> f64 {
    omega.abs().powf(0.5 * order.alpha()) * order.cos_quarter()
}

/// Growth exponent `|ω|^{1/2}` of the classical sideways heat problem.
pub fn classical_growth_rate(omega: f64) -> f64 {
    omega.abs().sqrt()
}

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        // split the power to keep t^(x+0.5) finite for large x
        let p = t.powf(0.5 * (x + 0.5));
        (2.0 * PI).sqrt() * p * (-t).exp() * p * acc
    }
}

/// Caputo derivative of `t^m`: `Γ(m+1)/Γ(m+1-α) · t^{m-α}`, zero for `m = 0`.
pub fn caputo_monomial(order: FractionalOrder, m: u32, t: f64) -> f64 {
    if m == 0 || t <= 0.0 {
        return 0.0;
    }
    let m = f64::from(m);
    gamma(m + 1.0) / gamma(m + 1.0 - order.alpha()) * t.powf(m - order.alpha())
}

/// `[ξγ cos(απ/4) / p]^{1/ξ}`; infinite when `p = 0`.
pub fn monotonicity_threshold(order: FractionalOrder, xi: f64, p: f64, gamma: f64) -> f64 {
    if p == 0.0 {
        return f64::INFINITY;
    }
    (xi * gamma * order.cos_quarter() / p).powf(1.0 / xi)
}

/// Strict check `ε < [ξγ cos(απ/4)/p]^{1/ξ}`. When it holds,
/// [`monotonicity_profile`] is non-increasing on `ω >= 1/ε` for every
/// `0 <= x < 1`.
pub fn monotonicity_holds(order: FractionalOrder, epsilon: f64, xi: f64, p: f64, gamma: f64) -> bool {
    if !(epsilon > 0.0 && xi > 0.0 && gamma > 0.0 && p >= 0.0) {
        return false;
    }
    epsilon < monotonicity_threshold(order, xi, p, gamma)
}

/// `(1+ω²)^p exp(2(x-1-γ) ω^ξ cos(απ/4))`.
pub fn monotonicity_profile(
    order: FractionalOrder,
    omega: f64,
    x: f64,
    xi: f64,
    p: f64,
    gamma: f64,
) -> f64 {
    (1.0 + omega * omega).powf(p)
        * (2.0 * (x - 1.0 - gamma) * omega.powf(xi) * order.cos_quarter()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn order_bounds() {
        assert!(FractionalOrder::new(0.0).is_err());
        assert!(FractionalOrder::new(1.0).is_err());
        assert!(FractionalOrder::new(f64::NAN).is_err());
        assert!(FractionalOrder::new(0.5).is_ok());
    }

    #[test]
    fn symbol_values() {
        let o = order(0.5);
        assert_eq!(symbol(o, 0.0).value(), Complex64::new(0.0, 0.0));
        let k = symbol(o, 1.0);
        assert!((k.re() - 0.923_879_532_511_286_7).abs() < 1e-12);
        assert!((k.im() - 0.382_683_432_365_089_8).abs() < 1e-12);
        let kneg = symbol(o, -1.0);
        assert_eq!(kneg.re(), k.re());
        assert_eq!(kneg.im(), -k.im());
        // squares back to iω
        let w = 3.7;
        let k = symbol(order(0.999_999), w).value();
        assert!((k * k - Complex64::new(0.0, w)).norm() < 1e-5);
    }

    #[test]
    fn real_part_monotone() {
        for a in [0.1, 0.4, 0.7, 0.95] {
            let o = order(a);
            let mut prev = -1.0;
            for i in 0..=128 {
                let re = symbol(o, 0.5 * i as f64).re();
                assert!(re >= prev);
                prev = re;
            }
        }
    }

    #[test]
    fn cosh_edge_cases() {
        let o = order(0.5);
        for w in [-10.0, 0.0, 3.0, 250.0] {
            assert_eq!(kernel_cosh(o, w, 0.0).value, Complex64::new(1.0, 0.0));
        }
        for x in [0.0, 0.3, 1.0] {
            assert_eq!(kernel_cosh(o, 0.0, x).value, Complex64::new(1.0, 0.0));
        }
        let v = kernel_cosh(o, 16.0, 1.0);
        assert!(!v.saturated);
        assert!(v.value.norm() <= (16f64.powf(0.25) * (PI / 8.0).cos()).exp());
    }

    #[test]
    fn sinh_ratio_edge_cases() {
        let o = order(0.5);
        assert_eq!(kernel_sinh_ratio(o, 5.0, 0.0).value.norm(), 0.0);
        assert_eq!(
            kernel_sinh_ratio(o, 0.0, 0.7).value,
            Complex64::new(0.7, 0.0)
        );
        // deviation from λ is |k|²λ²/6 = |ω|^α λ²/6 to leading order
        for a in [0.2, 0.5, 0.8] {
            let lam = 0.7;
            let w = 1e-8_f64;
            let near = kernel_sinh_ratio(order(a), w, lam).value;
            let rel = (near - lam).norm() / lam;
            let predicted = w.powf(a) * lam * lam / 6.0;
            assert!((rel - predicted).abs() < 1e-3 * predicted, "alpha = {a}");
        }
        let near = kernel_sinh_ratio(order(0.8), 1e-8, 0.7).value;
        assert!((near - 0.7).norm() / 0.7 < 1e-6);
    }

    #[test]
    fn sinh_ratio_taylor_switch_is_smooth() {
        let o = order(0.6);
        // straddle |kλ| = 1e-4 and compare against the direct formula
        let lam = 1.0;
        for w in [1e-7, 1e-6, 2e-6, 5e-6, 1e-5] {
            let k = symbol(o, w);
            let series = k.sinh_ratio_at(lam).value;
            let direct = (k.value() * lam).sinh() / k.value();
            assert!((series - direct).norm() / direct.norm() < 1e-10, "w = {w}");
        }
    }

    #[test]
    fn clamp_flags_saturation() {
        let o = order(0.9);
        let w = 1e7; // Re k ≈ 1e3
        let c = kernel_cosh(o, w, 1.0);
        let s = kernel_sinh_ratio(o, w, 1.0);
        assert!(c.saturated && s.saturated);
        assert!(c.value.norm().is_finite() && s.value.norm().is_finite());
        assert!(!kernel_cosh(o, w, 0.5).saturated);
    }

    #[test]
    fn gamma_known_values() {
        assert!((gamma(0.5) - PI.sqrt()).abs() / PI.sqrt() < 1e-14);
        let mut fact = 1.0;
        for n in 1..20 {
            let g = gamma(n as f64);
            assert!((g - fact).abs() / fact < 1e-13, "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn caputo_of_square() {
        let o = order(0.4);
        let v = caputo_monomial(o, 2, 1.0);
        assert!((v - 2.0 / gamma(2.6)).abs() < 1e-14);
        assert!((v - 1.398_969).abs() < 1e-6);
        assert_eq!(caputo_monomial(o, 0, 3.0), 0.0);
        // α → 1⁻ recovers the classical derivative 2t
        let near_one = caputo_monomial(order(1.0 - 1e-9), 2, 1.7);
        assert!((near_one - 3.4).abs() < 1e-6);
    }

    #[test]
    fn monotonicity_threshold_is_strict() {
        let o = order(0.4);
        let (xi, p, g) = (0.2, 1.5, 0.8);
        let th = monotonicity_threshold(o, xi, p, g);
        assert!(monotonicity_holds(o, 0.5 * th, xi, p, g));
        assert!(!monotonicity_holds(o, th, xi, p, g));
        assert!(monotonicity_holds(o, 1e9, xi, 0.0, g));
    }

    #[test]
    fn fractional_growth_is_slower() {
        for a in [0.05, 0.3, 0.6, 0.99] {
            let o = order(a);
            for w in [1.001, 2.0, 10.0, 1e3, 1e6] {
                assert!(fractional_growth_rate(o, w) < classical_growth_rate(w));
            }
        }
    }

    #[test]
    fn gamma_matches_statrs() {
        for i in 1..400 {
            let x = 0.025 * i as f64;
            let want = statrs::function::gamma::gamma(x);
            assert!((gamma(x) - want).abs() <= 1e-12 * want.abs(), "x = {x}");
        }
    }

    proptest::proptest! {
        #[test]
        fn cosh_bounded_by_exp_of_real_part(a in 0.01f64..0.99, w in -32.0f64..32.0, x in 0.0f64..1.0) {
            let k = symbol(order(a), w);
            let c = k.cosh_at(x).value.norm();
            let b = (x * k.re()).exp();
            proptest::prop_assert!(c <= b * (1.0 + 1e-12));
        }

        #[test]
        fn sinh_ratio_bounded(a in 0.01f64..0.99, w in -32.0f64..32.0, lam in 0.0f64..1.0) {
            let k = symbol(order(a), w);
            let s = k.sinh_ratio_at(lam).value.norm();
            let b = lam * (lam * k.re()).exp();
            proptest::prop_assert!(s <= b * (1.0 + 1e-12) + 1e-300);
        }
    }
}
