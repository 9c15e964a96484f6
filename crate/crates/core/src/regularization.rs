//! Spectral truncation, parameter-choice rules and the a priori error bounds
//! they come with.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{monotonicity_holds, FractionalOrder};
use crate::spectral::SpectralSignal;

/// How the regularization parameter was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionRule {
    /// `ε = (cos(απ/4) / ln(1/δ))^{2/α}`.
    L2,
    /// `ε = ((A+B) / ln(1/δ))^{2/(α+μ)}` under the admissibility condition on δ.
    Hp,
    /// Any `ε` below [`epsilon_weak_hp`].
    HpWeak,
    Manual,
}

/// Noise level together with the cutoff `ω_max = 1/ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegPolicy {
    delta: f64,
    epsilon: f64,
    rule: SelectionRule,
}

impl RegPolicy {
    pub fn new(delta: f64, epsilon: f64, rule: SelectionRule) -> Result<Self> {
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "delta must be a nonnegative number, got {delta}"
            )));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        Ok(Self {
            delta,
            epsilon,
            rule,
        })
    }

    pub fn manual(delta: f64, omega_max: f64) -> Result<Self> {
        if !(omega_max > 0.0) || !omega_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "omega_max must be positive and finite, got {omega_max}"
            )));
        }
        Self::new(delta, 1.0 / omega_max, SelectionRule::Manual)
    }

    pub fn l2(delta: f64, order: FractionalOrder) -> Result<Self> {
        Self::new(delta, epsilon_l2(delta, order)?, SelectionRule::L2)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn omega_max(&self) -> f64 {
        1.0 / self.epsilon
    }

    pub fn rule(&self) -> SelectionRule {
        self.rule
    }
}

/// A priori information on the exact solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AprioriBound {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub gamma: f64,
    pub mu: f64,
    pub p: f64,
    pub k_lip: f64,
}

impl AprioriBound {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("m1", self.m1),
            ("m2", self.m2),
            ("m3", self.m3),
            ("gamma", self.gamma),
        ] {
            if !(v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(self.p >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "p must be nonnegative, got {}",
                self.p
            )));
        }
        if !(self.k_lip >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "k_lip must be nonnegative, got {}",
                self.k_lip
            )));
        }
        Ok(())
    }

    fn validate_hp(&self, order: FractionalOrder) -> Result<()> {
        self.validate()?;
        let a = order.alpha();
        let floor = (4.0 - a).max(4.0 * self.p - a);
        if !(self.mu > floor) {
            return Err(Error::InvalidParameter(format!(
                "mu must exceed max(4 - alpha, 4p - alpha) = {floor}, got {}",
                self.mu
            )));
        }
        Ok(())
    }
}

/// Zeroes every line with `|ω| > omega_max`.
pub fn truncate(spec: &SpectralSignal, omega_max: f64) -> Result<SpectralSignal> {
    if !(omega_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "omega_max must be positive, got {omega_max}"
        )));
    }
    let grid = *spec.grid();
    let values = spec
        .values()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if grid.omega(i).abs() <= omega_max {
                v
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    SpectralSignal::new(grid, values)
}

fn log_inverse(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    Ok(-delta.ln())
}

/// `ε = (cos(απ/4) / ln(1/δ))^{2/α}`.
pub fn epsilon_l2(delta: f64, order: FractionalOrder) -> Result<f64> {
    Ok((order.cos_quarter() / log_inverse(delta)?).powf(2.0 / order.alpha()))
}

/// `C₁ = 4e^{K²} + 2M₁e^{K²}`.
pub fn c1(m1: f64, k_lip: f64) -> f64 {
    (4.0 + 2.0 * m1) * (k_lip * k_lip).exp()
}

/// `C₂ = 4 + 2M₂`.
pub fn c2(m2: f64) -> f64 {
    4.0 + 2.0 * m2
}

/// `C₃ = max{5e^{K²}, 3M₃(e^{K²} + 1)}`.
pub fn c3(m3: f64, k_lip: f64) -> f64 {
    let e = (k_lip * k_lip).exp();
    (5.0 * e).max(3.0 * m3 * (e + 1.0))
}

/// `L²` error bound for the truncated solution:
///
/// ```text
/// 4e^{K²} e^{x ε^{-α/2} cos(απ/4)} δ + 2M₁e^{K²} e^{(x-1) ε^{-α/2} cos(απ/4)}
/// ```
///
/// With `ε = epsilon_l2(δ)` this is `C₁ δ^{1-x}`.
pub fn bound_l2(
    x: f64,
    delta: f64,
    epsilon: f64,
    order: FractionalOrder,
    m1: f64,
    k_lip: f64,
) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "x must lie in [0, 1), got {x}"
        )));
    }
    if !(epsilon > 0.0) || !(delta >= 0.0) {
        return Err(Error::InvalidParameter(
            "epsilon must be positive and delta nonnegative".into(),
        ));
    }
    let rate = epsilon.powf(-0.5 * order.alpha()) * order.cos_quarter();
    let ek = (k_lip * k_lip).exp();
    Ok(4.0 * ek * (x * rate).exp() * delta + 2.0 * m1 * ek * ((x - 1.0) * rate).exp())
}

/// Constants of the `Hᵖ` rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HpConstants {
    pub a: f64,
    pub b: f64,
    pub q: f64,
}

pub fn hp_constants(bound: &AprioriBound, order: FractionalOrder) -> HpConstants {
    HpConstants {
        a: bound.p / 2.0 + 1.0 + bound.k_lip * bound.k_lip * 2f64.powf(bound.p),
        b: 0.5 * bound.gamma * order.cos_quarter(),
        q: 2f64.max(order.alpha() / 2.0).max(2.0 * bound.p),
    }
}

/// Outcome of the admissibility check on δ for the `Hᵖ` rule.
#[derive(Debug, Clone, PartialEq)]
pub struct HpChoice {
    pub admissible: bool,
    pub epsilon: f64,
    /// The smallest of the three upper limits on `ε`.
    pub limit: f64,
    /// Which limit failed, when not admissible.
    pub reason: Option<String>,
}

/// Checks whether `δ` is small enough for the `Hᵖ` rule and returns the
/// induced `ε = ((A+B)/ln(1/δ))^{2/(α+μ)}`.
pub fn validate_delta_hp(
    delta: f64,
    bound: &AprioriBound,
    order: FractionalOrder,
) -> Result<HpChoice> {
    bound.validate_hp(order)?;
    let HpConstants { a, b, q } = hp_constants(bound, order);
    let xi = 0.5 * (order.alpha() + bound.mu);
    let limits = [
        ("epsilon < 1", 1.0),
        ("epsilon < (B/A)^(1/(xi - q))", (b / a).powf(1.0 / (xi - q))),
        (
            "epsilon below the monotonicity threshold",
            if bound.p == 0.0 {
                f64::INFINITY
            } else {
                (xi * bound.gamma * order.cos_quarter() / bound.p).powf(1.0 / xi)
            },
        ),
    ];
    let limit = limits.iter().map(|l| l.1).fold(f64::INFINITY, f64::min);
    let Ok(log) = log_inverse(delta) else {
        return Ok(HpChoice {
            admissible: false,
            epsilon: f64::NAN,
            limit,
            reason: Some(format!("delta = {delta} is not in (0, 1)")),
        });
    };
    let epsilon = ((a + b) / log).powf(1.0 / xi);
    let reason = limits
        .iter()
        .find(|(_, l)| !(epsilon < *l))
        .map(|(name, _)| format!("violates {name}"));
    Ok(HpChoice {
        admissible: reason.is_none(),
        epsilon,
        limit,
        reason,
    })
}

/// `Hᵖ` bound `C₂ δ^{B/(A+B)}`, valid when δ passes [`validate_delta_hp`].
pub fn bound_hp(x: f64, delta: f64, bound: &AprioriBound, order: FractionalOrder) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "x must lie in [0, 1), got {x}"
        )));
    }
    let choice = validate_delta_hp(delta, bound, order)?;
    if !choice.admissible {
        return Err(Error::InvalidParameter(format!(
            "delta = {delta} is not admissible: {}",
            choice.reason.unwrap_or_default()
        )));
    }
    let HpConstants { a, b, .. } = hp_constants(bound, order);
    Ok(c2(bound.m2) * delta.powf(b / (a + b)))
}

/// Upper limit on `ε` for the weak `Hᵖ` estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeakThreshold {
    Bounded(f64),
    /// `p = 0`: every `ε > 0` is admissible.
    Unbounded,
}

impl WeakThreshold {
    pub fn admits(&self, epsilon: f64) -> bool {
        match *self {
            WeakThreshold::Bounded(t) => epsilon > 0.0 && epsilon < t,
            WeakThreshold::Unbounded => epsilon > 0.0,
        }
    }
}

/// `[αγcos(απ/4)/(2p)]^{2/α}`.
pub fn epsilon_weak_hp(bound: &AprioriBound, order: FractionalOrder) -> Result<WeakThreshold> {
    bound.validate()?;
    if bound.p == 0.0 {
        return Ok(WeakThreshold::Unbounded);
    }
    let a = order.alpha();
    Ok(WeakThreshold::Bounded(
        (a * bound.gamma * order.cos_quarter() / (2.0 * bound.p)).powf(2.0 / a),
    ))
}

/// `C₃(1+ε⁻²)^p [e^{x ε^{-α/2} c} δ + e^{(x-γ-1) ε^{-α/2} c}]` with `c = cos(απ/4)`.
pub fn bound_weak_hp(
    x: f64,
    delta: f64,
    epsilon: f64,
    bound: &AprioriBound,
    order: FractionalOrder,
) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "x must lie in [0, 1), got {x}"
        )));
    }
    if !epsilon_weak_hp(bound, order)?.admits(epsilon) {
        return Err(Error::InvalidParameter(format!(
            "epsilon = {epsilon} is above the admissible threshold"
        )));
    }
    let rate = epsilon.powf(-0.5 * order.alpha()) * order.cos_quarter();
    let weight = c3(bound.m3, bound.k_lip) * (1.0 + epsilon.powi(-2)).powf(bound.p);
    Ok(weight * ((x * rate).exp() * delta + ((x - bound.gamma - 1.0) * rate).exp()))
}

/// Whether `ε` satisfies the monotonicity condition used by the `Hᵖ` rules.
pub fn hp_monotone(epsilon: f64, bound: &AprioriBound, order: FractionalOrder, weak: bool) -> bool {
    let xi = if weak {
        0.5 * order.alpha()
    } else {
        0.5 * (order.alpha() + bound.mu)
    };
    monotonicity_holds(order, epsilon, xi, bound.p, bound.gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::TimeGrid;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    fn bound(p: f64, k: f64) -> AprioriBound {
        AprioriBound {
            m1: 1.0,
            m2: 1.0,
            m3: 1.0,
            gamma: 1.0,
            mu: 5.0,
            p,
            k_lip: k,
        }
    }

    #[test]
    fn epsilon_l2_at_inverse_e() {
        let eps = epsilon_l2((-1.0f64).exp(), order(0.4)).unwrap();
        assert!((eps - (0.1 * std::f64::consts::PI).cos().powi(5)).abs() < 1e-15);
        assert!((eps - 0.778093).abs() < 1e-6);
        assert!(epsilon_l2(1.0, order(0.4)).is_err());
        assert!(epsilon_l2(0.0, order(0.4)).is_err());
    }

    #[test]
    fn epsilon_l2_increases_with_delta() {
        let o = order(0.7);
        let mut prev = 0.0;
        for k in (1..=12).rev() {
            let eps = epsilon_l2(10f64.powi(-k), o).unwrap();
            assert!(eps > prev);
            prev = eps;
        }
    }

    #[test]
    fn constants() {
        assert!((c1(1.0, 1.0) - 6.0 * std::f64::consts::E).abs() < 1e-12);
        assert!((c1(1.0, 1.0) - 16.3097).abs() < 1e-4);
        assert_eq!(c2(1.0), 6.0);
        assert_eq!(c2(2.0) - c2(1.0), 2.0);
        assert_eq!(c3(1.0, 0.0), 6.0);
        let h = hp_constants(&bound(0.0, 0.0), order(0.4));
        assert_eq!(h.a, 1.0);
        assert!((h.b - 0.5 * (0.1 * std::f64::consts::PI).cos()).abs() < 1e-15);
        assert_eq!(h.q, 2.0);
    }

    #[test]
    fn l2_bound_collapses_under_rule() {
        let o = order(0.5);
        for k in 1..=6 {
            let delta = 10f64.powi(-k);
            let eps = epsilon_l2(delta, o).unwrap();
            for x in [0.0, 0.25, 0.5, 0.75, 0.95] {
                let b = bound_l2(x, delta, eps, o, 1.3, 0.7).unwrap();
                let expected = c1(1.3, 0.7) * delta.powf(1.0 - x);
                assert!(
                    (b - expected).abs() <= 1e-12 * expected,
                    "x = {x}, delta = {delta}"
                );
            }
        }
        assert!(bound_l2(1.0, 0.1, 0.5, o, 1.0, 1.0).is_err());
    }

    #[test]
    fn truncation_is_a_projection() {
        let grid = TimeGrid::new(16, std::f64::consts::TAU)
            .unwrap()
            .frequencies();
        let values: Vec<Complex64> = (0..16)
            .map(|i| Complex64::new(i as f64, -(i as f64)))
            .collect();
        let spec = SpectralSignal::new(grid, values).unwrap();
        let t = truncate(&spec, 0.5).unwrap();
        for (i, v) in t.values().iter().enumerate() {
            if grid.omega(i) == 0.0 {
                assert_eq!(*v, spec.values()[i]);
            } else {
                assert_eq!(*v, Complex64::new(0.0, 0.0));
            }
        }
        assert_eq!(truncate(&t, 0.5).unwrap(), t);
        assert_eq!(truncate(&spec, grid.nyquist()).unwrap(), spec);
        assert!(truncate(&spec, 0.0).is_err());
    }

    #[test]
    fn hp_rule_admissibility() {
        let o = order(0.4);
        let b = bound(0.5, 0.5);
        let large = validate_delta_hp(0.9, &b, o).unwrap();
        assert!(!large.admissible);
        let small = validate_delta_hp(1e-150, &b, o).unwrap();
        assert!(small.admissible, "{small:?}");
        assert!(hp_monotone(small.epsilon, &b, o, false));
        let hp = bound_hp(0.5, 1e-150, &b, o).unwrap();
        let h = hp_constants(&b, o);
        assert!(h.b / (h.a + h.b) > 0.0 && h.b / (h.a + h.b) < 1.0);
        assert!((hp - 6.0 * 1e-150f64.powf(h.b / (h.a + h.b))).abs() < 1e-12 * hp);
        assert!(bound_hp(0.5, 0.9, &b, o).is_err());

        let mut bad = b;
        bad.mu = 1.0;
        assert!(validate_delta_hp(1e-150, &bad, o).is_err());
    }

    #[test]
    fn weak_threshold() {
        let o = order(0.4);
        let t = epsilon_weak_hp(&bound(1.0, 0.0), o).unwrap();
        let expected = (0.2 * (0.1 * std::f64::consts::PI).cos()).powi(5);
        let WeakThreshold::Bounded(v) = t else {
            panic!("expected a bound")
        };
        assert!((v - expected).abs() < 1e-15);
        assert!(hp_monotone(0.999 * v, &bound(1.0, 0.0), o, true));
        assert!(!hp_monotone(v, &bound(1.0, 0.0), o, true));

        let mut wide = bound(1.0, 0.0);
        wide.gamma = 2.0;
        let WeakThreshold::Bounded(w) = epsilon_weak_hp(&wide, o).unwrap() else {
            panic!()
        };
        assert!(w > v);
        assert_eq!(
            epsilon_weak_hp(&bound(0.0, 0.0), o).unwrap(),
            WeakThreshold::Unbounded
        );
    }

    #[test]
    fn weak_bound_shape() {
        let o = order(0.6);
        let b0 = bound(0.0, 0.3);
        let eps: f64 = 0.1;
        let rate = eps.powf(-0.3) * o.cos_quarter();
        let got = bound_weak_hp(0.4, 0.01, eps, &b0, o).unwrap();
        let want = c3(1.0, 0.3) * ((0.4 * rate).exp() * 0.01 + ((0.4 - 2.0) * rate).exp());
        assert!((got - want).abs() < 1e-13 * want);

        let mut b1 = b0;
        b1.gamma = 3.0;
        let tail = |b: &AprioriBound| bound_weak_hp(0.4, 0.0, eps, b, o).unwrap();
        let head = |b: &AprioriBound| bound_weak_hp(0.4, 0.01, eps, b, o).unwrap() - tail(b);
        assert!(tail(&b1) < tail(&b0));
        assert!((head(&b1) - head(&b0)).abs() < 1e-12 * head(&b0));

        let b = bound(1.0, 0.0);
        let WeakThreshold::Bounded(t) = epsilon_weak_hp(&b, o).unwrap() else {
            panic!()
        };
        assert!(bound_weak_hp(0.4, 0.01, t, &b, o).is_err());
    }

    proptest::proptest! {
        #[test]
        fn truncation_idempotent_and_contractive(seed in 0u64..1000, cut in 0.5f64..40.0) {
            let grid = TimeGrid::new(128, std::f64::consts::TAU).unwrap();
            let sig = crate::spectral::TimeSignal::from_fn(grid, |t| {
                ((seed as f64 + 1.0) * t).sin() + (0.37 * seed as f64 * t).cos() + t
            });
            let spec = crate::spectral::dft_forward(&sig);
            let once = truncate(&spec, cut).unwrap();
            let twice = truncate(&once, cut).unwrap();
            proptest::prop_assert_eq!(&once, &twice);
            let norm = crate::spectral::spectral_l2_norm;
            proptest::prop_assert!(norm(&once) <= norm(&spec) * (1.0 + 1e-14));
        }
    }
}
