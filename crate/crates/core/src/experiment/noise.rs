use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::solver::BoundaryPair;
use crate::spectral::{l2_norm, TimeSignal};

/// Noisy boundary data with the realized noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisyData {
    pub data: BoundaryPair,
    /// `‖g^δ - g‖ + ‖h^δ - h‖`.
    pub measured_delta: f64,
}

/// Multiplicative uniform noise
///
/// ```text
/// g^δ(t) = g(t) (1 + δ/√π · r(t)),   r(t) ~ U[-1, 1]
/// ```
///
/// drawn independently per sample and per signal. Draws depend only on
/// `(seed, repetition, signal)`, so runs are reproducible whatever the
/// scheduling.
pub fn inject_noise(
    data: &BoundaryPair,
    amplitude: f64,
    seed: u64,
    repetition: u64,
) -> Result<NoisyData> {
    if !(amplitude >= 0.0) || !amplitude.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "noise amplitude must be nonnegative, got {amplitude}"
        )));
    }
    if repetition >> 63 != 0 {
        return Err(Error::InvalidParameter("repetition index too large".into()));
    }
    let scale = amplitude / std::f64::consts::PI.sqrt();
    let perturb = |sig: &TimeSignal, signal_id: u64| -> (TimeSignal, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream((repetition << 1) | signal_id);
        let grid = *sig.grid();
        let values: Vec<f64> = sig
            .real_parts()
            .into_iter()
            .map(|v| v * (1.0 + scale * rng.random_range(-1.0..=1.0)))
            .collect();
        let noisy = TimeSignal::from_real(grid, &values).expect("same length as the input");
        let diff: Vec<f64> = values
            .iter()
            .zip(sig.real_parts())
            .map(|(a, b)| a - b)
            .collect();
        let err = l2_norm(&TimeSignal::from_real(grid, &diff).expect("same length as the input"));
        (noisy, err)
    };
    let (g, eg) = perturb(data.g(), 0);
    let (h, eh) = perturb(data.h(), 1);
    Ok(NoisyData {
        data: BoundaryPair::new(g, h)?,
        measured_delta: eg + eh,
    })
}

/// Amplitude whose expected measured noise level is about `delta`, using
/// `E[r²] = 1/3`.
pub fn amplitude_for_delta(data: &BoundaryPair, delta: f64) -> f64 {
    let norms = l2_norm(data.g()) + l2_norm(data.h());
    delta * (3.0 * std::f64::consts::PI).sqrt() / norms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::Problem;
    use crate::spectral::TimeGrid;

    fn pair() -> BoundaryPair {
        Problem::Polynomial.boundary(TimeGrid::new(512, std::f64::consts::TAU).unwrap())
    }

    #[test]
    fn zero_amplitude_is_identity() {
        let p = pair();
        let n = inject_noise(&p, 0.0, 7, 0).unwrap();
        assert_eq!(n.data, p);
        assert_eq!(n.measured_delta, 0.0);
        assert!(inject_noise(&p, -1.0, 7, 0).is_err());
    }

    #[test]
    fn deterministic_and_keyed() {
        let p = pair();
        let a = inject_noise(&p, 0.1, 42, 3).unwrap();
        let b = inject_noise(&p, 0.1, 42, 3).unwrap();
        assert_eq!(a, b);
        let c = inject_noise(&p, 0.1, 42, 4).unwrap();
        assert_ne!(a.data, c.data);
        // g and h get independent draws
        let rel_g: Vec<f64> = a
            .data
            .g()
            .real_parts()
            .iter()
            .zip(p.g().real_parts())
            .skip(1)
            .map(|(x, y)| x / y)
            .collect();
        let rel_h: Vec<f64> = a
            .data
            .h()
            .real_parts()
            .iter()
            .zip(p.h().real_parts())
            .skip(1)
            .map(|(x, y)| x / y)
            .collect();
        assert_ne!(rel_g, rel_h);
    }

    #[test]
    fn measured_delta_tracks_target() {
        let p = pair();
        for target in [1e-1, 1e-3] {
            let amp = amplitude_for_delta(&p, target);
            let mean: f64 = (0..50)
                .map(|r| inject_noise(&p, amp, 1, r).unwrap().measured_delta)
                .sum::<f64>()
                / 50.0;
            assert!(
                (mean / target - 1.0).abs() < 0.05,
                "target {target}, mean {mean}"
            );
        }
    }
}
