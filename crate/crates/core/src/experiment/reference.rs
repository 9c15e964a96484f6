/// Published cutoffs, one per table column.
pub const OMEGA_MAX: [f64; 4] = [16.9339, 20.9183, 24.9027, 31.8755];

/// Published rows.
pub const TABLE_X: [f64; 9] = [0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95];

/// Published noise levels of the regularized-solution figure.
pub const FIGURE_DELTAS: [f64; 4] = [0.5775, 0.0543, 0.0057, 0.0005];

/// Published relative errors for `α = 0.4`, rows by `x`, columns by `ω_max`.
pub const TABLE_ALPHA_04: [[f64; 4]; 9] = [
    [0.1378, 0.0941, 0.0756, 0.0580],
    [0.1581, 0.1015, 0.0821, 0.0639],
    [0.1472, 0.1157, 0.0942, 0.0758],
    [0.1869, 0.1386, 0.1138, 0.0966],
    [0.2160, 0.1688, 0.1411, 0.1270],
    [0.2396, 0.2089, 0.1729, 0.1631],
    [0.2729, 0.2478, 0.2034, 0.1971],
    [0.2872, 0.2777, 0.2268, 0.2240],
    [0.3292, 0.3022, 0.2447, 0.2430],
];

/// Published relative errors for `α = 0.7`.
pub const TABLE_ALPHA_07: [[f64; 4]; 9] = [
    [0.1358, 0.0996, 0.0805, 0.0622],
    [0.1562, 0.1244, 0.1024, 0.0817],
    [0.2175, 0.1779, 0.1502, 0.1255],
    [0.2891, 0.2620, 0.2249, 0.1946],
    [0.3785, 0.3583, 0.3032, 0.2690],
    [0.4551, 0.4230, 0.3585, 0.3245],
    [0.5118, 0.4682, 0.3916, 0.3604],
    [0.5652, 0.4989, 0.4153, 0.3874],
    [0.5902, 0.5256, 0.4372, 0.4127],
];

/// The published table for `alpha`, if there is one.
pub fn published_table(alpha: f64) -> Option<&'static [[f64; 4]; 9]> {
    if (alpha - 0.4).abs() < 1e-12 {
        Some(&TABLE_ALPHA_04)
    } else if (alpha - 0.7).abs() < 1e-12 {
        Some(&TABLE_ALPHA_07)
    } else {
        None
    }
}

/// Mean `|ln(ours / published)|` over all cells; infinite if any cell is
/// missing or not positive.
pub fn log_mismatch(ours: &[Vec<f64>], published: &[[f64; 4]; 9]) -> f64 {
    if ours.len() != published.len() || ours.iter().any(|r| r.len() != 4) {
        return f64::INFINITY;
    }
    let mut total = 0.0;
    for (r, p) in ours.iter().zip(published) {
        for (a, b) in r.iter().zip(p) {
            if !(*a > 0.0) {
                return f64::INFINITY;
            }
            total += (a / b).ln().abs();
        }
    }
    total / 36.0
}

/// Largest factor `max(ours/published, published/ours)` over all cells.
pub fn worst_factor(ours: &[Vec<f64>], published: &[[f64; 4]; 9]) -> f64 {
    ours.iter()
        .zip(published)
        .flat_map(|(r, p)| r.iter().zip(p).map(|(a, b)| (a / b).max(b / a)))
        .fold(
            0.0,
            |m, f| if f.is_nan() { f64::INFINITY } else { m.max(f) },
        )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_and_scores() {
        assert_eq!(published_table(0.4).unwrap()[0][0], 0.1378);
        assert_eq!(published_table(0.7).unwrap()[8][3], 0.4127);
        assert!(published_table(0.5).is_none());
        let same: Vec<Vec<f64>> = TABLE_ALPHA_04.iter().map(|r| r.to_vec()).collect();
        assert_eq!(log_mismatch(&same, &TABLE_ALPHA_04), 0.0);
        assert_eq!(worst_factor(&same, &TABLE_ALPHA_04), 1.0);
        let doubled: Vec<Vec<f64>> = same
            .iter()
            .map(|r| r.iter().map(|v| 2.0 * v).collect())
            .collect();
        assert!((log_mismatch(&doubled, &TABLE_ALPHA_04) - 2f64.ln()).abs() < 1e-12);
        assert!((worst_factor(&doubled, &TABLE_ALPHA_04) - 2.0).abs() < 1e-12);
    }
}
