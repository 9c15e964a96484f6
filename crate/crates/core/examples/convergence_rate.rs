//! Error against noise level with `ε` chosen from `δ`, on the periodic
//! benchmark, with fitted log-log slopes.
//!
//! ```bash
//! cargo run --release --example convergence_rate
//! ```

use sideways::experiment::{run_rate, ExperimentConfig, Problem};

fn main() -> sideways::Result<()> {
    let mut cfg = ExperimentConfig::new(0.9);
    cfg.problem = Problem::Smooth;
    cfg.n_samples = 1024;
    cfg.x = vec![0.15, 0.5];
    let study = run_rate(&cfg)?;

    for p in &study.points {
        println!(
            "delta {:.3e}  omega_max {:>8.3}  errors {:?}",
            p.mean_delta, p.mean_omega_max, p.mean_error
        );
    }
    for (f, b) in study.fits.iter().zip(&study.bound_fits) {
        println!(
            "x = {:.2}: fitted slope {:.4}, expected {:.4}, bound slope {:.4}",
            f.x, f.fit.slope, f.expected, b.fit.slope
        );
    }
    Ok(())
}
