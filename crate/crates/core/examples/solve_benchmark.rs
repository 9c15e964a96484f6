//! Solves the benchmark `u = e^{-2x} t²` from noisy Cauchy data at `x = 0`
//! and reports the relative error at a few depths.
//!
//! ```bash
//! cargo run --release --example solve_benchmark
//! ```

use sideways::experiment::{
    inject_noise, relative_error, solve_pair, ExperimentConfig, SpaceSetup,
};
use sideways::solver::field_to_time;

fn main() -> sideways::Result<()> {
    let mut cfg = ExperimentConfig::new(0.4);
    cfg.x = vec![0.15, 0.35, 0.55];
    let setup = SpaceSetup::new(&cfg)?;
    let clean = cfg.problem.boundary(setup.time);

    for amplitude in [0.0, 0.01, 0.1] {
        let noisy = inject_noise(&clean, amplitude, 42, 0)?;
        let sol = solve_pair(&cfg, setup.space, &noisy.data, Some(16.9339))?;
        let field = field_to_time(&sol.field);
        print!(
            "amplitude {amplitude:<5} delta {:.3e} iterations {}:",
            noisy.measured_delta, sol.report.iterations
        );
        for (&j, exact) in setup.rows.iter().zip(&setup.exact) {
            print!(
                "  x={:.2} {:.4}",
                setup.space.point(j),
                relative_error(exact, field.row(j))?
            );
        }
        println!();
    }
    Ok(())
}
