//! Picard increments on the benchmark next to the factorial contraction
//! bound.
//!
//! ```bash
//! cargo run --release --example picard_contraction
//! ```

use sideways::experiment::{solve_pair, ExperimentConfig, SpaceSetup};
use sideways::solver::contraction_bound;

fn main() -> sideways::Result<()> {
    let cfg = ExperimentConfig::new(0.4);
    let setup = SpaceSetup::new(&cfg)?;
    let data = cfg.problem.boundary(setup.time);
    let omega_max = 16.9339;
    let sol = solve_pair(&cfg, setup.space, &data, Some(omega_max))?;

    let incs = &sol.report.increments;
    let bound = contraction_bound(cfg.order()?, 1.0, omega_max, incs.len());
    println!("{:>4} {:>14} {:>14}", "m", "increment", "bound");
    for (m, inc) in incs.iter().enumerate() {
        let b = if m == 0 {
            incs[0]
        } else {
            bound[m - 1].sqrt() * incs[0]
        };
        println!("{:>4} {:>14.6e} {:>14.6e}", m + 1, inc, b);
    }
    println!("converged: {}", sol.report.converged);
    Ok(())
}
