//! Data of size `O(n^{-1/2})` concentrated near `ω = n` produce solutions
//! that blow up, unless the band is cut off.
//!
//! ```bash
//! cargo run --release --example ill_posedness
//! ```

use sideways::illposed::{amplification_sweep, analytic_lower_bound, hadamard_threshold};
use sideways::kernel::FractionalOrder;
use sideways::solver::{PicardConfig, SpaceGrid};

fn main() -> sideways::Result<()> {
    let order = FractionalOrder::new(0.9)?;
    let space = SpaceGrid::new(100)?;
    let cfg = PicardConfig::default();
    let ns = [50, 200, 1000];

    println!(
        "{:>6} {:>12} {:>14} {:>12} {:>14}",
        "n", "data", "sup solution", "ratio", "lower bound"
    );
    for a in amplification_sweep(&ns, order, space, &cfg, None)? {
        println!(
            "{:>6} {:>12.4e} {:>14.4e} {:>12.4e} {:>14.4e}",
            a.n,
            a.data_norm,
            a.sup_solution_norm,
            a.ratio,
            analytic_lower_bound(order, a.n, 64).sqrt()
        );
    }
    println!(
        "sup |u|² exceeds 2n/3 once n > {:.1}",
        hadamard_threshold(order)
    );

    let cut = amplification_sweep(&ns, order, space, &cfg, Some(16.0))?;
    println!(
        "with cutoff 16: {:?}",
        cut.iter().map(|a| a.sup_solution_norm).collect::<Vec<_>>()
    );
    Ok(())
}
