//! Mean relative errors over noisy repetitions on a grid of depths and
//! cutoffs, compared with the published values.
//!
//! ```bash
//! cargo run --release --example error_table -- 0.4 0.03
//! ```

use sideways::experiment::{reference, run_table_with_amplitude, ExperimentConfig};

fn main() -> sideways::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(0.4, |a| a.parse().expect("alpha"));
    let amplitude: f64 = args.next().map_or(0.03, |a| a.parse().expect("amplitude"));

    let cfg = ExperimentConfig::new(alpha);
    let table = run_table_with_amplitude(&cfg, amplitude)?;
    let published = reference::published_table(alpha);

    print!("{:>6}", "x");
    for w in &table.omega_max {
        print!(" {w:>17.4}");
    }
    println!();
    for (r, x) in table.x.iter().enumerate() {
        print!("{x:>6.2}");
        for c in 0..table.omega_max.len() {
            let ours = table.cell(r, c).mean;
            match published {
                Some(p) => print!(" {ours:>8.4} ({:.4})", p[r][c]),
                None => print!(" {ours:>17.4}"),
            }
        }
        println!();
    }
    println!(
        "mean delta {:.4e}; nondecreasing in x {}; nonincreasing in omega_max {}",
        table.mean_delta,
        table.nondecreasing_in_x(),
        table.nonincreasing_in_omega()
    );
    if let Some(p) = published {
        println!(
            "worst factor {:.3}",
            reference::worst_factor(&table.means(), p)
        );
    }
    Ok(())
}
