//! Cutoff choices for a given noise level and the error bounds they imply.
//!
//! ```bash
//! cargo run --example parameter_rules
//! ```

use sideways::kernel::FractionalOrder;
use sideways::regularization::{
    bound_hp, bound_l2, epsilon_l2, epsilon_weak_hp, validate_delta_hp, AprioriBound,
};

fn main() -> sideways::Result<()> {
    let order = FractionalOrder::new(0.7)?;
    println!(
        "{:>10} {:>12} {:>12} {:>14} {:>14}",
        "delta", "epsilon", "omega_max", "bound x=0.15", "bound x=0.5"
    );
    for delta in [1e-1, 1e-2, 1e-3, 1e-4, 1e-6] {
        let eps = epsilon_l2(delta, order)?;
        println!(
            "{delta:>10.0e} {eps:>12.6} {:>12.4} {:>14.6e} {:>14.6e}",
            1.0 / eps,
            bound_l2(0.15, delta, eps, order, 1.0, 1.0)?,
            bound_l2(0.5, delta, eps, order, 1.0, 1.0)?
        );
    }

    let bound = AprioriBound {
        m1: 1.0,
        m2: 1.0,
        m3: 1.0,
        gamma: 1.0,
        mu: 5.0,
        p: 0.5,
        k_lip: 0.5,
    };
    // The rule needs extremely small δ before all three limits on ε hold.
    for delta in [1e-10, 1e-150] {
        let choice = validate_delta_hp(delta, &bound, order)?;
        print!(
            "H^p rule, delta {delta:.0e}: admissible {}",
            choice.admissible
        );
        if choice.admissible {
            print!(
                ", epsilon {:.4e}, bound {:.4e}",
                choice.epsilon,
                bound_hp(0.5, delta, &bound, order)?
            );
        } else if let Some(reason) = &choice.reason {
            print!(" ({reason})");
        }
        println!();
    }
    println!("weak H^p threshold: {:?}", epsilon_weak_hp(&bound, order)?);
    Ok(())
}
