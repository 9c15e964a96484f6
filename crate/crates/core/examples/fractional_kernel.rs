//! The symbol `k(ω) = (iω)^{α/2}`, its kernels and the Caputo derivative of
//! monomials.
//!
//! ```bash
//! cargo run --example fractional_kernel
//! ```

use sideways::kernel::{
    caputo_monomial, classical_growth_rate, fractional_growth_rate, kernel_cosh, kernel_sinh_ratio,
    symbol, FractionalOrder,
};

fn main() -> sideways::Result<()> {
    let order = FractionalOrder::new(0.5)?;
    println!(
        "{:>8} {:>22} {:>12} {:>12}",
        "omega", "k(omega)", "|cosh k|", "e^{Re k}"
    );
    for omega in [-16.0, -1.0, 0.0, 1.0, 4.0, 16.0, 64.0] {
        let k = symbol(order, omega);
        let c = kernel_cosh(order, omega, 1.0);
        println!(
            "{omega:>8.1} {:>10.6} {:+10.6}i {:>12.6} {:>12.6}",
            k.re(),
            k.im(),
            c.value.norm(),
            k.re().exp()
        );
    }

    let s = kernel_sinh_ratio(order, 0.0, 0.7);
    println!("sinh(k 0.7)/k at omega = 0: {}", s.value.re);

    println!(
        "growth at omega = 100: fractional {:.4}, classical {:.4}",
        fractional_growth_rate(order, 100.0),
        classical_growth_rate(100.0)
    );

    for alpha in [0.4, 0.7] {
        let o = FractionalOrder::new(alpha)?;
        println!(
            "alpha = {alpha}: D^a t^2 at t = 1 is {:.6}",
            caputo_monomial(o, 2, 1.0)
        );
    }
    Ok(())
}
