//! Forward and inverse centered DFT of a sampled signal, Parseval, and a
//! spectral cutoff.
//!
//! ```bash
//! cargo run --example spectral_transform
//! ```

use sideways::regularization::truncate;
use sideways::spectral::{
    dft_forward, dft_inverse, l2_norm, spectral_l2_norm, TimeGrid, TimeSignal,
};

fn main() -> sideways::Result<()> {
    let grid = TimeGrid::new(256, std::f64::consts::TAU)?;
    let signal = TimeSignal::from_fn(grid, |t| (3.0 * t).sin() + 0.2 * (40.0 * t).cos());

    let spectrum = dft_forward(&signal);
    let back = dft_inverse(&spectrum);
    let round_trip = signal
        .values()
        .iter()
        .zip(back.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    println!("samples          {}", grid.n_samples());
    println!("frequency step   {:.6}", spectrum.grid().spacing());
    println!("Nyquist          {:.3}", spectrum.grid().nyquist());
    println!("time norm        {:.12}", l2_norm(&signal));
    println!("frequency norm   {:.12}", spectral_l2_norm(&spectrum));
    println!("round trip error {round_trip:.3e}");

    // Keeping |ω| <= 10 removes the fast component.
    let low = dft_inverse(&truncate(&spectrum, 10.0)?);
    let residual = grid
        .points()
        .zip(low.values())
        .map(|(t, v)| (v.re - (3.0 * t).sin()).abs())
        .fold(0.0, f64::max);
    println!("after cutoff 10, distance to sin 3t: {residual:.3e}");
    Ok(())
}
