//! Smoothed potential, space-dependent mass and reduced potential for the
//! reference square barrier at a few values of ħ.
//!
//!     cargo run --example smoothing_profiles

use eqpot::{LowMomentumModel, PhysicalParams, SquareBarrier};

fn main() -> eqpot::Result<()> {
    let eps = 0.25;
    for hbar in [1.0, 3.0, 6.0, 10.0] {
        let model =
            LowMomentumModel::new(PhysicalParams::reference(hbar), SquareBarrier::reference())?;
        let peak = model.vq_max_square(eps)?;
        println!(
            "hbar = {hbar:>4}: V(0) = {:.6}  M(0) = {:.6}  max V^Q = {:.6} at q = {:+.3}  threshold = {:.6}",
            model.smoothed_potential(0.0)?,
            model.mass(0.0)?,
            peak.numeric_value,
            peak.argmax,
            model.tunneling_threshold()?,
        );
    }

    println!("\n    q        V        M       V^Q   (hbar = 3, eps = {eps})");
    let model = LowMomentumModel::new(PhysicalParams::reference(3.0), SquareBarrier::reference())?;
    for i in -8..=8 {
        let q = i as f64 * 0.25;
        println!(
            "{q:>6.2} {:>8.5} {:>8.5} {:>8.5}",
            model.smoothed_potential(q)?,
            model.mass(q)?,
            model.vq_potential(q, eps)?
        );
    }
    Ok(())
}
