//! Effective transmission from the threshold formula, checked against a beam
//! of 200 simulated particles with energies spread over (0, V0).
//!
//!     cargo run --release --example effective_transmission

use eqpot::dynamics::StepControl;
use eqpot::physical::{dimensionless, hbar_for_h};
use eqpot::transmission::{
    beam_energies, effective_coefficients, effective_half_transmission_h, random_beam_energies,
    simulated_transmission,
};
use eqpot::{LowMomentumModel, PhysicalParams, SquareBarrier};

fn main() -> eqpot::Result<()> {
    let barrier = SquareBarrier::reference();
    println!("t = 1/2 at H = {:.6}", effective_half_transmission_h());
    println!("  hbar      H        t      beam  random beam");
    for hbar in [0.0, 1.0, 2.0, 4.0, 6.0, hbar_for_h(1.0, 0.125, 0.5, 2.97)] {
        let params = PhysicalParams::reference(hbar);
        let model = LowMomentumModel::new(params, barrier)?;
        let t = effective_coefficients(&model)?.t();
        let ctrl = StepControl::default();
        let beam = simulated_transmission(&model, &beam_energies(1.0, 200), &ctrl)?;
        let random = simulated_transmission(&model, &random_beam_energies(1.0, 200, 2024), &ctrl)?;
        let h = dimensionless(&params, &barrier).h;
        println!("{hbar:>6.3} {h:>6.3} {t:>8.5} {beam:>8.3} {random:>8.3}");
    }
    Ok(())
}
