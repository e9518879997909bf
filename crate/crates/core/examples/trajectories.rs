//! Particles launched at the effective barrier just below and just above the
//! tunneling threshold, integrated in both formulations.
//!
//!     cargo run --example trajectories

use eqpot::dynamics::{
    classify_traversal, integrate_hamiltonian, integrate_newtonian, launch_state, StepControl,
};
use eqpot::{LowMomentumModel, PhysicalParams, SquareBarrier};

fn main() -> eqpot::Result<()> {
    let model = LowMomentumModel::new(PhysicalParams::reference(3.0), SquareBarrier::reference())?;
    let threshold = model.tunneling_threshold()?;
    println!("threshold = {threshold:.8}");

    for eps in [0.9 * threshold, 1.1 * threshold] {
        let passage = classify_traversal(&model, eps, &StepControl::default())?;
        println!(
            "eps = {eps:.6}: {:?} after t = {:.3}, final p = {:+.6}",
            passage.traversal, passage.exit_time, passage.final_momentum
        );

        let (q0, p0) = launch_state(&model, eps)?;
        let ctrl = StepControl::sampled(1.0);
        let ham = integrate_hamiltonian(&model, q0, p0, 12.0, &ctrl)?;
        let v0 = p0 * model.inverse_mass(q0)?;
        let newt = integrate_newtonian(&model, q0, v0, eps, 12.0, &ctrl)?;
        let gap = ham
            .samples
            .iter()
            .zip(&newt.samples)
            .map(|(a, b)| (a.q - b.q).abs())
            .fold(0.0, f64::max);
        println!(
            "  energy drift {:.2e}, formulations differ by {gap:.2e}",
            ham.max_energy_drift
        );
        for s in ham.samples.iter().step_by(2) {
            println!("  t = {:>5.1}  q = {:+.5}  p = {:+.5}", s.t, s.q, s.p);
        }
    }
    Ok(())
}
