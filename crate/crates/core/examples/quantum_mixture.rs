//! Quantum transmission of an ensemble of plane waves with energies spread
//! uniformly below the barrier top.
//!
//!     cargo run --example quantum_mixture

use eqpot::transmission::{
    coefficient_curve, quantum_t_mixture, quantum_t_single, CurveKind, MixtureEnsemble,
};
use eqpot::{PhysicalParams, SquareBarrier};

fn main() -> eqpot::Result<()> {
    for q in [0.25, 0.5, 1.0, 1.75, 2.0, 4.0, 8.0] {
        println!("Q = {q:<5} t = {:.8}", quantum_t_mixture(q)?);
    }
    let curve = coefficient_curve(CurveKind::Quantum, (0.02, 10.0), 500)?;
    if let Some(q) = curve.crossing(0.5) {
        println!("t crosses 1/2 at Q = {q:.4}");
    }

    // Single eigenstates for one physical setting.
    let barrier = SquareBarrier::reference();
    let params = PhysicalParams::reference(1.0);
    let k0 = MixtureEnsemble::new(&params, &barrier)?.k0();
    println!("\nhbar = 1, k0 = {k0:.5}");
    for i in 1..=5 {
        let k = k0 * i as f64 / 5.0;
        println!(
            "  k = {k:.4}  t = {:.6}",
            quantum_t_single(&barrier, &params, k)?
        );
    }
    Ok(())
}
