//! The full momentum-dependent effective potential against its low-momentum
//! expansion. The gap closes like p⁴.
//!
//!     cargo run --release --example full_kernel

use eqpot::kernel::{effective_potential, expanded_effective_potential};
use eqpot::{ClassicalPotential, PhysicalParams, QuadratureConfig, SquareBarrier};

fn main() -> eqpot::Result<()> {
    let params = PhysicalParams::reference(3.0);
    let pot = ClassicalPotential::from(SquareBarrier::reference());
    let cfg = QuadratureConfig::default().with_rel_tol(1e-13);
    let p_unit = (params.m() / params.beta()).sqrt();

    for q in [0.0, 0.5, 1.0] {
        println!("q = {q}");
        let mut prev: Option<(f64, f64)> = None;
        for frac in [0.05, 0.1, 0.2, 0.4] {
            let p = frac * p_unit;
            let full = effective_potential(&params, &pot, q, p, &cfg)?;
            let approx = expanded_effective_potential(&params, &pot, q, p, &cfg)?;
            let gap = (full - approx).abs();
            let slope = prev.map(|(p0, g0)| (gap / g0).ln() / (p / p0).ln());
            match slope {
                Some(s) => println!(
                    "  p = {p:.4}  V_eff = {full:.10}  gap = {gap:.3e}  local slope = {s:.3}"
                ),
                None => println!("  p = {p:.4}  V_eff = {full:.10}  gap = {gap:.3e}"),
            }
            prev = Some((p, gap));
        }
    }
    Ok(())
}
