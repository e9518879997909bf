//! A potential read from a CSV table (here a smooth bump written on the fly),
//! run through the same smoothing, mass and threshold machinery.
//!
//!     cargo run --example tabulated_potential [path.csv]

use std::io::Write;

use eqpot::dynamics::{classify_traversal, StepControl};
use eqpot::{LowMomentumModel, PhysicalParams, TabulatedPotential};

fn main() -> eqpot::Result<()> {
    let pot = match std::env::args().nth(1) {
        Some(path) => TabulatedPotential::from_csv_path(path)?,
        None => {
            let mut csv = Vec::new();
            writeln!(csv, "q,V").unwrap();
            for i in 0..=400 {
                let q = -4.0 + 0.02 * i as f64;
                writeln!(csv, "{q},{}", (-2.0 * q * q).exp()).unwrap();
            }
            TabulatedPotential::from_csv_reader(csv.as_slice())?
        }
    };

    for hbar in [0.5, 2.0, 4.0] {
        let model = LowMomentumModel::new(PhysicalParams::reference(hbar), pot.clone())?;
        let threshold = model.tunneling_threshold()?;
        let below = classify_traversal(&model, 0.95 * threshold, &StepControl::default())?;
        let above = classify_traversal(&model, 1.05 * threshold, &StepControl::default())?;
        println!(
            "hbar = {hbar}: V(0) = {:.6}, M(0) = {:.6}, threshold = {threshold:.6}; 0.95x {:?}, 1.05x {:?}",
            model.smoothed_potential(0.0)?,
            model.mass(0.0)?,
            below.traversal,
            above.traversal
        );
    }
    Ok(())
}
