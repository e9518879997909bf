//! A quick battery of cross-checks between independent routes to the same
//! quantity. Each check records its worst deviation and the tolerance it was
//! held to.

use std::fmt;

use crate::dynamics::{integrate_hamiltonian, integrate_newtonian, StepControl};
use crate::error::Result;
use crate::kernel::{effective_potential, k_space_inverse_mass};
use crate::lowmomentum::{gaussian_smooth, LowMomentumModel};
use crate::physical::PhysicalParams;
use crate::potential::{ClassicalPotential, SquareBarrier};
use crate::quadrature::QuadratureConfig;
use crate::transmission::{
    beam_energies, effective_coefficients, effective_t_of_h, quantum_t_mixture,
    quantum_t_mixture_k_space, quantum_t_single, simulated_transmission,
    transfer_matrix_transmission, MixtureEnsemble,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.deviation.is_finite() && self.deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{tag}  {:<50} deviation {:.3e}  tolerance {:.1e}",
                c.name, c.deviation, c.tolerance
            )?;
        }
        let n = self.checks.iter().filter(|c| c.passed()).count();
        write!(f, "{n}/{} checks passed", self.checks.len())
    }
}

fn max_dev<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    it.into_iter().try_fold(0.0f64, |acc, d| Ok(acc.max(d?)))
}

pub fn run_all() -> Result<Report> {
    let barrier = SquareBarrier::reference();
    let pot = ClassicalPotential::from(barrier);
    let mut checks = Vec::new();
    let mut push = |name, deviation, tolerance| {
        checks.push(Check {
            name,
            deviation,
            tolerance,
        })
    };

    push(
        "effective t at H = 2.97 vs 1/2",
        (effective_t_of_h(2.97) - 0.5).abs(),
        5e-3,
    );
    push(
        "mixture t at Q = 1.75 vs 1/2",
        (quantum_t_mixture(1.75)? - 0.5).abs(),
        1e-2,
    );

    // Closed-form smoothing against position-space quadrature.
    let tight = QuadratureConfig::default().with_rel_tol(1e-12);
    let model = LowMomentumModel::new(PhysicalParams::reference(3.0), barrier)?;
    let dev = max_dev((0..=20).map(|i| {
        let q = -2.0 + 0.2 * i as f64;
        let closed = model.smoothed_potential(q)?;
        let numeric = gaussian_smooth(&pot, model.smoothing_sigma(), q, &tight)?;
        Ok((closed - numeric).abs() / closed.abs().max(1e-300))
    }))?;
    push("smoothed potential: closed form vs quadrature", dev, 1e-8);

    let dev = max_dev((0..=20).map(|i| {
        let q = -2.0 + 0.2 * i as f64;
        let closed = model.inverse_mass(q)?;
        let k = k_space_inverse_mass(model.params(), &pot, q, &tight)?;
        Ok((closed - k).abs() / closed)
    }))?;
    push(
        "inverse mass: closed form vs wavenumber integral",
        dev,
        1e-8,
    );

    let dev = max_dev([0.0, 0.3, 0.5, 1.0].map(|q| {
        let v = effective_potential(model.params(), &pot, q, 0.0, &tight)?;
        Ok((v - model.smoothed_potential(q)?).abs())
    }))?;
    push("kernel at p = 0 vs smoothed potential", dev, 1e-10);

    let params = PhysicalParams::reference(1.0);
    let ens = MixtureEnsemble::new(&params, &barrier)?;
    let piecewise = barrier.to_piecewise();
    let dev = max_dev((1..50).map(|i| {
        let k = ens.k0() * i as f64 / 50.0;
        let e = params.hbar().powi(2) * k * k / (2.0 * params.m());
        let tm = transfer_matrix_transmission(&piecewise, &params, e)?.t;
        Ok((tm - quantum_t_single(&barrier, &params, k)?).abs())
    }))?;
    push("eigenstate transmission vs transfer matrix", dev, 1e-10);

    let dev = max_dev([0.5, 1.0, 2.0, 4.0].map(|q| {
        let p = PhysicalParams::reference(q * barrier.half_width() * 2f64.sqrt());
        let k_space = quantum_t_mixture_k_space(&barrier, &p, &tight)?;
        Ok((k_space - quantum_t_mixture(q)?).abs())
    }))?;
    push("mixture: reduced integral vs wavenumber average", dev, 1e-8);

    let model4 = LowMomentumModel::new(PhysicalParams::reference(4.0), barrier)?;
    let t = effective_coefficients(&model4)?.t();
    let n = 200;
    let frac = simulated_transmission(&model4, &beam_energies(1.0, n), &StepControl::default())?;
    push(
        "trajectory surpass fraction vs effective t",
        (frac - t).abs(),
        1.0 / n as f64,
    );

    let (q0, p0) = (-3.0, 0.9);
    let traj = integrate_hamiltonian(&model, q0, p0, 10.0, &StepControl::sampled(0.5))?;
    push(
        "energy drift over one trajectory",
        traj.max_energy_drift,
        1e-9,
    );
    let v0 = p0 * model.inverse_mass(q0)?;
    let newton = integrate_newtonian(
        &model,
        q0,
        v0,
        traj.energy0,
        10.0,
        &StepControl::sampled(0.5),
    )?;
    let dev = traj
        .samples
        .iter()
        .zip(&newton.samples)
        .map(|(a, b)| (a.q - b.q).abs())
        .fold(0.0, f64::max);
    push("Hamiltonian vs Newtonian trajectory", dev, 1e-8);

    let classical = LowMomentumModel::new(PhysicalParams::reference(0.0), barrier)?;
    push(
        "classical limit: effective t",
        effective_coefficients(&classical)?.t(),
        0.0,
    );

    Ok(Report { checks })
}
