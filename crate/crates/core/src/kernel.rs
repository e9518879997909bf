//! The full momentum-dependent effective potential.
//!
//! `V_eff(q, p) = ∫ Γ(q - q', p) V_C(q') dq'` with the kernel
//!
//! ```text
//! Γ(s, p) = (1 / 2π) ∫ sinhc(β ħ p k / 2m) exp(-β ħ² k² / 8m + i k s) dk
//! ```
//!
//! Writing `F(k) = ∫ V_C(q') e^{-ikq'} dq'` for the form factor of the
//! deviation from the asymptotic level `c`, the evenness of the kernel and
//! `F(-k) = conj F(k)` give the one-sided real form
//!
//! ```text
//! V_eff(q, p) = c + (1/π) ∫_0^∞ sinhc(β ħ p k / 2m) exp(-β ħ² k² / 8m) Re[e^{ikq} F(k)] dk
//! ```
//!
//! The kernel integrates to one, so constants pass through unchanged. Nothing
//! in [`crate::dynamics`] uses this; it measures the error of the low-momentum
//! expansion.

use crate::error::Result;
use crate::physical::PhysicalParams;
use crate::potential::ClassicalPotential;
use crate::quadrature::{integrate_damped_fourier, QuadratureConfig};

/// `sinh(x) / x`, with its Taylor polynomial near zero.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() > 1e-4 {
        x.sinh() / x
    } else {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveHamiltonianSample {
    pub q: f64,
    pub p: f64,
    pub veff: f64,
    pub eps_eff: f64,
}

/// Gaussian width of the kernel in wavenumber, `sqrt(4m / (β ħ²))`.
fn damping_scale(params: &PhysicalParams) -> f64 {
    (4.0 * params.m() / params.beta()).sqrt() / params.hbar()
}

fn k_space_moment(
    params: &PhysicalParams,
    pot: &ClassicalPotential,
    q: f64,
    p: f64,
    power: i32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let (m, beta, hbar) = (params.m(), params.beta(), params.hbar());
    let momentum_rate = beta * hbar * p / (2.0 * m);
    let gauss_rate = beta * hbar * hbar / (8.0 * m);
    let integrand = |k: f64| {
        let phase = num_complex::Complex64::from_polar(1.0, k * q);
        let overlap = (phase * pot.form_factor(k)).re;
        sinhc(momentum_rate * k) * (-gauss_rate * k * k).exp() * k.powi(power) * overlap
    };
    let integral =
        integrate_damped_fourier(integrand, damping_scale(params), momentum_rate.abs(), cfg)?;
    Ok(integral / std::f64::consts::PI)
}

/// `V_eff(q, p)`. With `ħ = 0` the kernel is a delta function and the classical
/// potential is returned.
pub fn effective_potential(
    params: &PhysicalParams,
    pot: &ClassicalPotential,
    q: f64,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if params.is_classical() {
        return Ok(pot.eval(q));
    }
    Ok(pot.asymptote() + k_space_moment(params, pot, q, p, 0, cfg)?)
}

pub fn effective_hamiltonian(
    params: &PhysicalParams,
    pot: &ClassicalPotential,
    q: f64,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<EffectiveHamiltonianSample> {
    let veff = effective_potential(params, pot, q, p, cfg)?;
    Ok(EffectiveHamiltonianSample {
        q,
        p,
        veff,
        eps_eff: p * p / (2.0 * params.m()) + veff,
    })
}

/// Inverse space-dependent mass evaluated directly from its wavenumber
/// integral, `1/m + (β²ħ² / 12m²) (1/π) ∫_0^∞ k² e^{-βħ²k²/8m} Re[e^{ikq} F(k)] dk`.
/// Used to cross-check the position-space and closed-form routes.
pub fn k_space_inverse_mass(
    params: &PhysicalParams,
    pot: &ClassicalPotential,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let inv_m = 1.0 / params.m();
    if params.is_classical() {
        return Ok(inv_m);
    }
    Ok(inv_m + params.curvature_coupling() * k_space_moment(params, pot, q, 0.0, 2, cfg)?)
}

/// The low-momentum expansion `V(q) + (1/M(q) - 1/m) p² / 2`, assembled from
/// its two wavenumber integrals.
pub fn expanded_effective_potential(
    params: &PhysicalParams,
    pot: &ClassicalPotential,
    q: f64,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let v = effective_potential(params, pot, q, 0.0, cfg)?;
    let inv_mass = k_space_inverse_mass(params, pot, q, cfg)?;
    Ok(v + 0.5 * (inv_mass - 1.0 / params.m()) * p * p)
}
