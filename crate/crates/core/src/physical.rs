//! Physical parameters in arbitrary consistent units.
//!
//! Temperature enters only through `beta = 1 / (k_B T)`. A Planck constant of
//! zero is legal and selects the exact classical code paths everywhere.

use crate::error::{Error, Result};
use crate::potential::SquareBarrier;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    m: f64,
    beta: f64,
    hbar: f64,
}

impl PhysicalParams {
    pub fn new(m: f64, beta: f64, hbar: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive, got {m}"
            )));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "inverse temperature must be positive, got {beta}"
            )));
        }
        if !(hbar.is_finite() && hbar >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Planck constant must be non-negative, got {hbar}"
            )));
        }
        Ok(PhysicalParams { m, beta, hbar })
    }

    /// Parameters of the reference figures: `m = 1`, `beta = 1/8`.
    pub fn reference(hbar: f64) -> Self {
        PhysicalParams::new(1.0, 0.125, hbar).expect("reference parameters are valid")
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn with_hbar(&self, hbar: f64) -> Result<Self> {
        PhysicalParams::new(self.m, self.beta, hbar)
    }

    pub fn is_classical(&self) -> bool {
        self.hbar == 0.0
    }

    /// Width of the Gaussian smoothing, `sigma = sqrt(beta hbar^2 / (4 m))`.
    pub fn smoothing_sigma(&self) -> f64 {
        self.hbar * (self.beta / (4.0 * self.m)).sqrt()
    }

    /// `sqrt(2) sigma = sqrt(beta hbar^2 / (2 m))`, the length scale inside the
    /// error functions of the smoothed square barrier.
    pub fn erf_length(&self) -> f64 {
        self.hbar * (self.beta / (2.0 * self.m)).sqrt()
    }

    /// Prefactor `beta^2 hbar^2 / (12 m^2)` relating the inverse-mass correction
    /// to minus the curvature of the smoothed potential.
    pub fn curvature_coupling(&self) -> f64 {
        let bh = self.beta * self.hbar;
        bh * bh / (12.0 * self.m * self.m)
    }
}

/// Quantum strengths of a barrier problem. Always derived, never stored apart
/// from the parameters that define them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    /// `sqrt(beta / m) hbar / L`, governs the effective-potential model.
    pub h: f64,
    /// `hbar / (sqrt(m V0) L)`, governs the quantum statistical mixture.
    pub q: f64,
}

pub fn dimensionless(params: &PhysicalParams, barrier: &SquareBarrier) -> DimensionlessParams {
    let l = barrier.half_width();
    DimensionlessParams {
        h: (params.beta() / params.m()).sqrt() * params.hbar() / l,
        q: params.hbar() / ((params.m() * barrier.height()).sqrt() * l),
    }
}

/// Planck constant that realises a given `H` for fixed `m`, `beta`, `L`.
pub fn hbar_for_h(m: f64, beta: f64, half_width: f64, h: f64) -> f64 {
    h * half_width * (m / beta).sqrt()
}

/// Planck constant that realises a given `Q` for fixed `m`, `V0`, `L`.
pub fn hbar_for_q(m: f64, v0: f64, half_width: f64, q: f64) -> f64 {
    q * half_width * (m * v0).sqrt()
}
