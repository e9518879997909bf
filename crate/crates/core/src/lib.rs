//! Effective quantum potentials for one-dimensional semiclassical transport.
//!
//! The full effective potential smooths a classical potential with a
//! momentum-dependent kernel. At low momentum it reduces to a Gaussian-smoothed
//! potential `V(q)` together with a space-dependent mass `M(q)`, and the motion
//! becomes ordinary Newtonian motion in an energy-dependent potential `V^Q`.
//!
//! Crate layout:
//!
//! - [`physical`]: mass, inverse temperature, Planck constant and the
//!   dimensionless strengths `H` and `Q`.
//! - [`potential`]: classical potentials (square barrier, piecewise constant,
//!   tabulated) and their Fourier form factors.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration, including the
//!   Gaussian-damped Fourier integrals over wavenumber.
//! - [`kernel`]: the full momentum-dependent effective potential.
//! - [`lowmomentum`]: smoothed potential, space-dependent mass, reduced
//!   potential and the tunneling threshold.
//! - [`dynamics`]: Hamiltonian and Newtonian trajectories of the approximated
//!   theory.
//! - [`transmission`]: effective and exact quantum transmission coefficients.
//! - [`figures`]: CSV data for the four reference figures.
//! - [`config`]: JSON run configuration with command-line overrides.
//! - [`validate`]: a quick pass/fail battery of cross-checks.
//!
//! The runnable programs under `examples/` walk through each capability.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod figures;
pub mod kernel;
pub mod lowmomentum;
pub mod physical;
pub mod potential;
pub mod quadrature;
pub mod transmission;
pub mod validate;

pub use error::{Error, Result};
pub use lowmomentum::LowMomentumModel;
pub use physical::{DimensionlessParams, PhysicalParams};
pub use potential::{
    ClassicalPotential, PiecewiseConstantPotential, SquareBarrier, TabulatedPotential,
};
pub use quadrature::QuadratureConfig;
