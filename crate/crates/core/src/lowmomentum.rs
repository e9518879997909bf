//! Low-momentum reduction of the effective potential.
//!
//! Expanding the kernel to second order in momentum leaves a Gaussian-smoothed
//! potential `V(q)` of width `sigma = sqrt(β ħ² / 4m)` and a space-dependent
//! inverse mass
//!
//! ```text
//! 1/M(q) = 1/m - (β² ħ² / 12 m²) V''(q)
//! ```
//!
//! On a level set of the energy `ε` the motion is Newtonian with mass `m` in
//! `V^Q(q; ε) = (m / M(q)) (V(q) - ε) + ε`.
//!
//! Every supported potential is piecewise constant or piecewise linear, so the
//! Gaussian convolution and its derivatives are sums of `erfc` and Gaussian
//! terms and are evaluated exactly. [`gaussian_smooth`] and
//! [`gaussian_smooth_derivative`] do the same convolutions by quadrature and
//! serve as an independent check.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::physical::PhysicalParams;
use crate::potential::{
    ClassicalPotential, PiecewiseConstantPotential, SquareBarrier, TabulatedPotential,
};
use crate::quadrature::{integrate_partition, QuadratureConfig};

/// Grid size for mass-positivity checks and maximization.
pub const DOMAIN_POINTS: usize = 2001;

/// Smoothed potential and its first three derivatives at one position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothedProfile {
    pub v: f64,
    pub dv: f64,
    pub d2v: f64,
    pub d3v: f64,
}

/// Result of maximizing `V^Q` for a square barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VqMaximum {
    /// Closed-form value at the barrier center.
    pub value: f64,
    /// Numerical maximum over the evaluation domain.
    pub numeric_value: f64,
    pub argmax: f64,
    /// Set when the numerical maximum sits away from `q = 0` by more than one
    /// grid spacing, i.e. the closed form no longer gives the barrier top.
    pub displaced: bool,
}

#[derive(Debug, Clone)]
pub struct LowMomentumModel {
    params: PhysicalParams,
    pot: ClassicalPotential,
    sigma: f64,
    quad: QuadratureConfig,
    center: f64,
    exit_radius: f64,
}

impl LowMomentumModel {
    pub fn new(params: PhysicalParams, pot: impl Into<ClassicalPotential>) -> Result<Self> {
        LowMomentumModel::with_quadrature(params, pot, QuadratureConfig::default())
    }

    pub fn with_quadrature(
        params: PhysicalParams,
        pot: impl Into<ClassicalPotential>,
        quad: QuadratureConfig,
    ) -> Result<Self> {
        quad.validate()?;
        let pot = pot.into();
        let sigma = params.smoothing_sigma();
        let (lo, hi) = pot.support();
        let center = 0.5 * (lo + hi);
        let half = if hi > lo { 0.5 * (hi - lo) } else { 1.0 };
        let model = LowMomentumModel {
            params,
            pot,
            sigma,
            quad,
            center,
            exit_radius: 3.0 * half + 6.0 * sigma,
        };
        if !params.is_classical() {
            for q in model.domain_grid(DOMAIN_POINTS) {
                model.inverse_mass(q)?;
            }
        }
        Ok(model)
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn potential(&self) -> &ClassicalPotential {
        &self.pot
    }

    pub fn quadrature(&self) -> &QuadratureConfig {
        &self.quad
    }

    pub fn smoothing_sigma(&self) -> f64 {
        self.sigma
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Distance from the center beyond which every quantity is at its
    /// asymptotic value up to Gaussian tails: `3 L + 6 sigma` for a barrier of
    /// half-width `L`.
    pub fn exit_radius(&self) -> f64 {
        self.exit_radius
    }

    pub fn domain(&self) -> (f64, f64) {
        (
            self.center - self.exit_radius,
            self.center + self.exit_radius,
        )
    }

    pub fn domain_grid(&self, n: usize) -> impl Iterator<Item = f64> {
        let (lo, hi) = self.domain();
        let n = n.max(2);
        (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
    }

    /// `V(q)`.
    pub fn smoothed_potential(&self, q: f64) -> Result<f64> {
        if self.params.is_classical() {
            return Ok(self.pot.eval(q));
        }
        match &self.pot {
            ClassicalPotential::Square(b) => Ok(square_smoothed(b, self.params.erf_length(), q)),
            ClassicalPotential::Tabulated(t) => Ok(tabulated_profile(t, self.sigma, q).v),
            ClassicalPotential::Piecewise(p) => Ok(piecewise_profile(p, self.sigma, q).v),
        }
    }

    pub fn smoothed_profile(&self, q: f64) -> Result<SmoothedProfile> {
        if self.params.is_classical() {
            return Ok(SmoothedProfile {
                v: self.pot.eval(q),
                dv: 0.0,
                d2v: 0.0,
                d3v: 0.0,
            });
        }
        match &self.pot {
            ClassicalPotential::Square(b) => Ok(square_profile(b, self.params.erf_length(), q)),
            ClassicalPotential::Tabulated(t) => Ok(tabulated_profile(t, self.sigma, q)),
            ClassicalPotential::Piecewise(p) => Ok(piecewise_profile(p, self.sigma, q)),
        }
    }

    fn curvature(&self, q: f64) -> Result<f64> {
        match &self.pot {
            ClassicalPotential::Square(b) => Ok(square_profile(b, self.params.erf_length(), q).d2v),
            ClassicalPotential::Tabulated(t) => Ok(tabulated_profile(t, self.sigma, q).d2v),
            ClassicalPotential::Piecewise(p) => Ok(piecewise_profile(p, self.sigma, q).d2v),
        }
    }

    /// `1 / M(q)`; fails with [`Error::NonPositiveMass`] where the expansion
    /// breaks down.
    pub fn inverse_mass(&self, q: f64) -> Result<f64> {
        let inv_m = 1.0 / self.params.m();
        if self.params.is_classical() {
            return Ok(inv_m);
        }
        let value = inv_m - self.params.curvature_coupling() * self.curvature(q)?;
        check_inverse_mass(q, value)
    }

    pub fn mass(&self, q: f64) -> Result<f64> {
        Ok(1.0 / self.inverse_mass(q)?)
    }

    /// Inverse mass and its slope, from one profile evaluation.
    pub fn inverse_mass_with_slope(&self, profile: &SmoothedProfile, q: f64) -> Result<(f64, f64)> {
        let c = self.params.curvature_coupling();
        let value = check_inverse_mass(q, 1.0 / self.params.m() - c * profile.d2v)?;
        Ok((value, -c * profile.d3v))
    }

    /// `V^Q(q; ε)`.
    pub fn vq_potential(&self, q: f64, eps: f64) -> Result<f64> {
        let v = self.smoothed_potential(q)?;
        let inv_mass = self.inverse_mass(q)?;
        Ok(self.params.m() * inv_mass * (v - eps) + eps)
    }

    /// Maximum of `V^Q` for a square barrier: the closed form at `q = 0`
    /// together with a numerical search that flags a displaced maximum.
    pub fn vq_max_square(&self, eps: f64) -> Result<VqMaximum> {
        let barrier = self.square()?;
        let value = square_vq_center(barrier, &self.params, eps);
        let (lo, hi) = self.domain();
        let spacing = (hi - lo) / (DOMAIN_POINTS - 1) as f64;
        let (argmax, numeric_value) =
            maximize(|q| self.vq_potential(q, eps), lo, hi, DOMAIN_POINTS)?;
        Ok(VqMaximum {
            value,
            numeric_value,
            argmax,
            displaced: argmax.abs() > spacing,
        })
    }

    /// Energy above which a classical particle passes the effective barrier.
    ///
    /// `ε > V^Q(q; ε)` for every `q` reduces to `V(q) < ε` when `M > 0`, so the
    /// threshold is the maximum of the smoothed potential; for a square barrier
    /// that is `V0 erf(L / sqrt(β ħ² / 2m))`.
    pub fn tunneling_threshold(&self) -> Result<f64> {
        match &self.pot {
            ClassicalPotential::Square(b) => {
                if self.params.is_classical() {
                    Ok(b.height())
                } else {
                    Ok(b.height() * libm::erf(b.half_width() / self.params.erf_length()))
                }
            }
            pot if self.params.is_classical() => Ok(pot.max_value()),
            _ => {
                let (lo, hi) = self.domain();
                maximize(|q| self.smoothed_potential(q), lo, hi, DOMAIN_POINTS).map(|(_, v)| v)
            }
        }
    }

    /// Fixed point of `ε ↦ max_q V^Q(q; ε)` located by bisection, without using
    /// the reduction to the smoothed potential. Cross-checks
    /// [`tunneling_threshold`](Self::tunneling_threshold).
    pub fn threshold_fixed_point(&self) -> Result<f64> {
        let (lo_q, hi_q) = self.domain();
        let excess = |eps: f64| -> Result<f64> {
            let (_, vmax) = maximize(|q| self.vq_potential(q, eps), lo_q, hi_q, DOMAIN_POINTS)?;
            Ok(vmax - eps)
        };
        let mut lo = self.pot.asymptote();
        let mut hi = self.pot.max_value();
        let tol = 1e-13 * self.pot.energy_scale();
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if excess(mid)? > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn square(&self) -> Result<&SquareBarrier> {
        self.pot.as_square().ok_or_else(|| {
            Error::Unsupported("closed form available for square barriers only".into())
        })
    }
}

fn check_inverse_mass(q: f64, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveMass {
            q,
            inverse_mass: value,
        })
    }
}

fn gaussian_window(
    pot: &ClassicalPotential,
    sigma: f64,
    q: f64,
    cfg: &QuadratureConfig,
) -> Vec<f64> {
    let reach = cfg.tail_sigmas * sigma;
    let (lo, hi) = (q - reach, q + reach);
    let (s_lo, s_hi) = pot.support();
    let (a, b) = (lo.max(s_lo), hi.min(s_hi));
    if a >= b {
        return Vec::new();
    }
    let mut points = vec![a];
    points.extend(pot.kinks().into_iter().filter(|&x| x > a && x < b));
    points.push(b);
    points
}

/// Gaussian smoothing of a classical potential with width `sigma`:
/// `(1 / sqrt(2π) σ) ∫ V_C(q + s) exp(-s² / 2σ²) ds`.
pub fn gaussian_smooth(
    pot: &ClassicalPotential,
    sigma: f64,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if sigma == 0.0 {
        return Ok(pot.eval(q));
    }
    let c = pot.asymptote();
    let points = gaussian_window(pot, sigma, q, cfg);
    let norm = 1.0 / ((2.0 * PI).sqrt() * sigma);
    let est = integrate_partition(
        |x| {
            let s = (q - x) / sigma;
            norm * (-0.5 * s * s).exp() * (pot.eval(x) - c)
        },
        &points,
        cfg,
    )?;
    Ok(c + est.value)
}

/// `order`-th derivative (1 to 3) of the Gaussian-smoothed potential, by
/// convolution with the derivative of the Gaussian.
pub fn gaussian_smooth_derivative(
    pot: &ClassicalPotential,
    sigma: f64,
    q: f64,
    order: u8,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidParameter(format!(
            "derivative order must be 1, 2 or 3, got {order}"
        )));
    }
    if sigma == 0.0 {
        return Err(Error::Domain(
            "derivatives of an unsmoothed potential".into(),
        ));
    }
    let c = pot.asymptote();
    let points = gaussian_window(pot, sigma, q, cfg);
    let norm = 1.0 / ((2.0 * PI).sqrt() * sigma);
    let est = integrate_partition(
        |x| {
            let s = (q - x) / sigma;
            let g = norm * (-0.5 * s * s).exp();
            let shape = match order {
                1 => -s / sigma,
                2 => (s * s - 1.0) / (sigma * sigma),
                _ => (3.0 * s - s * s * s) / (sigma * sigma * sigma),
            };
            g * shape * (pot.eval(x) - c)
        },
        &points,
        cfg,
    )?;
    Ok(est.value)
}

fn gaussian_bump(u: f64) -> f64 {
    2.0 / PI.sqrt() * (-u * u).exp()
}

fn square_smoothed(b: &SquareBarrier, a: f64, q: f64) -> f64 {
    // erf(u+) + erf(u-) rewritten as a difference of erfc values, which keeps
    // full relative accuracy in the tails.
    let x = q.abs();
    let l = b.half_width();
    0.5 * b.height() * (libm::erfc((x - l) / a) - libm::erfc((x + l) / a))
}

fn square_profile(b: &SquareBarrier, a: f64, q: f64) -> SmoothedProfile {
    let (v0, l) = (b.height(), b.half_width());
    let up = (l + q) / a;
    let um = (l - q) / a;
    let (gp, gm) = (gaussian_bump(up), gaussian_bump(um));
    SmoothedProfile {
        v: square_smoothed(b, a, q),
        dv: v0 / (2.0 * a) * (gp - gm),
        d2v: -v0 / (a * a) * (up * gp + um * gm),
        d3v: v0 / (2.0 * a * a * a) * ((4.0 * up * up - 2.0) * gp - (4.0 * um * um - 2.0) * gm),
    }
}

/// Gaussian convolution of a step profile. With `z_j = (x_j - q) / σ` and
/// jumps `Δv_j` at the breakpoints:
///
/// ```text
/// V    = c + Σ_seg (v_j - c) ΔΦ_j
/// V'   = Σ Δv_j φ(z_j) / σ
/// V''  = Σ Δv_j z_j φ(z_j) / σ²
/// V''' = Σ Δv_j (z_j² - 1) φ(z_j) / σ³
/// ```
fn piecewise_profile(p: &PiecewiseConstantPotential, sigma: f64, q: f64) -> SmoothedProfile {
    let (x, v) = (p.breakpoints(), p.values());
    let c = p.asymptote();
    let mut out = SmoothedProfile {
        v: c,
        dv: 0.0,
        d2v: 0.0,
        d3v: 0.0,
    };
    for (j, &xj) in x.iter().enumerate() {
        let z = (xj - q) / sigma;
        let jump = v[j + 1] - v[j];
        let pdf = normal_pdf(z);
        out.dv += jump * pdf;
        out.d2v += jump * z * pdf;
        out.d3v += jump * (z * z - 1.0) * pdf;
        if j + 1 < x.len() {
            out.v += (v[j + 1] - c) * normal_mass(z, (x[j + 1] - q) / sigma);
        }
    }
    out.dv /= sigma;
    out.d2v /= sigma * sigma;
    out.d3v /= sigma * sigma * sigma;
    out
}

fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Standard normal mass between `a < b`, taken from whichever tail keeps
/// relative accuracy.
fn normal_mass(a: f64, b: f64) -> f64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    if a >= 0.0 {
        0.5 * (libm::erfc(a * s) - libm::erfc(b * s))
    } else if b <= 0.0 {
        0.5 * (libm::erfc(-b * s) - libm::erfc(-a * s))
    } else {
        1.0 - 0.5 * (libm::erfc(-a * s) + libm::erfc(b * s))
    }
}

/// Gaussian convolution of the linear interpolant, exact segment by segment.
/// With `z_j = (x_j - q) / σ`, slopes `b_j` and slope jumps `Δb_j` at the
/// nodes:
///
/// ```text
/// V    = c + Σ_seg [(v_j - c + b_j (q - x_j)) ΔΦ_j + b_j σ (φ(z_j) - φ(z_j+1))]
/// V'   = Σ_seg b_j ΔΦ_j
/// V''  = Σ_node Δb_j φ(z_j) / σ
/// V''' = Σ_node Δb_j z_j φ(z_j) / σ²
/// ```
fn tabulated_profile(t: &TabulatedPotential, sigma: f64, q: f64) -> SmoothedProfile {
    let (x, v) = (t.grid(), t.values());
    let c = t.asymptote();
    let z = |i: usize| (x[i] - q) / sigma;
    let slope = |j: usize| (v[j + 1] - v[j]) / (x[j + 1] - x[j]);
    let mut out = SmoothedProfile {
        v: 0.0,
        dv: 0.0,
        d2v: 0.0,
        d3v: 0.0,
    };
    // Terms further than 40σ away underflow to zero; skip them.
    let reach = 40.0 * sigma;
    let lo = x.partition_point(|&xi| xi < q - reach).saturating_sub(1);
    let hi = (x.partition_point(|&xi| xi <= q + reach) + 1).min(x.len());
    let mut prev_slope = if lo > 0 { slope(lo - 1) } else { 0.0 };
    for i in lo..hi {
        let zi = z(i);
        let b = if i + 1 < x.len() { slope(i) } else { 0.0 };
        let pdf = normal_pdf(zi);
        out.d2v += (b - prev_slope) * pdf;
        out.d3v += (b - prev_slope) * zi * pdf;
        prev_slope = b;
        if i + 1 < x.len() {
            let zn = z(i + 1);
            let mass = normal_mass(zi, zn);
            out.v += (v[i] - c + b * (q - x[i])) * mass + b * sigma * (pdf - normal_pdf(zn));
            out.dv += b * mass;
        }
    }
    out.v += c;
    out.d2v /= sigma;
    out.d3v /= sigma * sigma;
    out
}

/// `V^Q(0; ε)` for a square barrier in closed form.
pub fn square_vq_center(b: &SquareBarrier, params: &PhysicalParams, eps: f64) -> f64 {
    if params.is_classical() {
        return b.height();
    }
    let (v0, l) = (b.height(), b.half_width());
    let (m, beta, hbar) = (params.m(), params.beta(), params.hbar());
    let mass_ratio = 1.0
        + 2.0 * v0 * l / (3.0 * hbar)
            * (2.0 * beta * m / PI).sqrt()
            * (-2.0 * m * l * l / (beta * hbar * hbar)).exp();
    mass_ratio * (v0 * libm::erf(l / params.erf_length()) - eps) + eps
}

/// Grid search followed by golden-section refinement around the best node.
pub fn maximize<F>(f: F, lo: f64, hi: f64, n: usize) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = n.max(3);
    let h = (hi - lo) / (n - 1) as f64;
    let mut best = (lo, f(lo)?);
    for i in 1..n {
        let x = lo + h * i as f64;
        let y = f(x)?;
        if y > best.1 {
            best = (x, y);
        }
    }
    let (mut a, mut b) = ((best.0 - h).max(lo), (best.0 + h).min(hi));
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * (1.0 + best.0.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let y = f(x)?;
    if y >= best.1 {
        Ok((x, y))
    } else {
        Ok(best)
    }
}
