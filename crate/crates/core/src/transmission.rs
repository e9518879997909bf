//! Transmission and reflection through a barrier.
//!
//! Two notions are computed side by side. The effective coefficient is the
//! fraction of a classical beam with energies spread uniformly on `(0, V0)`
//! that passes the effective barrier; it is fixed by the tunneling threshold.
//! The quantum coefficient averages the textbook eigenstate transmission over
//! an ensemble of incoming plane waves with the same uniform energy spread.
//! The two have different physical meaning and depend on different
//! dimensionless strengths (`H` and `Q`).

use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::{classify_traversal, StepControl, Traversal};
use crate::error::{Error, Result};
use crate::lowmomentum::LowMomentumModel;
use crate::physical::PhysicalParams;
use crate::potential::{ClassicalPotential, PiecewiseConstantPotential, SquareBarrier};
use crate::quadrature::{integrate_adaptive, QuadratureConfig};

/// Transmission `t` and reflection `r = 1 - t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientPair {
    t: f64,
    r: f64,
}

impl CoefficientPair {
    /// Clamps into `[0, 1]`.
    pub fn from_transmission(t: f64) -> Self {
        let t = t.clamp(0.0, 1.0);
        CoefficientPair { t, r: 1.0 - t }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// `t = 1 - erf(√2 / H) = erfc(√2 / H)`; zero at `H = 0`.
pub fn effective_t_of_h(h: f64) -> f64 {
    if h <= 0.0 {
        0.0
    } else {
        libm::erfc(std::f64::consts::SQRT_2 / h)
    }
}

/// Effective coefficients of a model. For a square barrier this is the closed
/// form in `H`; otherwise `t = max(0, 1 - threshold / max V_C)`.
pub fn effective_coefficients(model: &LowMomentumModel) -> Result<CoefficientPair> {
    match model.potential() {
        ClassicalPotential::Square(b) => {
            let h = crate::physical::dimensionless(model.params(), b).h;
            Ok(CoefficientPair::from_transmission(effective_t_of_h(h)))
        }
        pot => {
            let threshold = model.tunneling_threshold()?;
            let top = pot.max_value();
            Ok(CoefficientPair::from_transmission(
                (1.0 - threshold / top).max(0.0),
            ))
        }
    }
}

/// Fraction of launched particles that surpass the barrier.
pub fn simulated_transmission(
    model: &LowMomentumModel,
    energies: &[f64],
    ctrl: &StepControl,
) -> Result<f64> {
    if energies.is_empty() {
        return Err(Error::InvalidParameter("empty energy list".into()));
    }
    let outcomes: Vec<Traversal> = energies
        .par_iter()
        .map(|&eps| classify_traversal(model, eps, ctrl).map(|p| p.traversal))
        .collect::<Result<_>>()?;
    let passed = outcomes
        .iter()
        .filter(|&&t| t == Traversal::Surpassed)
        .count();
    Ok(passed as f64 / energies.len() as f64)
}

/// Equally spaced midpoints of `(0, v0)`.
pub fn beam_energies(v0: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| v0 * (i as f64 + 0.5) / n as f64).collect()
}

/// `n` energies drawn uniformly from `(0, v0)` with a fixed seed.
pub fn random_beam_energies(v0: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let e: f64 = rng.gen::<f64>() * v0;
            if e > 0.0 {
                break e;
            }
        })
        .collect()
}

/// Incoming plane waves `e^{ikx}` with energies uniform on `(0, V0)`: the
/// wavenumber density is `ρ(k) = ħ² k / (m V0)` on `[0, k0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureEnsemble {
    v0: f64,
    k0: f64,
    m: f64,
    hbar: f64,
}

impl MixtureEnsemble {
    pub fn new(params: &PhysicalParams, barrier: &SquareBarrier) -> Result<Self> {
        if params.is_classical() {
            return Err(Error::Domain("the quantum ensemble needs hbar > 0".into()));
        }
        Ok(MixtureEnsemble {
            v0: barrier.height(),
            k0: (2.0 * params.m() * barrier.height()).sqrt() / params.hbar(),
            m: params.m(),
            hbar: params.hbar(),
        })
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// `1 / (k0 L)`, the strength that enters the mixture integrand.
    pub fn mixture_q(&self, barrier: &SquareBarrier) -> f64 {
        1.0 / (self.k0 * barrier.half_width())
    }

    pub fn density(&self, k: f64) -> f64 {
        if (0.0..=self.k0).contains(&k) {
            self.hbar * self.hbar * k / (self.m * self.v0)
        } else {
            0.0
        }
    }
}

/// Transmission of one sub-barrier eigenstate with wavenumber `k`, in the
/// positive form `4k²κ² / (4k²κ² + k0⁴ sinh²(2κL))`, `κ² = k0² - k²`.
pub fn quantum_t_single(barrier: &SquareBarrier, params: &PhysicalParams, k: f64) -> Result<f64> {
    let ens = MixtureEnsemble::new(params, barrier)?;
    let k0 = ens.k0;
    if !(k > 0.0) || k > k0 {
        return Err(Error::Domain(format!("wavenumber {k} outside (0, {k0}]")));
    }
    Ok(single_transmission(k / k0, k0 * barrier.half_width()))
}

/// Eigenstate transmission as a function of `x = k / k0` and `a = k0 L`.
fn single_transmission(x: f64, a: f64) -> f64 {
    let c2 = (1.0 - x) * (1.0 + x);
    if c2 <= 0.0 {
        return 1.0 / (1.0 + a * a);
    }
    let c = c2.sqrt();
    let num = 4.0 * x * x * c2;
    let s = (2.0 * c * a).sinh();
    num / (num + s * s)
}

/// The eigenstate transmission exactly as `k²(k² - k0²) / (k⁴ - k0²k² - (k0⁴/4) sinh²(2κL))`.
pub fn quantum_t_single_printed(
    barrier: &SquareBarrier,
    params: &PhysicalParams,
    k: f64,
) -> Result<f64> {
    let ens = MixtureEnsemble::new(params, barrier)?;
    let k0 = ens.k0;
    let kappa = ((k0 - k) * (k0 + k)).sqrt();
    let s = (2.0 * kappa * barrier.half_width()).sinh();
    let num = k * k * (k * k - k0 * k0);
    let den = k.powi(4) - k0 * k0 * k * k - 0.25 * k0.powi(4) * s * s;
    Ok(num / den)
}

/// Mixture transmission
/// `t^Q = 2 ∫_0^1 x³(x² - 1) / (x⁴ - x² - sinh²(2√(1-x²)/Q) / 4) dx`,
/// evaluated in the equivalent positive form with its limit at `x = 1`.
pub fn quantum_t_mixture(q: f64) -> Result<f64> {
    quantum_t_mixture_with(q, &QuadratureConfig::default().with_rel_tol(1e-12))
}

pub fn quantum_t_mixture_with(q: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::Domain(format!("Q must be positive, got {q}")));
    }
    let a = 1.0 / q;
    let t = integrate_adaptive(|x| 2.0 * x * single_transmission(x, a), 0.0, 1.0, cfg)?;
    Ok(t.clamp(0.0, 1.0))
}

/// Mixture transmission averaged directly over wavenumber,
/// `∫_0^{k0} t(k) ρ(k) dk`, for the given physical parameters.
pub fn quantum_t_mixture_k_space(
    barrier: &SquareBarrier,
    params: &PhysicalParams,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let ens = MixtureEnsemble::new(params, barrier)?;
    let k0 = ens.k0;
    let l = barrier.half_width();
    let kappa_l = |k: f64| ((k0 - k) * (k0 + k)).sqrt() * l;
    integrate_adaptive(
        |k| {
            let kl = kappa_l(k);
            let t = if kl == 0.0 {
                1.0 / (1.0 + (k0 * l).powi(2))
            } else {
                let num = 4.0 * (k * l).powi(2) * kl * kl;
                let s = (2.0 * kl).sinh();
                num / (num + (k0 * l).powi(4) * s * s)
            };
            t * ens.density(k)
        },
        0.0,
        k0,
        cfg,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferResult {
    pub t: f64,
    /// Set when the transmitted amplitude fell below the floating-point range.
    pub underflow: bool,
}

/// Exact transmission through a piecewise-constant potential by the 2×2
/// transfer-matrix method, for energy `e` above the asymptotic level.
pub fn transfer_matrix_transmission(
    pot: &PiecewiseConstantPotential,
    params: &PhysicalParams,
    e: f64,
) -> Result<TransferResult> {
    if params.is_classical() {
        return Err(Error::Domain("transfer matrices need hbar > 0".into()));
    }
    let c = pot.asymptote();
    if !(e > c) {
        return Err(Error::Domain(format!(
            "energy {e} must exceed the asymptotic level {c}"
        )));
    }
    let scale = e.abs().max(1.0);
    let mut e = e;
    if pot.values().iter().any(|&v| (e - v).abs() < 1e-12 * scale) {
        e += 1e-12 * scale;
    }
    let (m, hbar) = (params.m(), params.hbar());
    let wavenumber = |v: f64| Complex64::new(2.0 * m * (e - v), 0.0).sqrt() / hbar;
    let bps = pot.breakpoints();
    let vals = pot.values();
    let n = vals.len() - 1;

    // Region j carries A_j e^{ik_j(x-o_j)} + B_j e^{-ik_j(x-o_j)} with origin
    // o_j at its left edge (region 0 uses the first breakpoint). Start from a
    // pure outgoing wave on the right and match backwards.
    let origin = |j: usize| {
        if j == 0 {
            bps.first().copied().unwrap_or(0.0)
        } else {
            bps[j - 1]
        }
    };
    let mut amp = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let mut log_scale = 0.0f64;
    let i = Complex64::i();
    for j in (0..n).rev() {
        let kr = wavenumber(vals[j + 1]);
        let kl = wavenumber(vals[j]);
        let x = bps[j];
        let s = amp.0 + amp.1;
        let d = i * kr * (amp.0 - amp.1);
        let ratio = d / (i * kl);
        let phase = kl * (x - origin(j));
        let a = (-i * phase).exp() * (s + ratio) * 0.5;
        let b = (i * phase).exp() * (s - ratio) * 0.5;
        let norm = a.norm().max(b.norm());
        if !(norm.is_finite() && norm > 0.0) {
            return Ok(TransferResult {
                t: 0.0,
                underflow: true,
            });
        }
        amp = (a / norm, b / norm);
        log_scale += norm.ln();
    }
    let k_in = wavenumber(vals[0]).re;
    let k_out = wavenumber(vals[n]).re;
    let log_t = (k_out / k_in).ln() - 2.0 * (log_scale + amp.0.norm().ln());
    let t = log_t.exp();
    Ok(TransferResult {
        t: t.clamp(0.0, 1.0),
        underflow: t == 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// `t(H)` of the effective-potential model.
    Effective,
    /// `t^Q(Q)` of the quantum mixture.
    Quantum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub param: f64,
    pub t: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionCurve {
    pub kind: CurveKind,
    pub points: Vec<CurvePoint>,
}

impl TransmissionCurve {
    /// First parameter at which `t` reaches `level`, by linear interpolation.
    pub fn crossing(&self, level: f64) -> Option<f64> {
        self.points.windows(2).find_map(|w| {
            let (a, b) = (w[0], w[1]);
            if (a.t - level) * (b.t - level) <= 0.0 && a.t != b.t {
                Some(a.param + (level - a.t) * (b.param - a.param) / (b.t - a.t))
            } else {
                None
            }
        })
    }

    pub fn is_monotone_increasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].t >= w[0].t)
    }

    /// CSV with columns `param,t,r`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let name = match self.kind {
            CurveKind::Effective => "H",
            CurveKind::Quantum => "Q",
        };
        writeln!(out, "# param = {name}")?;
        writeln!(out, "param,t,r")?;
        for p in &self.points {
            writeln!(out, "{:.11e},{:.11e},{:.11e}", p.param, p.t, p.r)?;
        }
        Ok(())
    }
}

/// Sample `t` and `r` on a uniform grid of `H` or `Q` over `[lo, hi]`.
pub fn coefficient_curve(
    kind: CurveKind,
    range: (f64, f64),
    n_points: usize,
) -> Result<TransmissionCurve> {
    if n_points < 2 {
        return Err(Error::InvalidParameter(
            "a curve needs at least two points".into(),
        ));
    }
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && hi > lo && lo >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bad parameter range [{lo}, {hi}]"
        )));
    }
    let points = (0..n_points)
        .into_par_iter()
        .map(|i| {
            let param = lo + (hi - lo) * i as f64 / (n_points - 1) as f64;
            let t = match kind {
                CurveKind::Effective => effective_t_of_h(param),
                CurveKind::Quantum if param == 0.0 => 0.0,
                CurveKind::Quantum => quantum_t_mixture(param)?,
            };
            let pair = CoefficientPair::from_transmission(t);
            Ok(CurvePoint {
                param,
                t: pair.t(),
                r: pair.r(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransmissionCurve { kind, points })
}

/// Root of `t(H) = 1/2`: `H = √2 / erf⁻¹(1/2)`, found by bisection.
pub fn effective_half_transmission_h() -> f64 {
    let (mut lo, mut hi) = (1.0, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if effective_t_of_h(mid) < 0.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
