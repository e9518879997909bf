//! Adaptive Gauss-Kronrod integration.
//!
//! Integrals are refined globally: the interval with the largest error
//! estimate is bisected until the summed estimate meets the requested
//! tolerance. Nodes never touch interval endpoints, so integrands with a
//! removable singularity at an endpoint only need a finite limit there.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod 15-point nodes on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Hard cap on live intervals, independent of the depth limit.
const MAX_INTERVALS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Truncation multiplier `C` for Gaussian-damped integrals.
    pub tail_sigmas: f64,
    /// Maximum bisection depth of any interval.
    pub max_subdivisions: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            tail_sigmas: 8.0,
            max_subdivisions: 60,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if !(self.tail_sigmas >= 4.0) {
            return Err(Error::InvalidParameter(format!(
                "tail_sigmas must be at least 4, got {}",
                self.tail_sigmas
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter(
                "max_subdivisions must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_tail_sigmas(mut self, tail_sigmas: f64) -> Self {
        self.tail_sigmas = tail_sigmas;
        self
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // Rounding floor of this segment's estimate.
    noise: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    let mut fvals = [0.0; 15];
    fvals[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fvals[j] = f1;
        fvals[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fvals[j] - mean).abs() + (fvals[14 - j] - mean).abs());
    }
    let value = kronrod * half;
    let abs_value = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let noise = 50.0 * f64::EPSILON * abs_value;
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(noise);
    }
    Segment {
        a,
        b,
        value,
        error,
        noise,
        depth,
    }
}

/// Global adaptive integration over a partition `points[0] < points[1] < ...`.
/// Each initial panel is refined independently under one shared tolerance.
pub fn integrate_partition<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    if points.len() < 2 {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    if points.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 0usize;
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let seg = kronrod15(&f, w[0], w[1], 0);
        evaluations += 15;
        if !seg.value.is_finite() {
            return Err(Error::Domain(format!(
                "integrand is not finite on [{}, {}]",
                w[0], w[1]
            )));
        }
        heap.push(seg);
    }

    loop {
        let (value, error, noise) = heap
            .iter()
            .chain(frozen.iter())
            .fold((0.0, 0.0, 0.0), |(v, e, n), s| {
                (v + s.value, e + s.error, n + s.noise)
            });
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs()).max(noise);
        if error <= target {
            return Ok(Estimate {
                value,
                error,
                evaluations,
            });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::NonConvergence {
                value,
                error_estimate: error,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if worst.depth >= cfg.max_subdivisions
            || worst.error <= worst.noise
            || mid <= worst.a
            || mid >= worst.b
            || heap.len() + frozen.len() >= MAX_INTERVALS
        {
            frozen.push(worst);
            continue;
        }
        let left = kronrod15(&f, worst.a, mid, worst.depth + 1);
        let right = kronrod15(&f, mid, worst.b, worst.depth + 1);
        evaluations += 30;
        if !(left.value.is_finite() && right.value.is_finite()) {
            return Err(Error::Domain(format!(
                "integrand is not finite on [{}, {}]",
                worst.a, worst.b
            )));
        }
        heap.push(left);
        heap.push(right);
    }
}

pub fn integrate_adaptive_estimate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    if a > b {
        let est = integrate_partition(f, &[b, a], cfg)?;
        return Ok(Estimate {
            value: -est.value,
            ..est
        });
    }
    integrate_partition(f, &[a, b], cfg)
}

/// `∫_a^b f(x) dx` to `cfg.rel_tol`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    integrate_adaptive_estimate(f, a, b, cfg).map(|e| e.value)
}

/// Upper truncation point for an integrand damped by
/// `exp(-k^2 / (2 scale^2) + shift k)`: the peak `shift scale^2` plus
/// `tail_sigmas` widths.
pub fn damped_fourier_cutoff(damping_scale: f64, shift: f64, tail_sigmas: f64) -> f64 {
    shift * damping_scale * damping_scale + tail_sigmas * damping_scale
}

/// Integral over `k ∈ [0, k_max]` of a Gaussian-damped integrand.
///
/// `integrand` is the full function, damping included; `damping_scale` and
/// `shift` only set the truncation point. Even integrands over the whole line
/// must be doubled by the caller.
pub fn integrate_damped_fourier_estimate<F: Fn(f64) -> f64>(
    integrand: F,
    damping_scale: f64,
    shift: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if !(damping_scale > 0.0 && damping_scale.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "damping scale must be positive, got {damping_scale}"
        )));
    }
    if !(shift >= 0.0 && shift.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "shift must be non-negative, got {shift}"
        )));
    }
    cfg.validate()?;
    let k_max = damped_fourier_cutoff(damping_scale, shift, cfg.tail_sigmas);
    // One starting panel per damping width keeps oscillatory factors resolved
    // from the first pass.
    let panels = ((k_max / damping_scale).ceil() as usize).clamp(4, 512);
    let points: Vec<f64> = (0..=panels)
        .map(|i| k_max * i as f64 / panels as f64)
        .collect();
    integrate_partition(integrand, &points, cfg)
}

pub fn integrate_damped_fourier<F: Fn(f64) -> f64>(
    integrand: F,
    damping_scale: f64,
    shift: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    integrate_damped_fourier_estimate(integrand, damping_scale, shift, cfg).map(|e| e.value)
}
