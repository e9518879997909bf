//! Classical motion in the low-momentum theory.
//!
//! Hamiltonian form, with `1/M` written as `w(q)`:
//!
//! ```text
//! dq/dt = w p,   dp/dt = -V'(q) - w'(q) p² / 2
//! ```
//!
//! Newtonian form on the level set `ε`, with constant mass `m`:
//!
//! ```text
//! d²q/dt² = -w'(q) (V(q) - ε) - w(q) V'(q) = -(1/m) dV^Q/dq
//! ```
//!
//! Both are integrated with an embedded Dormand-Prince 5(4) pair. At `ħ = 0`
//! a piecewise-constant potential gives ballistic motion with instantaneous
//! transmission or reflection at each jump, which is propagated exactly.

use std::io::Write;

use crate::error::{Error, Result};
use crate::lowmomentum::LowMomentumModel;
use crate::potential::{ClassicalPotential, PiecewiseConstantPotential};

#[derive(Debug, Clone, PartialEq)]
pub struct StepControl {
    /// Relative and absolute tolerance per step.
    pub tolerance: f64,
    pub initial_step: Option<f64>,
    pub min_step: f64,
    pub max_steps: usize,
    /// Record samples on this uniform time grid instead of at every step.
    pub sample_interval: Option<f64>,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            tolerance: 1e-11,
            initial_step: None,
            min_step: 1e-14,
            max_steps: 2_000_000,
            sample_interval: None,
        }
    }
}

impl StepControl {
    pub fn sampled(dt: f64) -> Self {
        StepControl {
            sample_interval: Some(dt),
            ..StepControl::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub q: f64,
    pub p: f64,
    pub energy_drift: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub energy0: f64,
    pub max_energy_drift: f64,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory has at least one sample")
    }

    pub fn positions(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.q).collect()
    }

    /// CSV with columns `t,q,p,energy_drift`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,q,p,energy_drift")?;
        for s in &self.samples {
            writeln!(
                out,
                "{:.11e},{:.11e},{:.11e},{:.11e}",
                s.t, s.q, s.p, s.energy_drift
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    Surpassed,
    Reflected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Passage {
    pub traversal: Traversal,
    pub exit_time: f64,
    pub final_momentum: f64,
}

/// `p² / 2M(q) + V(q)`.
pub fn hamiltonian(model: &LowMomentumModel, q: f64, p: f64) -> Result<f64> {
    Ok(0.5 * p * p * model.inverse_mass(q)? + model.smoothed_potential(q)?)
}

/// Largest distance one step may cover: a quarter of the narrowest feature,
/// which is the smoothing width or the closest pair of kinks, whichever is
/// larger. Without it a long step can hop over a nearly sharp barrier.
fn max_displacement(model: &LowMomentumModel) -> f64 {
    let kinks = model.potential().kinks();
    let spacing = kinks
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|d| *d > 0.0)
        .fold(f64::INFINITY, f64::min);
    let width = model
        .smoothing_sigma()
        .max(if spacing.is_finite() { spacing } else { 0.0 });
    if width > 0.0 {
        0.25 * width
    } else {
        f64::INFINITY
    }
}

fn drift_floor(model: &LowMomentumModel) -> f64 {
    model.potential().energy_scale()
}

fn relative_drift(e: f64, e0: f64, floor: f64) -> f64 {
    (e - e0).abs() / e0.abs().max(floor)
}

pub fn integrate_hamiltonian(
    model: &LowMomentumModel,
    q0: f64,
    p0: f64,
    t_end: f64,
    ctrl: &StepControl,
) -> Result<Trajectory> {
    check_time(t_end)?;
    if model.params().is_classical() {
        let pot = classical_piecewise(model)?;
        let m = model.params().m();
        return Ok(ballistic_trajectory(&pot, m, q0, p0 / m, t_end, ctrl));
    }
    let system = HamiltonSystem { model };
    run(&system, [q0, p0], t_end, ctrl, |_| None).map(|(traj, _)| traj)
}

/// Integrate `m q'' = -dV^Q/dq` from position `q0` with velocity `v0` on the
/// level set `eps`. The reported momentum is `M(q) dq/dt`.
pub fn integrate_newtonian(
    model: &LowMomentumModel,
    q0: f64,
    v0: f64,
    eps: f64,
    t_end: f64,
    ctrl: &StepControl,
) -> Result<Trajectory> {
    check_time(t_end)?;
    let inv_mass = model.inverse_mass(q0)?;
    let actual = 0.5 * v0 * v0 / inv_mass + model.smoothed_potential(q0)?;
    if (actual - eps).abs() > 1e-10 * eps.abs().max(drift_floor(model)) {
        return Err(Error::InconsistentEnergy {
            expected: eps,
            actual,
        });
    }
    if model.params().is_classical() {
        let pot = classical_piecewise(model)?;
        return Ok(ballistic_trajectory(
            &pot,
            model.params().m(),
            q0,
            v0,
            t_end,
            ctrl,
        ));
    }
    let system = NewtonSystem { model, eps };
    run(&system, [q0, v0], t_end, ctrl, |_| None).map(|(traj, _)| traj)
}

/// Starting point for a particle of energy `eps` incoming from the left:
/// one half-extent outside the exit radius.
pub fn launch_state(model: &LowMomentumModel, eps: f64) -> Result<(f64, f64)> {
    let (lo, hi) = model.potential().support();
    let half = if hi > lo { 0.5 * (hi - lo) } else { 1.0 };
    let q0 = model.center() - model.exit_radius() - half;
    let v = model.smoothed_potential(q0)?;
    if !(eps > v) {
        return Err(Error::Domain(format!(
            "energy {eps} does not exceed the asymptotic level {v}"
        )));
    }
    let p0 = (2.0 * (eps - v) / model.inverse_mass(q0)?).sqrt();
    Ok((q0, p0))
}

/// Launch a particle of energy `eps` from the left and decide whether it
/// surpasses the effective barrier.
///
/// A particle exactly at the threshold approaches the barrier top forever; it
/// is reported as reflected.
pub fn classify_traversal(
    model: &LowMomentumModel,
    eps: f64,
    ctrl: &StepControl,
) -> Result<Passage> {
    let (q0, p0) = launch_state(model, eps)?;
    let exit = model.exit_radius();
    let (left, right) = (model.center() - exit, model.center() + exit);
    let speed = p0 * model.inverse_mass(q0)?;
    let t_end = 50.0 * (2.0 * exit) / speed;

    let outcome = if model.params().is_classical() {
        let pot = classical_piecewise(model)?;
        let m = model.params().m();
        ballistic_passage(&pot, m, q0, p0 / m, left, right, t_end)
    } else {
        let ctrl = StepControl {
            sample_interval: None,
            ..ctrl.clone()
        };
        let system = HamiltonSystem { model };
        let stop = |s: &Sample| {
            if s.q > right && s.p > 0.0 {
                Some(Traversal::Surpassed)
            } else if s.q < left && s.p < 0.0 {
                Some(Traversal::Reflected)
            } else {
                None
            }
        };
        let (traj, hit) = run(&system, [q0, p0], t_end, &ctrl, stop)?;
        hit.map(|traversal| Passage {
            traversal,
            exit_time: traj.last().t,
            final_momentum: traj.last().p,
        })
    };

    match outcome {
        Some(passage) => Ok(passage),
        None => {
            let threshold = model.tunneling_threshold()?;
            if (eps - threshold).abs() <= 1e-12 * model.potential().energy_scale() {
                Ok(Passage {
                    traversal: Traversal::Reflected,
                    exit_time: t_end,
                    final_momentum: 0.0,
                })
            } else {
                Err(Error::DidNotResolve { t_end })
            }
        }
    }
}

fn check_time(t_end: f64) -> Result<()> {
    if t_end.is_finite() && t_end > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "t_end must be positive, got {t_end}"
        )))
    }
}

fn classical_piecewise(model: &LowMomentumModel) -> Result<PiecewiseConstantPotential> {
    match model.potential() {
        ClassicalPotential::Tabulated(_) => Err(Error::Unsupported(
            "classical (hbar = 0) dynamics needs a piecewise-constant potential".into(),
        )),
        pot => Ok(pot.as_piecewise().expect("square and piecewise potentials")),
    }
}

trait System {
    fn rhs(&self, y: [f64; 2]) -> Result<[f64; 2]>;
    fn momentum(&self, y: [f64; 2]) -> Result<f64>;
    fn energy(&self, y: [f64; 2]) -> Result<f64>;
    fn drift_floor(&self) -> f64;
    fn max_displacement(&self) -> f64;
}

struct HamiltonSystem<'a> {
    model: &'a LowMomentumModel,
}

impl System for HamiltonSystem<'_> {
    fn rhs(&self, y: [f64; 2]) -> Result<[f64; 2]> {
        let [q, p] = y;
        let profile = self.model.smoothed_profile(q)?;
        let (w, dw) = self.model.inverse_mass_with_slope(&profile, q)?;
        Ok([w * p, -profile.dv - 0.5 * dw * p * p])
    }

    fn momentum(&self, y: [f64; 2]) -> Result<f64> {
        Ok(y[1])
    }

    fn energy(&self, y: [f64; 2]) -> Result<f64> {
        hamiltonian(self.model, y[0], y[1])
    }

    fn drift_floor(&self) -> f64 {
        drift_floor(self.model)
    }

    fn max_displacement(&self) -> f64 {
        max_displacement(self.model)
    }
}

struct NewtonSystem<'a> {
    model: &'a LowMomentumModel,
    eps: f64,
}

impl System for NewtonSystem<'_> {
    fn rhs(&self, y: [f64; 2]) -> Result<[f64; 2]> {
        let [q, v] = y;
        let profile = self.model.smoothed_profile(q)?;
        let (w, dw) = self.model.inverse_mass_with_slope(&profile, q)?;
        Ok([v, -dw * (profile.v - self.eps) - w * profile.dv])
    }

    fn momentum(&self, y: [f64; 2]) -> Result<f64> {
        Ok(y[1] / self.model.inverse_mass(y[0])?)
    }

    fn energy(&self, y: [f64; 2]) -> Result<f64> {
        hamiltonian(self.model, y[0], self.momentum(y)?)
    }

    fn drift_floor(&self) -> f64 {
        drift_floor(self.model)
    }

    fn max_displacement(&self) -> f64 {
        max_displacement(self.model)
    }
}

// Dormand-Prince 5(4) tableau; the systems are autonomous so the nodes are
// not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn run<S, F>(
    system: &S,
    y0: [f64; 2],
    t_end: f64,
    ctrl: &StepControl,
    stop: F,
) -> Result<(Trajectory, Option<Traversal>)>
where
    S: System,
    F: Fn(&Sample) -> Option<Traversal>,
{
    let tol = ctrl.tolerance;
    let floor = system.drift_floor();
    let energy0 = system.energy(y0)?;
    let mut samples = vec![Sample {
        t: 0.0,
        q: y0[0],
        p: system.momentum(y0)?,
        energy_drift: 0.0,
    }];
    let mut max_drift: f64 = 0.0;
    let mut energy_prev = energy0;
    let energy_norm = energy0.abs().max(floor);

    let mut t = 0.0;
    let mut y = y0;
    let mut k1 = system.rhs(y)?;
    let mut h = ctrl.initial_step.unwrap_or_else(|| {
        let scale = y.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1.0);
        let rate = k1.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1e-12);
        (1e-3 * scale / rate).min(t_end)
    });
    let reach = system.max_displacement();
    let mut next_sample = ctrl.sample_interval.map(|dt| (dt, 1usize));
    let mut steps = 0usize;

    while t < t_end {
        steps += 1;
        if steps > ctrl.max_steps {
            return Err(Error::StepFailure { t, h });
        }
        let mut target = t_end;
        if let Some((dt, n)) = next_sample {
            target = target.min(dt * n as f64);
        }
        let speed = k1[0].abs();
        if speed > 0.0 {
            h = h.min(reach / speed);
        }
        let clipped = h >= target - t;
        let step = if clipped { target - t } else { h };

        let mut k = [[0.0; 2]; 7];
        k[0] = k1;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                for d in 0..2 {
                    ys[d] += step * A[s][j] * kj[d];
                }
            }
            k[s] = system.rhs(ys)?;
        }
        let mut y_new = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            for d in 0..2 {
                y_new[d] += step * A[6][j] * kj[d];
            }
        }
        let mut err: f64 = 0.0;
        for d in 0..2 {
            let e: f64 = (0..7).map(|j| E[j] * k[j][d]).sum::<f64>() * step;
            let sc = tol + tol * y[d].abs().max(y_new[d].abs());
            err = err.max(e.abs() / sc);
        }

        // The error estimate only sees the stages. A feature much narrower than
        // the step (a nearly sharp barrier edge) can fall between them, but
        // it still shows up as a jump in the conserved energy.
        let mut energy_new = energy_prev;
        if err <= 1.0 {
            energy_new = system.energy(y_new)?;
            if (energy_new - energy_prev).abs() > 50.0 * tol * energy_norm {
                err = 1e3;
            }
        }

        if err <= 1.0 {
            t = if clipped { target } else { t + step };
            y = y_new;
            k1 = k[6];
            energy_prev = energy_new;
            let p = system.momentum(y)?;
            let drift = relative_drift(energy_new, energy0, floor);
            max_drift = max_drift.max(drift);
            let sample = Sample {
                t,
                q: y[0],
                p,
                energy_drift: drift,
            };
            let on_grid = match next_sample {
                Some((dt, n)) if clipped && target == dt * n as f64 => {
                    next_sample = Some((dt, n + 1));
                    true
                }
                Some(_) => t >= t_end,
                None => true,
            };
            let hit = stop(&sample);
            if on_grid || hit.is_some() {
                samples.push(sample);
            }
            if hit.is_some() {
                return Ok((
                    Trajectory {
                        samples,
                        energy0,
                        max_energy_drift: max_drift,
                    },
                    hit,
                ));
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            // A step shortened to land on a sample time does not shrink the
            // proposal for the next one.
            h = if clipped {
                h.max(step * factor)
            } else {
                step * factor
            };
        } else {
            h = step * (0.9 * err.powf(-0.2)).max(0.2);
            if h < ctrl.min_step {
                return Err(Error::StepFailure { t, h });
            }
        }
    }
    Ok((
        Trajectory {
            samples,
            energy0,
            max_energy_drift: max_drift,
        },
        None,
    ))
}

/// Exact motion at `ħ = 0` through a piecewise-constant potential.
struct Ballistic<'a> {
    pot: &'a PiecewiseConstantPotential,
    m: f64,
    energy: f64,
    t: f64,
    q: f64,
    v: f64,
    region: usize,
}

impl<'a> Ballistic<'a> {
    fn new(pot: &'a PiecewiseConstantPotential, m: f64, q0: f64, v0: f64) -> Self {
        let bps = pot.breakpoints();
        let mut region = bps.partition_point(|&b| b <= q0);
        if v0 < 0.0 && region > 0 && bps[region - 1] == q0 {
            region -= 1;
        }
        let energy = 0.5 * m * v0 * v0 + pot.values()[region];
        Ballistic {
            pot,
            m,
            energy,
            t: 0.0,
            q: q0,
            v: v0,
            region,
        }
    }

    fn next_event(&self) -> Option<(f64, usize, f64)> {
        let bps = self.pot.breakpoints();
        if self.v > 0.0 && self.region < bps.len() {
            let b = bps[self.region];
            Some((self.t + (b - self.q) / self.v, self.region + 1, b))
        } else if self.v < 0.0 && self.region > 0 {
            let b = bps[self.region - 1];
            Some((self.t + (b - self.q) / self.v, self.region - 1, b))
        } else {
            None
        }
    }

    /// Process every jump up to time `until`; returns whether one occurred.
    fn step_event(&mut self, until: f64) -> bool {
        match self.next_event() {
            Some((te, next, b)) if te <= until => {
                self.t = te;
                self.q = b;
                let level = self.pot.values()[next];
                if self.energy > level {
                    let speed = (2.0 * (self.energy - level) / self.m).sqrt();
                    self.v = speed * self.v.signum();
                    self.region = next;
                } else {
                    self.v = -self.v;
                }
                true
            }
            _ => false,
        }
    }

    fn position_at(&self, t: f64) -> f64 {
        self.q + self.v * (t - self.t)
    }
}

fn ballistic_trajectory(
    pot: &PiecewiseConstantPotential,
    m: f64,
    q0: f64,
    v0: f64,
    t_end: f64,
    ctrl: &StepControl,
) -> Trajectory {
    let mut b = Ballistic::new(pot, m, q0, v0);
    let energy0 = b.energy;
    let mut samples = vec![Sample {
        t: 0.0,
        q: q0,
        p: m * v0,
        energy_drift: 0.0,
    }];
    let record = |b: &Ballistic, t: f64| Sample {
        t,
        q: b.position_at(t),
        p: b.m * b.v,
        energy_drift: 0.0,
    };
    match ctrl.sample_interval {
        Some(dt) => {
            let mut n = 1usize;
            loop {
                let t = (dt * n as f64).min(t_end);
                while b.step_event(t) {}
                samples.push(record(&b, t));
                if t >= t_end {
                    break;
                }
                n += 1;
            }
        }
        None => {
            while b.step_event(t_end) {
                samples.push(record(&b, b.t));
            }
            samples.push(record(&b, t_end));
        }
    }
    Trajectory {
        samples,
        energy0,
        max_energy_drift: 0.0,
    }
}

fn ballistic_passage(
    pot: &PiecewiseConstantPotential,
    m: f64,
    q0: f64,
    v0: f64,
    left: f64,
    right: f64,
    t_end: f64,
) -> Option<Passage> {
    let mut b = Ballistic::new(pot, m, q0, v0);
    while b.step_event(t_end) {}
    // Free flight from the last jump to the exit plane.
    let (target, traversal) = if b.v > 0.0 {
        (right, Traversal::Surpassed)
    } else if b.v < 0.0 {
        (left, Traversal::Reflected)
    } else {
        return None;
    };
    let exit_time = b.t + (target - b.q) / b.v;
    (exit_time <= t_end).then_some(Passage {
        traversal,
        exit_time,
        final_momentum: m * b.v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::PhysicalParams;
    use crate::potential::SquareBarrier;

    fn model(hbar: f64) -> LowMomentumModel {
        LowMomentumModel::new(PhysicalParams::reference(hbar), SquareBarrier::reference()).unwrap()
    }

    #[test]
    fn hamiltonian_far_field() {
        let md = model(3.0);
        assert!(hamiltonian(&md, 40.0, 0.0).unwrap().abs() < 1e-15);
        let e = hamiltonian(&md, -5.0, 0.5f64.sqrt()).unwrap();
        assert!((e - 0.25).abs() < 1e-9);
    }

    #[test]
    fn hamiltonian_classical_limit() {
        let md = model(0.0);
        assert_eq!(hamiltonian(&md, 0.2, 1.0).unwrap(), 1.5);
        assert_eq!(hamiltonian(&md, 2.0, 1.0).unwrap(), 0.5);
    }

    #[test]
    fn free_motion_far_from_barrier() {
        let md = model(1.0);
        let traj = integrate_hamiltonian(&md, -40.0, 0.7, 10.0, &StepControl::default()).unwrap();
        for s in &traj.samples {
            assert!((s.q - (-40.0 + 0.7 * s.t)).abs() < 1e-9);
        }
    }

    #[test]
    fn sampled_grid_is_exact() {
        let md = model(3.0);
        let traj = integrate_hamiltonian(&md, -3.0, 1.0, 2.0, &StepControl::sampled(0.25)).unwrap();
        let times: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
        assert_eq!(times.len(), 9);
        for (i, t) in times.iter().enumerate() {
            assert_eq!(*t, 0.25 * i as f64);
        }
    }

    #[test]
    fn newtonian_rejects_inconsistent_energy() {
        let md = model(3.0);
        let err =
            integrate_newtonian(&md, -5.0, 1.0, 0.9, 1.0, &StepControl::default()).unwrap_err();
        assert!(matches!(err, Error::InconsistentEnergy { .. }));
    }

    #[test]
    fn ballistic_bounce_and_crossing() {
        let md = model(0.0);
        // Energy 0.5 < V0: bounce off q = -L at t = 1.
        let traj = integrate_hamiltonian(&md, -1.5, 1.0, 3.0, &StepControl::sampled(0.5)).unwrap();
        let q_at = |t: f64| traj.samples.iter().find(|s| s.t == t).unwrap().q;
        assert_eq!(q_at(0.5), -1.0);
        assert_eq!(q_at(1.0), -0.5);
        assert_eq!(q_at(2.0), -1.5);
        assert_eq!(traj.last().p, -1.0);
        // Energy 2 > V0: speed 2 outside, sqrt(2) inside the barrier.
        let traj = integrate_hamiltonian(&md, -1.5, 2.0, 2.0, &StepControl::default()).unwrap();
        let last = traj.last();
        let t_in = 0.5;
        let t_out = t_in + 1.0 / 2f64.sqrt();
        assert!((last.q - (0.5 + 2.0 * (2.0 - t_out))).abs() < 1e-14);
        assert_eq!(last.p, 2.0);
    }

    #[test]
    fn classical_tabulated_dynamics_is_unsupported() {
        let pot =
            crate::potential::TabulatedPotential::new(vec![-1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0])
                .unwrap();
        let md = LowMomentumModel::new(PhysicalParams::reference(0.0), pot).unwrap();
        assert!(matches!(
            integrate_hamiltonian(&md, -2.0, 1.0, 1.0, &StepControl::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn classify_classical_barrier() {
        let md = model(0.0);
        let ctrl = StepControl::default();
        assert_eq!(
            classify_traversal(&md, 0.99, &ctrl).unwrap().traversal,
            Traversal::Reflected
        );
        assert_eq!(
            classify_traversal(&md, 1.0, &ctrl).unwrap().traversal,
            Traversal::Reflected
        );
        assert_eq!(
            classify_traversal(&md, 1.01, &ctrl).unwrap().traversal,
            Traversal::Surpassed
        );
    }

    #[test]
    fn csv_export_columns() {
        let md = model(3.0);
        let traj = integrate_hamiltonian(&md, -3.0, 1.0, 0.5, &StepControl::sampled(0.25)).unwrap();
        let mut buf = Vec::new();
        traj.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,q,p,energy_drift"));
        assert_eq!(lines.count(), 3);
    }
}
