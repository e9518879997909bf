//! Acceptance criteria, one line per criterion.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eqpot::dynamics::{
    classify_traversal, integrate_hamiltonian, integrate_newtonian, StepControl, Traversal,
};
use eqpot::figures::{compute_figure, emit_all, FigureSpec};
use eqpot::kernel::{effective_potential, expanded_effective_potential};
use eqpot::lowmomentum::{gaussian_smooth, gaussian_smooth_derivative};
use eqpot::transmission::{
    beam_energies, coefficient_curve, effective_coefficients, effective_t_of_h, quantum_t_mixture,
    quantum_t_mixture_k_space, quantum_t_single, random_beam_energies, simulated_transmission,
    transfer_matrix_transmission, CurveKind, MixtureEnsemble,
};
use eqpot::{
    ClassicalPotential, LowMomentumModel, PhysicalParams, QuadratureConfig, SquareBarrier,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn model(hbar: f64) -> LowMomentumModel {
    LowMomentumModel::new(PhysicalParams::reference(hbar), SquareBarrier::reference()).unwrap()
}

fn effective_half_point() -> Outcome {
    let t = effective_t_of_h(2.97);
    let curve =
        coefficient_curve(CurveKind::Effective, (0.02, 10.0), 500).map_err(|e| e.to_string())?;
    let root = curve.crossing(0.5).ok_or("no crossing")?;
    check(
        (t - 0.5).abs() <= 0.005 && (root - 2.965).abs() <= 0.01,
        format!("t(2.97) = {t:.6}, crossing at H = {root:.5}"),
    )
}

fn mixture_half_point() -> Outcome {
    let t = quantum_t_mixture(1.75).map_err(|e| e.to_string())?;
    check((t - 0.5).abs() <= 0.01, format!("t^Q(1.75) = {t:.6}"))
}

fn closed_forms_vs_quadrature() -> Outcome {
    // Wide tails and a tiny absolute floor so that far-tail values are
    // compared in relative terms too.
    let cfg = QuadratureConfig::default()
        .with_rel_tol(1e-12)
        .with_abs_tol(1e-300)
        .with_tail_sigmas(40.0);
    let pot = ClassicalPotential::from(SquareBarrier::reference());
    let mut worst = (0.0f64, 0.0f64);
    for hbar in [1.0, 3.0, 6.0, 10.0, 30.0] {
        let md = model(hbar);
        let sigma = md.smoothing_sigma();
        let c = md.params().curvature_coupling();
        for i in 0..101 {
            let q = -1.5 + 3.0 * i as f64 / 100.0;
            let v = md.smoothed_potential(q).unwrap();
            let v_num = gaussian_smooth(&pot, sigma, q, &cfg).map_err(|e| e.to_string())?;
            worst.0 = worst.0.max((v - v_num).abs() / v.abs());
            let w = md.inverse_mass(q).unwrap();
            let d2 =
                gaussian_smooth_derivative(&pot, sigma, q, 2, &cfg).map_err(|e| e.to_string())?;
            worst.1 = worst.1.max((w - (1.0 - c * d2)).abs() / w);
        }
    }
    check(
        worst.0 <= 1e-8 && worst.1 <= 1e-8,
        format!(
            "max relative deviation: V {:.2e}, 1/M {:.2e}",
            worst.0, worst.1
        ),
    )
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = xs.iter().zip(ys).map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn expansion_order() -> Outcome {
    let params = PhysicalParams::reference(3.0);
    let pot = ClassicalPotential::from(SquareBarrier::reference());
    let cfg = QuadratureConfig::default().with_rel_tol(1e-13);
    let unit = (params.m() / params.beta()).sqrt();
    let ps: Vec<f64> = (0..8)
        .map(|i| unit * 0.05 * 8f64.powf(i as f64 / 7.0))
        .collect();
    let mut slopes = Vec::new();
    for q in [0.0, 0.5, 1.0] {
        let gaps: Vec<f64> = ps
            .iter()
            .map(|&p| {
                let full = effective_potential(&params, &pot, q, p, &cfg)?;
                let approx = expanded_effective_potential(&params, &pot, q, p, &cfg)?;
                Ok((full - approx).abs())
            })
            .collect::<eqpot::Result<_>>()
            .map_err(|e| e.to_string())?;
        slopes.push(slope(&ps, &gaps));
    }
    check(
        slopes.iter().all(|s| (s - 4.0).abs() <= 0.3),
        format!(
            "slopes at q = 0, L, 2L: {:.3}, {:.3}, {:.3}",
            slopes[0], slopes[1], slopes[2]
        ),
    )
}

fn dynamics_conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ctrl = StepControl::sampled(0.25);
    let (mut drift, mut gap) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let hbar = rng.gen_range(1.0..6.0);
        let q0 = rng.gen_range(-3.0..-1.0);
        let p0 = rng.gen_range(0.3..1.8);
        let md = model(hbar);
        let ham = integrate_hamiltonian(&md, q0, p0, 10.0, &ctrl).map_err(|e| e.to_string())?;
        let v0 = p0 * md.inverse_mass(q0).unwrap();
        let newt = integrate_newtonian(&md, q0, v0, ham.energy0, 10.0, &ctrl)
            .map_err(|e| e.to_string())?;
        drift = drift.max(ham.max_energy_drift).max(newt.max_energy_drift);
        if ham.samples.len() != newt.samples.len() {
            return Err("sample grids differ".into());
        }
        for (a, b) in ham.samples.iter().zip(&newt.samples) {
            gap = gap.max((a.q - b.q).abs());
        }
    }
    check(
        drift < 1e-9 && gap <= 1e-8,
        format!("max energy drift {drift:.2e}, max |q_H - q_N| {gap:.2e}"),
    )
}

fn transport_cross_validation() -> Outcome {
    let ctrl = StepControl::default();
    let n = 200;
    let mut parts = Vec::new();
    let mut ok = true;
    for (i, hbar) in [2.0, 4.0, 6.0].into_iter().enumerate() {
        let md = model(hbar);
        let t = effective_coefficients(&md).unwrap().t();
        let random =
            simulated_transmission(&md, &random_beam_energies(1.0, n, 100 + i as u64), &ctrl)
                .map_err(|e| e.to_string())?;
        let even = simulated_transmission(&md, &beam_energies(1.0, n), &ctrl)
            .map_err(|e| e.to_string())?;
        let sigma = (t * (1.0 - t) / n as f64).sqrt();
        ok &= (random - t).abs() <= 3.0 * sigma && (even - t).abs() <= 1.0 / n as f64;
        parts.push(format!(
            "hbar {hbar}: t {t:.4}, random {random:.3}, even {even:.3}"
        ));
    }
    check(ok, parts.join("; "))
}

fn quantum_oracles() -> Outcome {
    let barrier = SquareBarrier::reference();
    let params = PhysicalParams::reference(1.0);
    let k0 = MixtureEnsemble::new(&params, &barrier).unwrap().k0();
    let piecewise = barrier.to_piecewise();
    let mut single = 0.0f64;
    for i in 1..=50 {
        let k = k0 * i as f64 / 51.0;
        let e = k * k / 2.0;
        let tm = transfer_matrix_transmission(&piecewise, &params, e).map_err(|e| e.to_string())?;
        single = single.max((tm.t - quantum_t_single(&barrier, &params, k).unwrap()).abs());
    }
    let cfg = QuadratureConfig::default().with_rel_tol(1e-12);
    let mut mixture = 0.0f64;
    for q in [0.5, 1.0, 2.0, 4.0] {
        // Chosen so that 1 / (k0 L) = q.
        let p = PhysicalParams::reference(q * barrier.half_width() * 2f64.sqrt());
        let direct = quantum_t_mixture_k_space(&barrier, &p, &cfg).map_err(|e| e.to_string())?;
        mixture = mixture.max((direct - quantum_t_mixture(q).unwrap()).abs());
    }
    check(
        single <= 1e-10 && mixture <= 1e-8,
        format!("eigenstate vs transfer matrix {single:.2e}, mixture vs wavenumber average {mixture:.2e}"),
    )
}

fn figure_regression() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    emit_all(a.path()).map_err(|e| e.to_string())?;
    emit_all(b.path()).map_err(|e| e.to_string())?;
    for id in 1..=4 {
        let name = format!("fig{id}.csv");
        let x = std::fs::read(a.path().join(&name)).unwrap();
        let y = std::fs::read(b.path().join(&name)).unwrap();
        if x != y {
            return Err(format!("{name} differs between runs"));
        }
    }
    let fig = |id| compute_figure(&FigureSpec::reference(id).unwrap()).unwrap();
    let mut notes = Vec::new();
    let mut ok = true;

    let f1 = fig(1);
    let q = f1.column("q").unwrap();
    for label in ["M_hbar10", "M_hbar30"] {
        let m = f1.column(label).unwrap();
        let centre = m[q.iter().position(|&x| x == 0.0).unwrap()];
        let (i_peak, peak) = m
            .iter()
            .enumerate()
            .fold((0, 0.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
        let edge = (m[0] - 1.0).abs().max((m[m.len() - 1] - 1.0).abs());
        ok &= centre < 1.0 && peak > 1.0 && q[i_peak].abs() > 0.5 && edge < 1e-6;
        notes.push(format!(
            "{label}: M(0) {centre:.4}, peak {peak:.5} at |q| {:.2}",
            q[i_peak].abs()
        ));
    }

    let f2 = fig(2);
    let q = f2.column("q").unwrap();
    let max = |c: &str| f2.column(c).unwrap().into_iter().fold(f64::MIN, f64::max);
    let (h0, h3, h6) = (max("VQ_h0"), max("VQ_h3"), max("VQ_h6"));
    let (v3, v6) = (f2.column("VQ_h3").unwrap(), f2.column("VQ_h6").unwrap());
    let centre_order = q
        .iter()
        .enumerate()
        .filter(|(_, q)| q.abs() < 0.25)
        .all(|(i, _)| v6[i] <= v3[i]);
    ok &= h0 > h3 && h3 > h6 && centre_order;
    notes.push(format!("max V^Q {h0:.3} > {h3:.3} > {h6:.3}"));

    for (id, t_col) in [(3, "t"), (4, "tQ")] {
        let t = fig(id).column(t_col).unwrap();
        ok &= t.windows(2).all(|w| w[1] >= w[0]);
    }
    let f3 = fig(3);
    let h = f3.column("H").unwrap();
    let i = (0..h.len())
        .min_by(|&a, &b| (h[a] - 2.97).abs().total_cmp(&(h[b] - 2.97).abs()))
        .unwrap();
    let t_near = f3.column("t").unwrap()[i];
    ok &= (t_near - 0.5).abs() <= 0.01;
    notes.push(format!("t(H = {:.2}) = {t_near:.4}, curves monotone", h[i]));
    check(ok, format!("byte-identical; {}", notes.join("; ")))
}

fn classical_limit() -> Outcome {
    let barrier = SquareBarrier::reference();
    let exact = model(0.0);
    let tiny = model(1e-6);
    let mut vq0 = 0.0f64;
    let mut vq_tiny = 0.0f64;
    for i in 0..=400 {
        let q = -2.0 + 0.01 * i as f64;
        for eps in [0.1, 0.25, 0.9, 2.0] {
            vq0 = vq0.max((exact.vq_potential(q, eps).unwrap() - barrier.eval(q)).abs());
            if (q.abs() - 0.5).abs() > 1e-4 {
                vq_tiny = vq_tiny.max((tiny.vq_potential(q, eps).unwrap() - barrier.eval(q)).abs());
            }
        }
    }
    let t0 = effective_coefficients(&exact).unwrap().t();
    let t_tiny = effective_coefficients(&tiny).unwrap().t();
    let ctrl = StepControl::default();
    let mut outcomes_agree = true;
    for eps in [0.3, 0.95, 1.05, 1.8] {
        let expected = if eps > 1.0 {
            Traversal::Surpassed
        } else {
            Traversal::Reflected
        };
        for md in [&exact, &tiny] {
            let p = classify_traversal(md, eps, &ctrl).map_err(|e| e.to_string())?;
            outcomes_agree &= p.traversal == expected;
        }
    }
    let mut path_gap = 0.0f64;
    for (q0, p0) in [(-2.0, 0.8), (-2.0, 1.6)] {
        let c = StepControl::sampled(0.5);
        let a = integrate_hamiltonian(&exact, q0, p0, 5.0, &c).map_err(|e| e.to_string())?;
        let b = integrate_hamiltonian(&tiny, q0, p0, 5.0, &c).map_err(|e| e.to_string())?;
        for (x, y) in a.samples.iter().zip(&b.samples) {
            path_gap = path_gap.max((x.q - y.q).abs());
        }
    }
    check(
        vq0 == 0.0 && vq_tiny <= 1e-12 && t0 == 0.0 && t_tiny <= 1e-12 && outcomes_agree && path_gap <= 1e-4,
        format!(
            "hbar 0: |V^Q - V^C| {vq0:.1e}, t {t0}; hbar 1e-6: |V^Q - V^C| {vq_tiny:.1e} off the edges, t {t_tiny:.1e}, path gap {path_gap:.1e}"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("effective t at H = 2.97", effective_half_point),
        ("mixture t at Q = 1.75", mixture_half_point),
        ("closed forms vs quadrature", closed_forms_vs_quadrature),
        ("expansion order p^4", expansion_order),
        (
            "dynamics conservation and equivalence",
            dynamics_conservation,
        ),
        (
            "trajectory transport vs effective t",
            transport_cross_validation,
        ),
        ("quantum oracle equivalence", quantum_oracles),
        ("figure regression", figure_regression),
        ("classical limit", classical_limit),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {}: PASS  {name} ({secs:.2} s): {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2} s): {d}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
