use eqpot::dynamics::StepControl;
use eqpot::transmission::{
    beam_energies, coefficient_curve, effective_coefficients, quantum_t_single,
    quantum_t_single_printed, simulated_transmission, transfer_matrix_transmission, CurveKind,
    MixtureEnsemble,
};
use eqpot::{LowMomentumModel, PhysicalParams, PiecewiseConstantPotential, SquareBarrier};

#[test]
fn eigenstate_formula_matches_transfer_matrix() {
    for (v0, half, hbar) in [(1.0, 0.5, 1.0), (2.0, 1.0, 0.7), (0.5, 0.25, 2.5)] {
        let b = SquareBarrier::new(v0, half).unwrap();
        let p = PhysicalParams::reference(hbar);
        let k0 = MixtureEnsemble::new(&p, &b).unwrap().k0();
        for i in 1..50 {
            let k = k0 * i as f64 / 50.0;
            let e = hbar * hbar * k * k / 2.0;
            let tm = transfer_matrix_transmission(&b.to_piecewise(), &p, e).unwrap();
            let formula = quantum_t_single(&b, &p, k).unwrap();
            assert!(
                (tm.t - formula).abs() < 1e-10,
                "V0 {v0}, L {half}, hbar {hbar}, k {k}"
            );
            assert!((quantum_t_single_printed(&b, &p, k).unwrap() - formula).abs() < 1e-12);
        }
    }
}

#[test]
fn double_barrier_has_a_resonance() {
    let pot = PiecewiseConstantPotential::double_barrier(1.0, 0.5, 2.0).unwrap();
    let p = PhysicalParams::reference(0.5);
    let best = (1..2000)
        .map(|i| {
            transfer_matrix_transmission(&pot, &p, i as f64 / 2000.0)
                .unwrap()
                .t
        })
        .fold(0.0, f64::max);
    assert!(best > 0.99, "best sub-barrier transmission {best}");
}

#[test]
fn curves_cross_one_half_where_expected() {
    let eff = coefficient_curve(CurveKind::Effective, (0.02, 10.0), 500).unwrap();
    let quantum = coefficient_curve(CurveKind::Quantum, (0.02, 10.0), 500).unwrap();
    assert!((eff.crossing(0.5).unwrap() - 2.965).abs() < 0.01);
    assert!((quantum.crossing(0.5).unwrap() - 1.75).abs() < 0.02);
    assert!(eff.is_monotone_increasing() && quantum.is_monotone_increasing());
    for pt in eff.points.iter().chain(&quantum.points) {
        assert!((0.0..=1.0).contains(&pt.t));
        assert_eq!(pt.r, 1.0 - pt.t);
    }
    let mut csv = Vec::new();
    eff.write_csv(&mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert!(text.lines().any(|l| l == "param,t,r"));
}

#[test]
fn beam_fraction_tracks_effective_t_for_other_shapes() {
    let pot = PiecewiseConstantPotential::double_barrier(1.0, 0.4, 0.6).unwrap();
    let md = LowMomentumModel::new(PhysicalParams::reference(3.0), pot).unwrap();
    let t = effective_coefficients(&md).unwrap().t();
    let n = 200;
    let frac =
        simulated_transmission(&md, &beam_energies(1.0, n), &StepControl::default()).unwrap();
    assert!(
        (frac - t).abs() <= 1.0 / n as f64 + 1e-9,
        "t {t}, beam {frac}"
    );
}
