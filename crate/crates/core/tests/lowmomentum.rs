use eqpot::kernel::k_space_inverse_mass;
use eqpot::lowmomentum::gaussian_smooth;
use eqpot::{
    ClassicalPotential, LowMomentumModel, PhysicalParams, QuadratureConfig, SquareBarrier,
    TabulatedPotential,
};

fn model(hbar: f64) -> LowMomentumModel {
    LowMomentumModel::new(PhysicalParams::reference(hbar), SquareBarrier::reference()).unwrap()
}

#[test]
fn converges_to_the_barrier_as_hbar_shrinks() {
    let b = SquareBarrier::reference();
    for q in [-1.0, -0.3, 0.0, 0.2, 0.45, 0.6, 2.0] {
        let gaps: Vec<f64> = [1.0, 0.5, 0.25, 0.125]
            .iter()
            .map(|&h| (model(h).smoothed_potential(q).unwrap() - b.eval(q)).abs())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "q = {q}: {gaps:?}");
    }
    for h in [1.0, 0.5, 0.25, 0.125] {
        assert!((model(h).smoothed_potential(0.5).unwrap() - 0.5).abs() < 1e-3 * h.max(0.25));
    }
}

#[test]
fn threshold_is_the_fixed_point_of_the_reduced_maximum() {
    for hbar in [1.0, 3.0, 6.0] {
        let md = model(hbar);
        let closed = md.tunneling_threshold().unwrap();
        let fixed = md.threshold_fixed_point().unwrap();
        assert!(
            (closed - fixed).abs() < 1e-9,
            "hbar = {hbar}: {closed} vs {fixed}"
        );
    }
}

#[test]
fn mass_closed_form_matches_wavenumber_integral() {
    let pot = ClassicalPotential::from(SquareBarrier::reference());
    let cfg = QuadratureConfig::default().with_rel_tol(1e-12);
    for hbar in [1.0, 3.0, 10.0] {
        let md = model(hbar);
        for q in [-1.2, -0.5, 0.0, 0.7, 2.5] {
            let a = md.inverse_mass(q).unwrap();
            let b = k_space_inverse_mass(md.params(), &pot, q, &cfg).unwrap();
            assert!((a - b).abs() < 1e-10, "hbar = {hbar}, q = {q}");
        }
    }
}

#[test]
fn tabulated_square_approaches_closed_form() {
    // A steep ramp sampled finely behaves like the sharp barrier.
    let n = 801;
    let grid: Vec<f64> = (0..n)
        .map(|i| -2.0 + 4.0 * i as f64 / (n - 1) as f64)
        .collect();
    let values: Vec<f64> = grid
        .iter()
        .map(|&q| SquareBarrier::reference().eval(q))
        .collect();
    let tab = LowMomentumModel::new(
        PhysicalParams::reference(3.0),
        TabulatedPotential::new(grid, values).unwrap(),
    )
    .unwrap();
    let sq = model(3.0);
    for q in [0.0, 0.4, 1.0] {
        assert!(
            (tab.smoothed_potential(q).unwrap() - sq.smoothed_potential(q).unwrap()).abs() < 1e-3
        );
        assert!((tab.mass(q).unwrap() - sq.mass(q).unwrap()).abs() < 1e-3);
    }
    let t = tab.tunneling_threshold().unwrap();
    assert!((t - sq.tunneling_threshold().unwrap()).abs() < 1e-3);
}

#[test]
fn golden_convolution_at_center() {
    let pot = ClassicalPotential::from(SquareBarrier::reference());
    let md = model(3.0);
    let cfg = QuadratureConfig::default().with_rel_tol(1e-13);
    let v = gaussian_smooth(&pot, md.smoothing_sigma(), 0.0, &cfg).unwrap();
    assert!((v - 0.65422141384883968427).abs() < 1e-10);
}
