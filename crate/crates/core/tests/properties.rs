use proptest::prelude::*;

use eqpot::physical::{dimensionless, hbar_for_h};
use eqpot::quadrature::integrate_adaptive;
use eqpot::transmission::{
    effective_coefficients, effective_t_of_h, quantum_t_mixture, quantum_t_single,
    transfer_matrix_transmission, CoefficientPair, MixtureEnsemble,
};
use eqpot::{
    ClassicalPotential, LowMomentumModel, PhysicalParams, PiecewiseConstantPotential,
    QuadratureConfig, SquareBarrier,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_form_factors_are_real_and_even(k in -200.0f64..200.0, v0 in 0.1f64..5.0, half in 0.1f64..3.0, gap in 0.1f64..3.0) {
        let pots = [
            ClassicalPotential::from(SquareBarrier::new(v0, half).unwrap()),
            ClassicalPotential::from(SquareBarrier::new(v0, half).unwrap().to_piecewise()),
            ClassicalPotential::from(PiecewiseConstantPotential::double_barrier(v0, half, gap).unwrap()),
        ];
        for pot in &pots {
            let f = pot.form_factor(k);
            let g = pot.form_factor(-k);
            prop_assert!(f.im.abs() <= 1e-14 * f.norm().max(1e-300) + 1e-15);
            prop_assert!((f.re - g.re).abs() <= 1e-12 * f.re.abs().max(1.0));
        }
    }

    #[test]
    fn coefficients_stay_in_unit_interval(h in 0.0f64..100.0, q in 0.02f64..50.0) {
        let t = effective_t_of_h(h);
        prop_assert!((0.0..=1.0).contains(&t));
        let tq = quantum_t_mixture(q).unwrap();
        prop_assert!((0.0..=1.0).contains(&tq));
        let pair = CoefficientPair::from_transmission(tq);
        prop_assert_eq!(pair.t() + pair.r(), 1.0);
    }

    #[test]
    fn transfer_matrix_is_a_probability(v0 in 0.1f64..3.0, width in 0.05f64..2.0, gap in 0.0f64..3.0, e in 0.01f64..5.0, hbar in 0.1f64..3.0) {
        let pot = if gap > 0.0 {
            PiecewiseConstantPotential::double_barrier(v0, width, gap).unwrap()
        } else {
            SquareBarrier::new(v0, width).unwrap().to_piecewise()
        };
        let r = transfer_matrix_transmission(&pot, &PhysicalParams::reference(hbar), e).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.t));
    }

    #[test]
    fn effective_t_depends_on_h_only(h in 0.3f64..15.0, m in 0.2f64..5.0, beta in 0.02f64..2.0, half in 0.1f64..3.0, v0 in 0.1f64..4.0) {
        let a = LowMomentumModel::new(
            PhysicalParams::reference(hbar_for_h(1.0, 0.125, 0.5, h)),
            SquareBarrier::reference(),
        ).unwrap();
        let params = PhysicalParams::new(m, beta, hbar_for_h(m, beta, half, h)).unwrap();
        let barrier = SquareBarrier::new(v0, half).unwrap();
        prop_assert!((dimensionless(&params, &barrier).h - h).abs() <= 1e-12 * h);
        // Strong quantum settings can make the mass expansion break down;
        // only the closed form is compared then.
        let ta = effective_coefficients(&a).map(|c| c.t()).unwrap_or_else(|_| effective_t_of_h(h));
        let tb = match LowMomentumModel::new(params, barrier) {
            Ok(b) => effective_coefficients(&b).unwrap().t(),
            Err(_) => effective_t_of_h(dimensionless(&params, &barrier).h),
        };
        prop_assert!((ta - tb).abs() <= 1e-12 * ta.max(1e-300));
    }

    #[test]
    fn strengths_are_linear_in_hbar(hbar in 0.01f64..50.0, scale in 0.1f64..10.0) {
        let b = SquareBarrier::reference();
        let d1 = dimensionless(&PhysicalParams::reference(hbar), &b);
        let d2 = dimensionless(&PhysicalParams::reference(hbar * scale), &b);
        prop_assert!((d2.h - scale * d1.h).abs() <= 1e-12 * d2.h);
        prop_assert!((d2.q - scale * d1.q).abs() <= 1e-12 * d2.q);
    }

    #[test]
    fn eigenstate_transmission_increases_with_k(hbar in 0.2f64..3.0, x in 0.01f64..0.98) {
        let b = SquareBarrier::reference();
        let p = PhysicalParams::reference(hbar);
        let k0 = MixtureEnsemble::new(&p, &b).unwrap().k0();
        let lo = quantum_t_single(&b, &p, x * k0).unwrap();
        let hi = quantum_t_single(&b, &p, (x + 0.01) * k0).unwrap();
        prop_assert!(hi >= lo);
    }

    #[test]
    fn smoothed_profiles_are_symmetric_and_bounded(hbar in 0.2f64..12.0, q in -5.0f64..5.0) {
        let md = LowMomentumModel::new(PhysicalParams::reference(hbar), SquareBarrier::reference()).unwrap();
        let v = md.smoothed_potential(q).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert!((v - md.smoothed_potential(-q).unwrap()).abs() <= 1e-12);
        prop_assert!((md.mass(q).unwrap() - md.mass(-q).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn quadrature_is_linear(alpha in -3.0f64..3.0, w in 0.5f64..8.0) {
        let cfg = QuadratureConfig::default();
        let f = |x: f64| (w * x).sin() * (-x).exp();
        let g = |x: f64| x * x;
        let lhs = integrate_adaptive(|x| alpha * f(x) + g(x), 0.0, 2.0, &cfg).unwrap();
        let rhs = alpha * integrate_adaptive(f, 0.0, 2.0, &cfg).unwrap() + integrate_adaptive(g, 0.0, 2.0, &cfg).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
    }
}
