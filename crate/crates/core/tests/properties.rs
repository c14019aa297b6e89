use std::collections::BTreeMap;
use std::f64::consts::TAU;

use bitrial::cli::{embedded_config, render, Report, RunConfig};
use bitrial::dynamics::count_branches;
use bitrial::fieldeq::{mkgf_exact_solution, FieldParams};
use bitrial::malgebra::{
    m_cos, m_exp, m_mul_param, m_sin, oplus_pullback, su2_alpha, theta_of, theta_prime_of, PhaseParam,
};
use bitrial::mfourier::{gram_conjugate, gram_same_sign, BasisIndex};
use bitrial::numcore::{circular_distance, contour_moment_oracle, fd_apply, Derivative, PeriodicGrid, Tolerance};
use proptest::prelude::*;

fn alpha() -> impl Strategy<Value = f64> {
    -0.9f64..0.9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pythagorean_identity(theta in -50.0f64..50.0, a in alpha()) {
        let c = m_cos(theta, a).unwrap();
        let s = m_sin(theta, a).unwrap();
        prop_assert!((c * c + s * s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn blaschke_pair_inverts(theta in 0.0f64..TAU, a in alpha()) {
        let tp = theta_prime_of(theta, a).unwrap();
        let back = theta_of(&PhaseParam::real(tp, a)).unwrap();
        prop_assert!(circular_distance(back, theta) < 1e-12);
    }

    #[test]
    fn element_product_is_associative(x in 0.0f64..TAU, y in 0.0f64..TAU, z in 0.0f64..TAU, a in alpha()) {
        let (px, py, pz) = (PhaseParam::real(x, a), PhaseParam::real(y, a), PhaseParam::real(z, a));
        let left = m_exp(&m_mul_param(&m_mul_param(&px, &py).unwrap(), &pz).unwrap()).unwrap().value;
        let right = m_exp(&m_mul_param(&px, &m_mul_param(&py, &pz).unwrap()).unwrap()).unwrap().value;
        prop_assert!((left - right).norm() < 1e-12 * (1.0 + left.norm()));
    }

    #[test]
    fn pullback_is_commutative(x in 0.0f64..TAU, y in 0.0f64..TAU, a in alpha()) {
        let xy = oplus_pullback(x, y, a).unwrap();
        let yx = oplus_pullback(y, x, a).unwrap();
        prop_assert!(circular_distance(xy, yx) < 1e-12);
    }

    #[test]
    fn su2_alpha_is_special_unitary(angle in -20.0f64..20.0, u in -1.0f64..1.0, phi in 0.0f64..TAU, a in alpha()) {
        let r = (1.0 - u * u).sqrt();
        let g = su2_alpha(angle, [r * phi.cos(), r * phi.sin(), u], a).unwrap();
        prop_assert!((g.determinant() - 1.0).norm() < 1e-12);
        prop_assert!(g.unitarity_defect() < 1e-12);
    }

    #[test]
    fn branch_count_ignores_order(mut xs in proptest::collection::vec(-5.0f64..5.0, 1..60), seed in any::<u64>()) {
        let tol = Tolerance::absolute(1e-6).unwrap();
        let before = count_branches(&xs, &tol);
        let k = (seed as usize) % xs.len();
        xs.rotate_left(k);
        xs.reverse();
        prop_assert_eq!(before, count_branches(&xs, &tol));
        prop_assert!(before >= 1 && before <= xs.len());
    }

    #[test]
    fn second_difference_exact_on_quadratics(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0, h in 0.01f64..1.0) {
        let xs: Vec<f64> = (0..9).map(|k| {
            let x = k as f64 * h;
            a * x * x + b * x + c
        }).collect();
        for v in fd_apply(&xs, h, Derivative::Second).unwrap() {
            prop_assert!((v - 2.0 * a).abs() < 1e-8 * (1.0 + a.abs()) / (h * h));
        }
    }

    #[test]
    fn classical_exact_solution_is_decaying_exponential(t in -2.0f64..2.0, x in -2.0f64..2.0, m0 in 0.5f64..2.0, m1 in -0.4f64..0.4) {
        let p = FieldParams::slice(m0, m1, 0.0).unwrap();
        let v = mkgf_exact_solution([t, x, 0.0, 0.0], &p).unwrap();
        let expected = (-(m0 * t - m1 * x)).exp();
        prop_assert!((v - expected).abs() <= 1e-15 * expected * 4.0);
    }

    #[test]
    fn config_survives_header_round_trip(alpha in -0.9f64..0.9, seed in any::<u64>(), csv in any::<bool>()) {
        let mut params = BTreeMap::new();
        params.insert("alpha".to_string(), format!("{alpha}"));
        let format = if csv { bitrial::cli::Format::Csv } else { bitrial::cli::Format::Json };
        let cfg = RunConfig::new("axioms", params, seed, None, Some(format)).unwrap();
        let text = render(&cfg, &Report::new(vec!["check", "max_violation"])).unwrap();
        let back = embedded_config(&text).unwrap();
        prop_assert_eq!(back.f64("alpha").unwrap(), alpha);
        prop_assert_eq!(back, cfg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn same_sign_gram_depends_on_index_difference(n in -5i32..5, m in -5i32..5, shift in -3i32..3, a in -0.6f64..0.6) {
        let grid = PeriodicGrid::new(1024).unwrap();
        let g = gram_same_sign(BasisIndex(n), BasisIndex(m), a, &grid).unwrap();
        let shifted = gram_same_sign(BasisIndex(n + shift), BasisIndex(m + shift), a, &grid).unwrap();
        let oracle = contour_moment_oracle(n - m, a).unwrap();
        prop_assert!((g - shifted).norm() < 1e-9);
        prop_assert!((g - oracle).norm() < 1e-9);
    }

    #[test]
    fn conjugate_gram_is_hermitian(n in -4i32..5, m in -4i32..5, a in -0.6f64..0.6) {
        let grid = PeriodicGrid::new(1024).unwrap();
        let nm = gram_conjugate(BasisIndex(n), BasisIndex(m), a, &grid).unwrap();
        let mn = gram_conjugate(BasisIndex(m), BasisIndex(n), a, &grid).unwrap();
        prop_assert!((nm - mn.conj()).norm() < 1e-10);
    }
}
