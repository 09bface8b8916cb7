use num_complex::Complex64;
use proptest::prelude::*;
use rmtdiff::asym::support_points;
use rmtdiff::moments::{absolute_moment, moment_via_quadrature, trace_distance_asymptotic, MomentQuery};

fn m(z: f64, c: f64) -> f64 {
    absolute_moment(&MomentQuery::real(z, c).unwrap()).unwrap().re
}

#[test]
fn closed_form_matches_quadrature() {
    for &z in &[0.5, 1.0, 2.0, 3.7] {
        for &c in &[0.5, 1.0, 1.9, 2.1, 3.0, 5.0] {
            let a = m(z, c);
            let q = moment_via_quadrature(z, c, 1.0).unwrap();
            assert!((a - q).abs() <= 1e-5 * a.abs(), "z = {z}, c = {c}: {a} vs {q}");
        }
    }
}

#[test]
fn continuous_across_c_equals_2() {
    for &z in &[0.5, 1.0, 2.0, 4.0] {
        let lo = m(z, 2.0 - 1e-6);
        let hi = m(z, 2.0 + 1e-6);
        assert!((lo - hi).abs() <= 1e-4 * lo.abs(), "z = {z}: {lo} vs {hi}");
        let mid = m(z, 2.0);
        assert!((mid - lo).abs() <= 1e-4 * lo.abs());
    }
    assert!((trace_distance_asymptotic(2.0).unwrap() - 0.75).abs() < 1e-8);
    assert!((0.5 * m(1.0, 2.0) - 0.75).abs() < 1e-8);
}

#[test]
fn growth_bounded_by_support() {
    for &c in &[0.3, 1.0, 1.9, 2.1, 4.0] {
        let xp = support_points(c).unwrap().1;
        for l in 1..=10 {
            let z = 2.0 * f64::from(l);
            let root = m(z, c).powf(1.0 / z);
            assert!(root <= xp * (1.0 + 1e-10), "c = {c}, l = {l}: {root} > {xp}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn power_means_increase(c in 0.05f64..8.0) {
        // The atom enters the normalized measure, so use the full mass 1.
        let orders = [0.5, 1.0, 2.0, 4.0];
        let roots: Vec<f64> = orders.iter().map(|&z| m(z, c).powf(1.0 / z)).collect();
        for w in roots.windows(2) {
            prop_assert!(w[1] >= w[0] * (1.0 - 1e-12), "c = {}: {:?}", c, roots);
        }
    }

    #[test]
    fn first_moment_is_twice_trace_distance(c in 0.01f64..10.0) {
        let td = trace_distance_asymptotic(c).unwrap();
        prop_assert!((m(1.0, c) - 2.0 * td).abs() <= 1e-12 * td.max(1.0));
    }

    #[test]
    fn second_moment_exact(c in 0.01f64..20.0) {
        prop_assert!((m(2.0, c) - 2.0 * c).abs() <= 1e-10 * 2.0 * c);
    }

    #[test]
    fn conjugate_symmetry(re in 0.2f64..4.0, im in -3.0f64..3.0, c in 0.1f64..6.0) {
        let a = absolute_moment(&MomentQuery::new(Complex64::new(re, im), c).unwrap()).unwrap();
        let b = absolute_moment(&MomentQuery::new(Complex64::new(re, -im), c).unwrap()).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-10 * a.norm().max(1e-300));
    }
}
