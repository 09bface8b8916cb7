use proptest::prelude::*;
use rmtdiff::finite::{build_psi_poly, derivative_principle_selftest, JointDensity, N2Density};
use rmtdiff::quad::{integrate, Tolerance};
use rmtdiff::Error;
use std::sync::OnceLock;

fn n3m3() -> &'static JointDensity {
    static JD: OnceLock<JointDensity> = OnceLock::new();
    JD.get_or_init(|| JointDensity::new(3, 3).unwrap())
}

fn n3m4() -> &'static JointDensity {
    static JD: OnceLock<JointDensity> = OnceLock::new();
    JD.get_or_init(|| JointDensity::new(3, 4).unwrap())
}

fn interior(a: f64, b: f64) -> Option<[f64; 3]> {
    let l = [a, b, -a - b];
    let gamma = 1.0 - 0.5 * l.iter().map(|x| x.abs()).sum::<f64>();
    let clear = l.iter().all(|x| x.abs() > 1e-3) && gamma > 1e-3;
    clear.then_some(l)
}

#[test]
fn n2_closed_form_normalized() {
    for m in [2, 5, 10] {
        let d = N2Density::new(m).unwrap();
        let r = integrate(|x| d.density(x).unwrap(), -1.0 + 1e-300, 1.0 - 1e-16, Tolerance::new(1e-13, 1e-12)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "M = {m}: {}", r.value);
    }
}

#[test]
fn n2_joint_matches_closed_form() {
    for m in [2, 5, 10] {
        let jd = JointDensity::new(2, m).unwrap();
        let d = N2Density::new(m).unwrap();
        for i in 1..=20 {
            let x = -0.95 + 1.9 * (i as f64 - 0.5) / 20.0;
            let (a, b) = (jd.density(&[x, -x]).unwrap(), d.density(x).unwrap());
            assert!((a - b).abs() <= 1e-9 * b, "M = {m}, x = {x}");
        }
    }
}

#[test]
fn gue_selftest_passes() {
    assert!(derivative_principle_selftest().passed);
}

#[test]
fn vanishes_quadratically_on_coincidence() {
    let jd = n3m3();
    for &(a, b) in &[(0.2, -0.4), (-0.15, 0.3), (0.3, -0.6)] {
        let at = |eps: f64| jd.density(&[a + eps / 2.0, a - eps / 2.0, b]).unwrap();
        let ratio = at(1e-2) / at(1e-3);
        assert!((ratio / 100.0 - 1.0).abs() < 0.1, "({a}, {b}): {ratio}");
        assert_eq!(jd.density(&[a, a, b]).unwrap(), 0.0);
    }
}

#[test]
fn nonnegative_on_interior_grid() {
    let jd = n3m3();
    let steps = 40;
    for i in 0..=steps {
        for j in 0..=steps {
            let a = -1.0 + 2.0 * i as f64 / steps as f64 + 0.0123;
            let b = -1.0 + 2.0 * j as f64 / steps as f64 + 0.0071;
            if let Some(l) = interior(a, b) {
                let v = jd.density(&l).unwrap();
                assert!(v >= -1e-12, "{l:?}: {v}");
            }
        }
    }
}

#[test]
fn zero_outside_region() {
    let jd = n3m3();
    // R is the convex hull of e_i - e_j
    for l in [[1.1, -0.6, -0.5], [0.6, 0.6, -1.2], [-0.9, -0.4, 1.3], [0.7, -1.4, 0.7]] {
        assert_eq!(jd.density(&l).unwrap(), 0.0, "{l:?}");
    }
    let psi = build_psi_poly(3, 3).unwrap();
    assert_eq!(psi.evaluate(&[1.1, -0.6, -0.5]).unwrap(), 0.0);
}

#[test]
fn boundary_queries_rejected() {
    let jd = n3m3();
    assert_eq!(jd.density(&[0.5, 0.0, -0.5]).unwrap_err(), Error::BoundaryPoint);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn permutation_and_reflection_symmetry(a in -1.0f64..1.0, b in -1.0f64..1.0) {
        let Some(l) = interior(a, b) else { return Ok(()); };
        for jd in [n3m3(), n3m4()] {
            let base = jd.density(&l).unwrap();
            let tol = 1e-10 * base.abs().max(1e-12);
            for p in [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]] {
                let v = jd.density(&[l[p[0]], l[p[1]], l[p[2]]]).unwrap();
                prop_assert!((v - base).abs() <= tol, "{:?} perm {:?}: {} vs {}", l, p, v, base);
            }
            let r = jd.density(&[-l[0], -l[1], -l[2]]).unwrap();
            prop_assert!((r - base).abs() <= tol);
        }
    }
}
