//! Absolute moments `m_z = integral |x|^z rho(x) dx` of the asymptotic
//! density and the trace-distance and operator-norm limits built on them.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::asym::{marchenko_pastur, marchenko_pastur_support, support_points, AedSpec};
use crate::error::{Error, Result};
use crate::quad::{integrate_sqrt_ends, Tolerance};
use crate::specfun::{gamma_complex, gauss_2f1, gauss_2f1_real, ln_factorial, HypergeometricQuery};

/// Agreement required between the two closed-form branches at `c = 2`.
pub const BRANCH_AGREEMENT: f64 = 1e-8;

/// Moment order `z` (`Re z > 0`) and ratio `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuery {
    pub z: Complex64,
    pub c: f64,
}

impl MomentQuery {
    pub fn new(z: Complex64, c: f64) -> Result<Self> {
        if !(z.re > 0.0) || !z.im.is_finite() {
            return Err(Error::DomainError(format!("moment order needs Re z > 0, got {z}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParams(format!("c must be finite and positive, got {c}")));
        }
        Ok(Self { z, c })
    }

    pub fn real(z: f64, c: f64) -> Result<Self> {
        Self::new(Complex64::new(z, 0.0), c)
    }
}

fn cpow(base: f64, e: Complex64) -> Complex64 {
    (e * base.ln()).exp()
}

fn lower_branch(z: Complex64, c: f64) -> Result<Complex64> {
    let h = z / 2.0;
    let pre = gamma_complex(z + 1.0)? * cpow(2.0 * c, h) / (gamma_complex(h + 1.0)? * gamma_complex(h + 2.0)?);
    let f = gauss_2f1(&HypergeometricQuery::new(1.0 - h, -h, h + 2.0, c / 2.0)?)?;
    Ok(pre * f)
}

fn upper_branch(z: Complex64, c: f64) -> Result<Complex64> {
    let f = gauss_2f1(&HypergeometricQuery::new(1.0 - z / 2.0, -z, Complex64::new(2.0, 0.0), 2.0 / c)?)?;
    Ok(2.0 * cpow(c, z - 1.0) * f)
}

/// `m_z` in closed form. The atom at 0 contributes nothing since `Re z > 0`.
/// At `c = 2` both branches are evaluated and their mean is returned.
pub fn absolute_moment(q: &MomentQuery) -> Result<Complex64> {
    let MomentQuery { z, c } = *q;
    if !(z.re > 0.0) {
        return Err(Error::DomainError(format!("moment order needs Re z > 0, got {z}")));
    }
    if c < 2.0 {
        lower_branch(z, c)
    } else if c > 2.0 {
        upper_branch(z, c)
    } else {
        let (lo, hi) = (lower_branch(z, c)?, upper_branch(z, c)?);
        let diff = (lo - hi).norm();
        if diff > BRANCH_AGREEMENT * lo.norm().max(hi.norm()) {
            return Err(Error::NoConvergence("moment branches disagree at c = 2"));
        }
        Ok(0.5 * (lo + hi))
    }
}

/// `m_{2l} = (2l)! / (l! (l+1)!) c^l (2-c)^l 2F1(2l+1, -l; l+2; c/(c-2))`,
/// a polynomial in `c`. Undefined at `c = 2`.
pub fn even_moment(l: u32, c: f64) -> Result<f64> {
    if l == 0 {
        return Err(Error::InvalidParams("even_moment needs l >= 1".into()));
    }
    if c == 2.0 {
        return Err(Error::DomainError("even_moment representation is singular at c = 2".into()));
    }
    let l64 = u64::from(l);
    let lf = f64::from(l);
    let catalan = (ln_factorial(2 * l64) - ln_factorial(l64) - ln_factorial(l64 + 1)).exp();
    let f = gauss_2f1_real(2.0 * lf + 1.0, -lf, lf + 2.0, c / (c - 2.0))?;
    Ok(catalan * (c * (2.0 - c)).powi(l as i32) * f)
}

/// Asymptotic trace distance `(1/2) m_1`.
pub fn trace_distance_asymptotic(c: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParams(format!("c must be finite and positive, got {c}")));
    }
    if c > 2.0 {
        return Ok(1.0 - 0.5 / c);
    }
    let root = ((2.0 - c) * c).sqrt();
    Ok(((c + 1.0) * root + (4.0 * c - 2.0) * (c / 2.0).sqrt().asin()) / (2.0 * PI * c))
}

/// Limit of the operator norm of `rho_1 - rho_2`, i.e. `x_+ / N`.
pub fn operator_norm_asymptotic(c: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    Ok(support_points(c)?.1 / n as f64)
}

/// Asymptotic trace distance between a random reduced state and `I/N`:
/// `(1/2) integral |x - 1| dMP_c(x)`, atom included.
pub fn distance_to_mixed_asymptotic(c: f64) -> Result<f64> {
    let (lo, hi) = marchenko_pastur_support(c)?;
    let atom = (1.0 - 1.0 / c).max(0.0);
    let tol = Tolerance::new(1e-13, 1e-12);
    let f = |x: f64| marchenko_pastur(x, c).map_or(0.0, |(d, _)| (x - 1.0).abs() * d);
    let mut total = 0.0;
    for (a, b) in [(lo, 1.0f64.min(hi)), (1.0f64.max(lo), hi)] {
        if b > a {
            total += integrate_sqrt_ends(f, a, b, tol)?.value;
        }
    }
    Ok(0.5 * (total + atom))
}

/// `m_z` by quadrature of `|x|^z` against the continuous density.
pub fn moment_via_quadrature(z: f64, c: f64, eta: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::DomainError(format!("moment order needs z > 0, got {z}")));
    }
    let spec = AedSpec::new(c, eta)?;
    Ok(spec.integrate(|x| x.abs().powf(z), Tolerance::new(1e-13, 1e-11))?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(z: f64, c: f64) -> f64 {
        absolute_moment(&MomentQuery::real(z, c).unwrap()).unwrap().re
    }

    #[test]
    fn second_moment_is_2c() {
        for &c in &[0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 3.0, 5.0, 40.0] {
            assert!((m(2.0, c) - 2.0 * c).abs() <= 1e-10 * 2.0 * c, "c = {c}: {}", m(2.0, c));
        }
    }

    #[test]
    fn first_moment_examples() {
        assert!((m(1.0, 3.0) - 5.0 / 3.0).abs() < 1e-13);
        assert!((m(1.0, 1.0) - (2.0 + PI / 2.0) / (2.0 * PI) * 2.0).abs() < 1e-13);
        assert!((m(1e-9, 1.0) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_nonpositive_order() {
        assert!(MomentQuery::real(0.0, 1.0).is_err());
        let q = MomentQuery {
            z: Complex64::new(-1.0, 0.0),
            c: 1.0,
        };
        assert!(matches!(absolute_moment(&q), Err(Error::DomainError(_))));
    }

    #[test]
    fn even_moment_examples() {
        assert!((even_moment(1, 1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!(matches!(even_moment(3, 2.0), Err(Error::DomainError(_))));
        for &c in &[0.3, 1.0, 1.7, 2.6, 4.0] {
            for l in 1..=6 {
                let a = even_moment(l, c).unwrap();
                let b = m(2.0 * f64::from(l), c);
                assert!((a - b).abs() <= 1e-10 * b.abs(), "l = {l}, c = {c}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn fourth_moment_by_quadrature() {
        let q = moment_via_quadrature(4.0, 1.0, 1.0).unwrap();
        assert!((even_moment(2, 1.0).unwrap() - q).abs() < 1e-6);
    }

    #[test]
    fn trace_distance_examples() {
        assert!((trace_distance_asymptotic(3.0).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        let lower = ((2.0 + 1.0) * 0.0 + 6.0 * 1f64.asin()) / (4.0 * PI);
        assert!((lower - 0.75).abs() < 1e-15);
        assert!((trace_distance_asymptotic(2.0).unwrap() - 0.75).abs() < 1e-15);
        let c: f64 = 1e-6;
        let lead = 4.0 * 2f64.sqrt() * c.sqrt() / (3.0 * PI);
        assert!((trace_distance_asymptotic(c).unwrap() / lead - 1.0).abs() < 1e-3);
        for &c in &[0.5, 1.0, 2.0, 3.0, 7.5] {
            let half = 0.5 * m(1.0, c);
            assert!((trace_distance_asymptotic(c).unwrap() - half).abs() < 1e-12);
        }
    }

    #[test]
    fn operator_norm_limits() {
        let x1 = 0.25 * (5f64.sqrt() + 3.0).powf(1.5) * (5f64.sqrt() - 1.0).sqrt();
        assert!((operator_norm_asymptotic(1.0, 1).unwrap() - x1).abs() < 1e-14);
        let c: f64 = 1e-6;
        assert!((operator_norm_asymptotic(c, 10).unwrap() / (2.0 * (2.0 * c).sqrt() / 10.0) - 1.0).abs() < 1e-3);
        let c = 1e6;
        assert!((operator_norm_asymptotic(c, 7).unwrap() / (c / 7.0) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn distance_to_mixed() {
        let c: f64 = 0.01;
        let lead = 4.0 * c.sqrt() / (3.0 * PI);
        assert!((distance_to_mixed_asymptotic(c).unwrap() / lead - 1.0).abs() < 0.05);
        let ratio = trace_distance_asymptotic(1e-3).unwrap() / distance_to_mixed_asymptotic(1e-3).unwrap();
        assert!((ratio / 2f64.sqrt() - 1.0).abs() < 0.02, "{ratio}");
        // MP(1) is the quarter-circle law in sqrt(x); the exact value is 3 sqrt(3) / (4 pi).
        let exact = 3.0 * 3f64.sqrt() / (4.0 * PI);
        assert!((distance_to_mixed_asymptotic(1.0).unwrap() - exact).abs() < 1e-9);
    }

    #[test]
    fn quadrature_examples() {
        assert!((moment_via_quadrature(2.0, 1.0, 1.0).unwrap() - 2.0).abs() < 1e-6);
        assert!((moment_via_quadrature(1.0, 1.0, 1.0).unwrap() - 1.1366197723675813).abs() < 1e-5);
        let q = moment_via_quadrature(0.5, 0.5, 1.0).unwrap();
        assert!((q - m(0.5, 0.5)).abs() < 1e-6);
    }

    #[test]
    fn complex_order() {
        let z = Complex64::new(1.5, 0.7);
        let got = absolute_moment(&MomentQuery::new(z, 1.3).unwrap()).unwrap();
        // integral |x|^z rho = integral |x|^1.5 (cos + i sin)(0.7 ln|x|) rho
        let spec = AedSpec::symmetric(1.3).unwrap();
        let tol = Tolerance::new(1e-13, 1e-11);
        let re = spec.integrate(|x| x.abs().powf(1.5) * (0.7 * x.abs().ln()).cos(), tol).unwrap().value;
        let im = spec.integrate(|x| x.abs().powf(1.5) * (0.7 * x.abs().ln()).sin(), tol).unwrap().value;
        assert!((got - Complex64::new(re, im)).norm() < 1e-7 * got.norm(), "{got} vs {re} + {im}i");
    }
}
