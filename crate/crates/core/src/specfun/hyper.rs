//! Gauss hypergeometric function `2F1(a, b; c; x)` for real `x`.

use num_complex::Complex64;

use super::gamma::{gamma_complex, recip_gamma_complex};
use crate::error::{Error, Result};

pub const MAX_TERMS: usize = 100_000;

/// Above this argument the series is replaced by the `1 - x` connection
/// formula when it applies.
const CONNECTION_X: f64 = 0.95;

/// Validated parameters of one `2F1` evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricQuery {
    pub a: Complex64,
    pub b: Complex64,
    pub c_param: Complex64,
    pub x: f64,
    /// Index of the last non-zero term when `a` or `b` is a non-positive
    /// integer.
    pub terminates_at: Option<usize>,
}

fn as_nonpositive_integer(z: Complex64) -> Option<usize> {
    (z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() && z.re > -1e15).then(|| (-z.re) as usize)
}

impl HypergeometricQuery {
    pub fn new(a: Complex64, b: Complex64, c_param: Complex64, x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::DomainError(format!("2F1 argument {x}")));
        }
        let terminates_at = match (as_nonpositive_integer(a), as_nonpositive_integer(b)) {
            (Some(m), Some(n)) => Some(m.min(n)),
            (m, n) => m.or(n),
        };
        if let Some(pole) = as_nonpositive_integer(c_param) {
            match terminates_at {
                Some(n) if n <= pole => {}
                _ => {
                    return Err(Error::PoleError(format!(
                        "c = {} hits a pole before the series terminates",
                        c_param.re
                    )))
                }
            }
        }
        if terminates_at.is_none() {
            let gauss_ok = x == 1.0 && (c_param - a - b).re > 0.0;
            if !(x.abs() < 1.0 || gauss_ok) {
                return Err(Error::DomainError(format!(
                    "non-terminating 2F1 needs |x| < 1 (or x = 1 with Re(c - a - b) > 0), got x = {x}"
                )));
            }
        }
        Ok(Self {
            a,
            b,
            c_param,
            x,
            terminates_at,
        })
    }

    pub fn real(a: f64, b: f64, c_param: f64, x: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c_param.into(), x)
    }
}

/// Evaluates the query.
///
/// Terminating series are summed exactly to their last term for any `x`.
/// Otherwise the power series is used, except at `x = 1` (Gauss's sum) and
/// for `x` close to 1 where the `1 - x` connection formula is used whenever
/// `c - a - b` is not near an integer.
pub fn gauss_2f1(q: &HypergeometricQuery) -> Result<Complex64> {
    let (a, b, c, x) = (q.a, q.b, q.c_param, q.x);
    if let Some(n) = q.terminates_at {
        return Ok(polynomial(a, b, c, x, n));
    }
    if x == 1.0 {
        return Ok(gauss_at_one(a, b, c)?);
    }
    let s = c - a - b;
    let near_integer = s.im.abs() < 0.05 && (s.re - s.re.round()).abs() < 0.05;
    if x > CONNECTION_X && !near_integer {
        return connection(a, b, c, x);
    }
    series(a, b, c, x)
}

/// Real parameters, real result.
pub fn gauss_2f1_real(a: f64, b: f64, c_param: f64, x: f64) -> Result<f64> {
    Ok(gauss_2f1(&HypergeometricQuery::real(a, b, c_param, x)?)?.re)
}

fn polynomial(a: Complex64, b: Complex64, c: Complex64, x: f64, n: usize) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..n {
        let k = k as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        sum += term;
    }
    sum
}

/// `Gamma(c) Gamma(c - a - b) / (Gamma(c - a) Gamma(c - b))`.
fn gauss_at_one(a: Complex64, b: Complex64, c: Complex64) -> Result<Complex64> {
    Ok(gamma_complex(c)? * gamma_complex(c - a - b)? * recip_gamma_complex(c - a) * recip_gamma_complex(c - b))
}

fn connection(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    let y = 1.0 - x;
    let s = c - a - b;
    let gc = gamma_complex(c)?;
    let first = gc * gamma_complex(s)? * recip_gamma_complex(c - a) * recip_gamma_complex(c - b) * series(a, b, 1.0 - s, y)?;
    let second = gc
        * gamma_complex(-s)?
        * recip_gamma_complex(a)
        * recip_gamma_complex(b)
        * Complex64::new(y, 0.0).powc(s)
        * series(c - a, c - b, s + 1.0, y)?;
    Ok(first + second)
}

/// Plain power series; stops after two consecutive terms below `1e-16`
/// of the partial sum once the terms are shrinking.
fn series(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let k = k as f64;
        let denom = (c + k) * (k + 1.0);
        if denom.norm() == 0.0 {
            return Err(Error::PoleError(format!("(c)_k vanishes at k = {k}")));
        }
        let ratio = (a + k) * (b + k) / denom * x;
        term *= ratio;
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        if term.norm() < 1e-16 * sum.norm() && ratio.norm() < 1.0 {
            small += 1;
            if small == 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence("2F1 series"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_cases() {
        for &x in &[-0.9, 0.0, 0.4, 0.99, 5.0] {
            assert_eq!(gauss_2f1_real(3.7, 0.0, 1.2, x).unwrap(), 1.0);
        }
        assert!((gauss_2f1_real(-1.0, 2.0, 3.0, 0.3).unwrap() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn arcsin_identity() {
        for i in 1..=9 {
            let z = i as f64 / 10.0;
            let v = gauss_2f1_real(0.5, 0.5, 1.5, z * z).unwrap() * z;
            assert!((v - z.asin()).abs() < 1e-12, "z = {z}");
        }
        let v = gauss_2f1_real(0.5, 0.5, 1.5, 0.25).unwrap() * 0.5;
        assert!((v - std::f64::consts::PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn termination_before_pole() {
        // b = -2 stops the series before the pole of c = -4.
        let q = HypergeometricQuery::real(1.5, -2.0, -4.0, 0.5).unwrap();
        assert_eq!(q.terminates_at, Some(2));
        let expected = 1.0 + 1.5 * -2.0 / -4.0 * 0.5 + 1.5 * 2.5 * (-2.0 * -1.0) / (-4.0 * -3.0 * 2.0) * 0.25;
        assert!((gauss_2f1(&q).unwrap().re - expected).abs() < 1e-15);
        assert!(matches!(
            HypergeometricQuery::real(1.5, -5.0, -4.0, 0.5),
            Err(Error::PoleError(_))
        ));
        assert!(matches!(HypergeometricQuery::real(1.5, 2.0, -4.0, 0.5), Err(Error::PoleError(_))));
    }

    #[test]
    fn domain_checks() {
        assert!(matches!(HypergeometricQuery::real(0.5, 0.5, 1.5, 1.2), Err(Error::DomainError(_))));
        // c - a - b = 0: divergent at 1.
        assert!(matches!(HypergeometricQuery::real(0.5, 0.5, 1.0, 1.0), Err(Error::DomainError(_))));
        assert!(HypergeometricQuery::real(0.5, 0.5, 1.5, 1.0).is_ok());
    }

    #[test]
    fn gauss_sum_and_connection() {
        let q = HypergeometricQuery::real(0.5, 0.5, 1.5, 1.0).unwrap();
        assert!((gauss_2f1(&q).unwrap().re - std::f64::consts::FRAC_PI_2).abs() < 1e-14);

        let v = gauss_2f1_real(0.3, 0.4, 2.1, 0.999).unwrap();
        assert!((v - 1.096_847_383_145_431_5).abs() < 1e-13);
        let v = gauss_2f1_real(0.75, -0.25, 2.25, 1.0 - 5e-7).unwrap();
        assert!((v - 0.883_883_586_963_865_2).abs() < 1e-13);

        let (a, b, cc) = (c(0.5, 0.3), c(-0.2, 1.0), c(2.5, -0.7));
        let v = gauss_2f1(&HypergeometricQuery::new(a, b, cc, 0.97).unwrap()).unwrap();
        assert!((v - c(0.782_762_023_727_725_6, 0.046_914_760_573_508_61)).norm() < 1e-13);
        let v = gauss_2f1(&HypergeometricQuery::new(a, b, cc, 0.6).unwrap()).unwrap();
        assert!((v - c(0.867_749_233_769_579_4, 0.051_155_628_651_908_03)).norm() < 1e-13);
    }

    #[test]
    fn connection_agrees_with_series_at_switch() {
        let (a, b, cc) = (c(0.3, 0.2), c(1.1, 0.0), c(3.3, 0.1));
        let x = 0.96;
        let direct = series(a, b, cc, x).unwrap();
        let conn = connection(a, b, cc, x).unwrap();
        assert!((direct - conn).norm() < 1e-12 * direct.norm());
    }

    proptest! {
        #[test]
        fn contiguity_in_a(a in -2.0f64..2.0, b in -2.0f64..2.0, cc in 0.6f64..4.0, x in -0.5f64..0.5) {
            let f = |a| gauss_2f1_real(a, b, cc, x).unwrap();
            let (fm, f0, fp) = (f(a - 1.0), f(a), f(a + 1.0));
            let terms = [(cc - a) * fm, (2.0 * a - cc + (b - a) * x) * f0, a * (x - 1.0) * fp];
            let scale = terms.iter().map(|t| t.abs()).fold(1.0, f64::max);
            prop_assert!(terms.iter().sum::<f64>().abs() <= 1e-10 * scale);
        }

        #[test]
        fn contiguity_in_c(a in -2.0f64..2.0, b in -2.0f64..2.0, cc in 1.6f64..4.0, x in -0.5f64..0.5) {
            let f = |cc| gauss_2f1_real(a, b, cc, x).unwrap();
            let (fm, f0, fp) = (f(cc - 1.0), f(cc), f(cc + 1.0));
            let terms = [
                cc * (cc - 1.0) * (x - 1.0) * fm,
                cc * (cc - 1.0 - (2.0 * cc - a - b - 1.0) * x) * f0,
                (cc - a) * (cc - b) * x * fp,
            ];
            let scale = terms.iter().map(|t| t.abs()).fold(1.0, f64::max);
            prop_assert!(terms.iter().sum::<f64>().abs() <= 1e-10 * scale);
        }
    }
}
