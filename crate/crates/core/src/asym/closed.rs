//! Closed-form asymptotic density of `N (rho_1 - rho_2)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `(x_minus^2, x_plus^2)`; `x_minus^2 < 0` for `c < 2`.
pub(crate) fn support_squares(c: f64) -> (f64, f64) {
    let s = (4.0 * c + 1.0).sqrt();
    ((s - 3.0).powi(3) * (s + 1.0) / 16.0, (s + 3.0).powi(3) * (s - 1.0) / 16.0)
}

/// Support points `x_plus` and, for `c >= 2`, the inner gap edge `x_minus`
/// (`x_minus = 0` at `c = 2`).
pub fn support_points(c: f64) -> Result<(Option<f64>, f64)> {
    check_c(c)?;
    let s = (4.0 * c + 1.0).sqrt();
    let x_plus = 0.25 * (s + 3.0).powf(1.5) * (s - 1.0).sqrt();
    let x_minus = (s >= 3.0).then(|| 0.25 * (s - 3.0).powf(1.5) * (s + 1.0).sqrt());
    Ok((x_minus, x_plus))
}

pub(crate) fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParams(format!("c must be finite and positive, got {c}")));
    }
    Ok(())
}

/// `eta(x) = (9(c+1)x^2 + (2-c)^3) / ((2-c)^2 + 3x^2)^(3/2)`.
pub fn eta_function(x: f64, c: f64) -> f64 {
    let a = 2.0 - c;
    let d = a * a + 3.0 * x * x;
    (9.0 * (c + 1.0) * x * x + a.powi(3)) / d.powf(1.5)
}

/// Continuous part of the symmetric AED.
///
/// Inside the support `sqrt(D) / (sqrt(3) pi c |x|) sinh(l / 3)` with
/// `D = (2-c)^2 + 3x^2` and `l = acosh(eta)`. `eta - 1` is formed from the
/// factorization `N^2 - D^3 = 27 x^2 (x_+^2 - x^2)(x^2 - x_-^2)`, so there
/// is no cancellation near `x = 0` or near the edges. At `x = 0` the limit
/// `1 / (pi sqrt(c (2 - c)))` is returned for `c < 2` and `+inf` at `c = 2`.
pub fn aed_symmetric(x: f64, c: f64) -> Result<f64> {
    check_c(c)?;
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!("x must be finite, got {x}")));
    }
    let (xm2, xp2) = support_squares(c);
    let x2 = x * x;
    if x == 0.0 {
        return Ok(if c < 2.0 {
            1.0 / (PI * (c * (2.0 - c)).sqrt())
        } else if c == 2.0 {
            f64::INFINITY
        } else {
            0.0
        });
    }
    if x2 >= xp2 || x2 <= xm2 {
        return Ok(0.0);
    }
    let a = 2.0 - c;
    let d = a * a + 3.0 * x2;
    let d32 = d * d.sqrt();
    let num = 9.0 * (c + 1.0) * x2 + a.powi(3);
    if num <= 0.0 {
        return Ok(0.0);
    }
    let gap = 27.0 * x2 * (xp2 - x2) * (x2 - xm2);
    let em1 = gap / (d32 * (num + d32));
    // acosh(1 + e) = log1p(e + sqrt(e (e + 2)))
    let l = (em1 + (em1 * (em1 + 2.0)).sqrt()).ln_1p();
    Ok(d.sqrt() / (3f64.sqrt() * PI * c * x.abs()) * (l / 3.0).sinh())
}

/// The same density through the cube-root (`w`) representation.
pub fn aed_symmetric_wform(x: f64, c: f64) -> Result<f64> {
    check_c(c)?;
    let (xm2, xp2) = support_squares(c);
    let x2 = x * x;
    if x == 0.0 || x2 >= xp2 || x2 <= xm2 {
        return aed_symmetric(x, c);
    }
    let a = 2.0 - c;
    let radicand = x2 * (x2 - xm2) * (xp2 - x2);
    let w = (radicand.sqrt() + 3f64.sqrt() * (c + 1.0) * (x2 + a.powi(3) / (9.0 * (c + 1.0)))).cbrt();
    Ok((w - (x2 + a * a / 3.0) / w) / (2.0 * PI * c * x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_examples() {
        let (xm, xp) = support_points(2.0).unwrap();
        assert_eq!(xm, Some(0.0));
        assert!((xp - 27f64.sqrt()).abs() < 1e-14);
        assert_eq!(support_points(1.0).unwrap().0, None);
        let c = 1e-6;
        assert!((support_points(c).unwrap().1 / (2.0 * (2.0 * c).sqrt()) - 1.0).abs() < 1e-3);
        assert!(support_points(0.0).is_err());
    }

    #[test]
    fn eta_at_origin() {
        assert!((eta_function(0.0, 1.0) - 1.0).abs() < 1e-15);
        assert!((eta_function(0.0, 3.5) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_outside_and_in_gap() {
        let (_, xp) = support_points(1.0).unwrap();
        assert_eq!(aed_symmetric(xp + 0.1, 1.0).unwrap(), 0.0);
        let (xm, _) = support_points(2.5).unwrap();
        assert!(xm.unwrap() > 0.05);
        assert_eq!(aed_symmetric(0.05, 2.5).unwrap(), 0.0);
        assert_eq!(aed_symmetric(0.0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn even_and_edge_vanishing() {
        for &c in &[0.5, 1.0, 2.5, 5.0] {
            for &x in &[0.01, 0.3, 1.7] {
                assert_eq!(aed_symmetric(x, c).unwrap(), aed_symmetric(-x, c).unwrap());
            }
            let (_, xp) = support_points(c).unwrap();
            assert!(aed_symmetric(xp - 1e-6, c).unwrap() < 1e-2);
        }
    }

    #[test]
    fn small_x_limit() {
        for &c in &[0.25, 1.0, 1.9] {
            let lim = aed_symmetric(0.0, c).unwrap();
            let near = aed_symmetric(1e-6, c).unwrap();
            assert!((near - lim).abs() < 1e-6 * lim, "c = {c}");
            let tiny = aed_symmetric(1e-13, c).unwrap();
            assert!((tiny - lim).abs() < 1e-12 * lim);
        }
        assert_eq!(aed_symmetric(0.0, 2.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn w_form_agrees() {
        for &c in &[0.3, 1.0, 1.6, 2.5, 5.0] {
            let (xm, xp) = support_points(c).unwrap();
            let lo = xm.unwrap_or(0.0);
            for i in 1..100 {
                let x = lo + (xp - lo) * i as f64 / 100.0;
                let a = aed_symmetric(x, c).unwrap();
                let b = aed_symmetric_wform(x, c).unwrap();
                assert!((a - b).abs() < 1e-10, "c = {c}, x = {x}: {a} vs {b}");
            }
        }
    }
}
