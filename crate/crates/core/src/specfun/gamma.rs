use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::DomainError(format!("ln_gamma needs x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// `ln C(n, k)`, `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Lanczos `ln Gamma(z)` for `Re z >= 1/2` (not necessarily the principal
/// branch; only its exponential is meaningful).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        acc += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

fn nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `Gamma(z)` for complex `z`; `PoleError` at non-positive integers.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if nonpositive_integer(z) {
        return Err(Error::PoleError(format!("Gamma pole at {}", z.re)));
    }
    if z.re < 0.5 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        Ok(PI / ((PI * z).sin() * ln_gamma_right(1.0 - z).exp()))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}

/// `1 / Gamma(z)`, entire; exactly zero at the poles of Gamma.
pub fn recip_gamma_complex(z: Complex64) -> Complex64 {
    if nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert!((ln_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-15 * 24f64.ln());
        assert!((ln_gamma(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-15);
        // Stirling with three correction terms is far below 1e-13 at 10^6.
        let x: f64 = 1e6;
        let stirling = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3));
        assert!((ln_gamma(x).unwrap() - stirling).abs() < 1e-13 * stirling);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(ln_gamma(0.0), Err(Error::DomainError(_))));
        assert!(matches!(ln_gamma(-2.5), Err(Error::DomainError(_))));
        assert!(matches!(ln_gamma(f64::NAN), Err(Error::DomainError(_))));
    }

    #[test]
    fn functional_equation() {
        let mut x = 0.5;
        while x <= 100.0 {
            let lhs = ln_gamma(x + 1.0).unwrap();
            let rhs = ln_gamma(x).unwrap() + x.ln();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0), "x = {x}");
            x += 0.37;
        }
    }

    #[test]
    fn complex_gamma_matches_real_and_reflection() {
        for &x in &[0.5, 1.0, 2.5, 7.25, 30.0] {
            let g = gamma_complex(Complex64::new(x, 0.0)).unwrap();
            let r = libm::tgamma(x);
            assert!((g.re - r).abs() < 1e-13 * r && g.im.abs() < 1e-13 * r);
        }
        // Gamma(-1/2) = -2 sqrt(pi)
        let g = gamma_complex(Complex64::new(-0.5, 0.0)).unwrap();
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-13);
        // |Gamma(i y)|^2 = pi / (y sinh(pi y))
        let y = 1.3;
        let g = gamma_complex(Complex64::new(0.0, y)).unwrap();
        assert!((g.norm_sqr() - PI / (y * (PI * y).sinh())).abs() < 1e-13);
        // Recurrence Gamma(z + 1) = z Gamma(z)
        let z = Complex64::new(0.7, -2.1);
        let lhs = gamma_complex(z + 1.0).unwrap();
        let rhs = z * gamma_complex(z).unwrap();
        assert!((lhs - rhs).norm() < 1e-13 * lhs.norm());
    }

    #[test]
    fn reciprocal_vanishes_at_poles() {
        assert_eq!(recip_gamma_complex(Complex64::new(-3.0, 0.0)), Complex64::new(0.0, 0.0));
        assert!(gamma_complex(Complex64::new(0.0, 0.0)).is_err());
        let r = recip_gamma_complex(Complex64::new(-2.5, 0.0));
        assert!((r.re * libm::tgamma(-2.5) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn binomials() {
        assert!((ln_binomial(10, 3) - 120f64.ln()).abs() < 1e-13);
        assert_eq!(ln_binomial(3, 4), f64::NEG_INFINITY);
    }
}
