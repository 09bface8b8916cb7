//! Closed-form single-eigenvalue density for `N = 2`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{ln_abs_bigint, CompensatedSum};
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Exact coefficients `w_k = C(M-1, k) ((2(M-1) - k)!)^2 / (4(M-1) - 2k + 1)!`
/// of `W(alpha) = sum_k w_k alpha^k`, lowest degree first.
pub fn w_poly(m: usize) -> Vec<BigRational> {
    assert!(m >= 1, "w_poly needs M >= 1");
    let m1 = m - 1;
    (0..=m1)
        .map(|k| {
            let num = binomial(m1, k) * factorial(2 * m1 - k).pow(2);
            BigRational::new(num, factorial(4 * m1 - 2 * k + 1))
        })
        .collect()
}

/// `ln w_k`.
pub fn w_poly_ln(m: usize) -> Vec<f64> {
    w_poly(m)
        .iter()
        .map(|w| ln_abs_bigint(w.numer()) - ln_abs_bigint(w.denom()))
        .collect()
}

/// Precomputed `N = 2` density for one `M`.
///
/// With `u = |lambda|`, `e_k = 4M - 3 - 2k` and `K = Gamma(2M)^2 / Gamma(M)^4`:
/// `rho(u) = K sum_k w_k u^k (1 - u)^(e_k - 1) [e_k u - k (1 - u)]`,
/// i.e. `-lambda d/dlambda` of `K (1 - u)^(4M-3) W(u / (1 - u)^2)`.
#[derive(Debug, Clone)]
pub struct N2Density {
    m_large: usize,
    ln_coeffs: Vec<f64>,
}

impl N2Density {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("M must be at least 1".into()));
        }
        let ln_k = 2.0 * ln_gamma(2.0 * m as f64)? - 4.0 * ln_gamma(m as f64)?;
        let ln_coeffs = w_poly_ln(m).into_iter().map(|w| w + ln_k).collect();
        Ok(Self { m_large: m, ln_coeffs })
    }

    pub fn m_large(&self) -> usize {
        self.m_large
    }

    pub fn density(&self, lambda: f64) -> Result<f64> {
        let u = lambda.abs();
        if !(u < 1.0) {
            return Err(Error::DomainError(format!("|lambda| = {u} must be below 1")));
        }
        if u == 0.0 {
            return Ok(0.0);
        }
        let (ln_u, ln_1mu) = (u.ln(), (-u).ln_1p());
        let mut sum = CompensatedSum::default();
        for (k, &lc) in self.ln_coeffs.iter().enumerate() {
            let e = (4 * self.m_large - 3 - 2 * k) as f64;
            let k = k as f64;
            let bracket = e * u - k * (1.0 - u);
            if bracket == 0.0 {
                continue;
            }
            let l = lc + k * ln_u + (e - 1.0) * ln_1mu + bracket.abs().ln();
            sum.add(bracket.signum() * l.exp());
        }
        Ok(sum.value())
    }
}

/// Single-eigenvalue density of `rho_1 - rho_2` at `N = 2`; even in
/// `lambda`, supported on `(-1, 1)`.
pub fn n2_exact_density(lambda: f64, m: usize) -> Result<f64> {
    N2Density::new(m)?.density(lambda)
}
