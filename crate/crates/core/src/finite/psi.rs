//! Joint law of the diagonal entries of `rho_1 - rho_2`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::MixedPoly;
use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

pub const DEFAULT_TERM_BUDGET: usize = 10_000_000;

/// The smooth factor `psi` of the diagonal law `delta(sum z) psi(z) I_R(z)`:
///
/// `psi = C sum_k a_k phi_{L - |k|}(gamma) prod |z_i|^k_i` with
/// `C = Gamma(MN)^2 / Gamma(M)^N`, `L = N(2M - 1) - 1` and
/// `a_k = prod_i (2(M-1) - k_i)! / (k_i! (M-1-k_i)!)`.
///
/// On each sign orthant `|z_i| = s_i z_i` and `psi` is a polynomial; see
/// [`OrthantPiecewisePoly::piece`].
#[derive(Debug, Clone)]
pub struct OrthantPiecewisePoly {
    n_vars: usize,
    m_large: usize,
    ln_prefactor: f64,
    poly: MixedPoly,
}

/// `(2m - k)! / (k! (m - k)!)` for `k = 0..=m`.
pub(crate) fn laguerre_coefficients(m: usize) -> Vec<BigInt> {
    (0..=m)
        .map(|k| {
            let num: BigInt = ((m - k + 1)..=(2 * m - k)).map(BigInt::from).product();
            let den: BigInt = (1..=k).map(BigInt::from).product();
            num / den
        })
        .collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn build_psi_poly(n: usize, m: usize) -> Result<OrthantPiecewisePoly> {
    build_psi_poly_with_budget(n, m, DEFAULT_TERM_BUDGET)
}

pub fn build_psi_poly_with_budget(n: usize, m: usize, budget: usize) -> Result<OrthantPiecewisePoly> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams("N and M must be at least 1".into()));
    }
    if n > m {
        return Err(Error::DimensionOrder { n, m });
    }
    let terms = (m as f64).powi(n as i32);
    if terms > budget as f64 {
        return Err(Error::SizeLimit {
            terms: terms.min(usize::MAX as f64) as usize,
            budget,
        });
    }
    let coeffs = laguerre_coefficients(m - 1);
    let l_total = (n * (2 * m - 1) - 1) as u32;
    let mut poly = MixedPoly::new(n);
    let mut k = vec![0u32; n];
    loop {
        let degree: u32 = k.iter().sum();
        let mut key = Vec::with_capacity(n + 1);
        key.push(l_total - degree);
        key.extend_from_slice(&k);
        let a: BigInt = k.iter().map(|&ki| coeffs[ki as usize].clone()).product();
        poly.add_term(key, a);
        // Odometer over {0..m-1}^n.
        let mut pos = 0;
        while pos < n {
            k[pos] += 1;
            if (k[pos] as usize) < m {
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    let ln_prefactor = 2.0 * ln_gamma((m * n) as f64)? - n as f64 * ln_gamma(m as f64)?;
    Ok(OrthantPiecewisePoly {
        n_vars: n,
        m_large: m,
        ln_prefactor,
        poly,
    })
}

impl OrthantPiecewisePoly {
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn m_large(&self) -> usize {
        self.m_large
    }

    /// `ln C`.
    pub fn ln_prefactor(&self) -> f64 {
        self.ln_prefactor
    }

    /// Exact `C = Gamma(MN)^2 / Gamma(M)^N`.
    pub fn prefactor_exact(&self) -> BigRational {
        let num = factorial(self.m_large * self.n_vars - 1).pow(2);
        let den = factorial(self.m_large - 1).pow(self.n_vars as u32);
        BigRational::new(num, den)
    }

    /// Polynomial part in the mixed basis, without the prefactor.
    pub fn mixed(&self) -> &MixedPoly {
        &self.poly
    }

    /// `psi(z)` (no delta, no indicator check beyond returning 0 outside
    /// `R`). Does not require `sum z = 0`.
    pub fn evaluate(&self, z: &[f64]) -> Result<f64> {
        if z.len() != self.n_vars {
            return Err(Error::InvalidParams(format!(
                "expected {} coordinates, got {}",
                self.n_vars,
                z.len()
            )));
        }
        let u: Vec<f64> = z.iter().map(|x| x.abs()).collect();
        let gamma = 1.0 - 0.5 * u.iter().sum::<f64>();
        if gamma < 0.0 {
            return Ok(0.0);
        }
        let v = self.poly.evaluate(gamma, &u)?;
        Ok(v.sign * (v.ln_abs + self.ln_prefactor).exp())
    }

    /// The polynomial in `z` that equals `psi` on the orthant `signs`
    /// (entries `+1` / `-1`), as `exponent vector -> exact coefficient`.
    pub fn piece(&self, signs: &[i8]) -> Result<BTreeMap<Vec<u32>, BigRational>> {
        if signs.len() != self.n_vars || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidParams("sign vector must hold N entries of +-1".into()));
        }
        let n = self.n_vars;
        let max_n = self.poly.terms().map(|(k, _)| k[0]).max().unwrap_or(0);
        let monomials = binomial_f64(max_n as usize + n, n);
        if monomials * max_n as f64 > DEFAULT_TERM_BUDGET as f64 {
            return Err(Error::SizeLimit {
                terms: (monomials * max_n as f64) as usize,
                budget: DEFAULT_TERM_BUDGET,
            });
        }
        let mut by_n: BTreeMap<u32, Vec<(&[u32], &BigInt)>> = BTreeMap::new();
        for (key, c) in self.poly.terms() {
            by_n.entry(key[0]).or_default().push((key, c));
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let linear: Vec<BigRational> = signs.iter().map(|&s| -&half * BigInt::from(s)).collect();
        let prefactor = self.prefactor_exact();

        let mut out: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        // gamma^p as a polynomial in z.
        let mut gpow: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        gpow.insert(vec![0; n], BigRational::one());
        let mut fact = BigInt::one();
        for p in 0..=max_n {
            if p > 0 {
                fact *= BigInt::from(p);
                let mut next: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
                for (e, c) in &gpow {
                    *next.entry(e.clone()).or_insert_with(BigRational::zero) += c;
                    for i in 0..n {
                        let mut e2 = e.clone();
                        e2[i] += 1;
                        *next.entry(e2).or_insert_with(BigRational::zero) += c * &linear[i];
                    }
                }
                gpow = next;
            }
            let Some(group) = by_n.get(&p) else { continue };
            for &(key, a) in group {
                let sign: i32 = key[1..]
                    .iter()
                    .zip(signs)
                    .map(|(&e, &s)| if e % 2 == 1 { i32::from(s) } else { 1 })
                    .product();
                let scale = BigRational::new(a * BigInt::from(sign), fact.clone()) * &prefactor;
                for (e, c) in &gpow {
                    let exps: Vec<u32> = e.iter().zip(&key[1..]).map(|(x, y)| x + y).collect();
                    *out.entry(exps).or_insert_with(BigRational::zero) += c * &scale;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// CSV dump of every orthant piece: `s_1..s_N, e_1..e_N, coefficient,
    /// exact`.
    pub fn dump_csv(&self) -> Result<String> {
        let n = self.n_vars;
        let mut s = String::new();
        let header: Vec<String> = (1..=n)
            .map(|i| format!("s{i}"))
            .chain((1..=n).map(|i| format!("e{i}")))
            .chain(["coefficient".to_string(), "exact".to_string()])
            .collect();
        s.push_str(&header.join(","));
        s.push('\n');
        for bits in 0..(1u32 << n) {
            let signs: Vec<i8> = (0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
            for (e, c) in self.piece(&signs)? {
                for sg in &signs {
                    let _ = write!(s, "{sg},");
                }
                for x in &e {
                    let _ = write!(s, "{x},");
                }
                let _ = writeln!(s, "{:.16e},{}", c.to_f64().unwrap_or(f64::NAN), c);
            }
        }
        Ok(s)
    }
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
