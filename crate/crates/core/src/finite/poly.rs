//! Polynomials in the mixed basis `phi_n(gamma) * u^e`, where
//! `phi_n(g) = g^n / n!`, `gamma = 1 - (1/2) sum u_i` and `u_i = |z_i|`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::specfun::ln_factorial;

/// Above this cancellation ratio `sum |t| / |sum t|` the float evaluation is
/// replaced by an exact rational one.
const MAX_FLOAT_CONDITION: f64 = 1e5;

/// `ln x` for arbitrarily large unsigned integers.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().unwrap_or(f64::NAN).ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * LN_2
    }
}

pub(crate) fn ln_abs_bigint(x: &BigInt) -> f64 {
    ln_biguint(x.magnitude())
}

/// Signed value stored as `sign * exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LogValue {
    pub sign: f64,
    pub ln_abs: f64,
}

impl LogValue {
    pub const ZERO: Self = Self {
        sign: 0.0,
        ln_abs: f64::NEG_INFINITY,
    };

    #[cfg(test)]
    pub fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    fn from_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::ZERO;
        }
        Self {
            sign: if r.is_negative() { -1.0 } else { 1.0 },
            ln_abs: ln_abs_bigint(r.numer()) - ln_abs_bigint(r.denom()),
        }
    }
}

/// Neumaier-compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Key layout: `[n, e_1, ..., e_N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedPoly {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MixedPoly {
    pub(crate) fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub(crate) fn add_term(&mut self, key: Vec<u32>, coeff: BigInt) {
        debug_assert_eq!(key.len(), self.n_vars + 1);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Applies `2 (d/dz_i - d/dz_j)` on the orthant with signs `signs`
    /// (`u_k = s_k z_k`).
    pub(crate) fn apply_difference(&self, i: usize, j: usize, signs: &[i8]) -> Self {
        let (si, sj) = (i64::from(signs[i]), i64::from(signs[j]));
        let mut out = Self::new(self.n_vars);
        for (key, c) in &self.terms {
            let n = key[0];
            if n >= 1 && sj != si {
                let mut k = key.clone();
                k[0] -= 1;
                out.add_term(k, c * (sj - si));
            }
            let (ei, ej) = (key[1 + i], key[1 + j]);
            if ei > 0 {
                let mut k = key.clone();
                k[1 + i] -= 1;
                out.add_term(k, c * (2 * si * i64::from(ei)));
            }
            if ej > 0 {
                let mut k = key.clone();
                k[1 + j] -= 1;
                out.add_term(k, c * (-2 * sj * i64::from(ej)));
            }
        }
        out
    }

    /// `sum_terms c * phi_n(gamma) * prod u_i^e_i` as a log value.
    ///
    /// Terms with `u_i = 0` and `e_i > 0` vanish. Falls back to exact
    /// rational arithmetic under heavy cancellation.
    pub(crate) fn evaluate(&self, gamma: f64, u: &[f64]) -> Result<LogValue> {
        if u.len() != self.n_vars {
            return Err(Error::InvalidParams(format!(
                "expected {} coordinates, got {}",
                self.n_vars,
                u.len()
            )));
        }
        let ln_g = gamma.ln();
        let ln_u: Vec<f64> = u.iter().map(|x| x.ln()).collect();
        let mut logs = Vec::with_capacity(self.terms.len());
        for (key, c) in &self.terms {
            let n = key[0];
            let mut l = ln_abs_bigint(c) - ln_factorial(u64::from(n));
            if n > 0 {
                l += f64::from(n) * ln_g;
            }
            for (&e, &lu) in key[1..].iter().zip(&ln_u) {
                if e > 0 {
                    l += f64::from(e) * lu;
                }
            }
            if l == f64::NEG_INFINITY {
                continue;
            }
            let s = if c.is_negative() { -1.0 } else { 1.0 };
            logs.push((s, l));
        }
        if logs.is_empty() {
            return Ok(LogValue::ZERO);
        }
        let lmax = logs.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
        let mut sum = CompensatedSum::default();
        let mut abs = 0.0;
        for &(s, l) in &logs {
            let t = (l - lmax).exp();
            sum.add(s * t);
            abs += t;
        }
        let total = sum.value();
        if total != 0.0 && abs / total.abs() <= MAX_FLOAT_CONDITION {
            return Ok(LogValue {
                sign: total.signum(),
                ln_abs: lmax + total.abs().ln(),
            });
        }
        Ok(LogValue::from_rational(&self.evaluate_exact(gamma, u)))
    }

    /// Exact value at the (dyadic) floating-point point.
    pub(crate) fn evaluate_exact(&self, gamma: f64, u: &[f64]) -> BigRational {
        let to_rat = |x: f64| BigRational::from_float(x).expect("finite coordinate");
        let max_n = self.terms.keys().map(|k| k[0]).max().unwrap_or(0) as usize;
        let g = to_rat(gamma);
        let mut phi = vec![BigRational::one(); max_n + 1];
        for n in 1..=max_n {
            phi[n] = &phi[n - 1] * &g / BigInt::from(n);
        }
        let upow: Vec<Vec<BigRational>> = (0..self.n_vars)
            .map(|i| {
                let max_e = self.terms.keys().map(|k| k[1 + i]).max().unwrap_or(0) as usize;
                let x = to_rat(u[i]);
                let mut p = vec![BigRational::one(); max_e + 1];
                for e in 1..=max_e {
                    p[e] = &p[e - 1] * &x;
                }
                p
            })
            .collect();
        let mut total = BigRational::zero();
        for (key, c) in &self.terms {
            let mut t = &phi[key[0] as usize] * c;
            for (i, &e) in key[1..].iter().enumerate() {
                if e > 0 {
                    t *= &upow[i][e as usize];
                }
            }
            total += t;
        }
        total
    }
}
