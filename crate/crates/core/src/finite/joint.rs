//! Joint eigenvalue density `rho(lambda) = (prod_{p<=N} p!)^-1 Delta(lambda)
//! Delta(-d) psi(lambda)` of `rho_1 - rho_2` at finite `(N, M)`.

use std::collections::HashMap;
use std::f64::consts::LN_2;
use std::sync::{Arc, Mutex};

use super::poly::MixedPoly;
use super::psi::{build_psi_poly_with_budget, OrthantPiecewisePoly, DEFAULT_TERM_BUDGET};
use crate::error::{Error, Result};
use crate::quad::{integrate_breaks, Tolerance};
use crate::specfun::ln_factorial;

/// Distance to an orthant or `R` boundary below which queries are rejected.
pub const BOUNDARY_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_N: usize = 5;

/// Eigenvalues summing to zero, plus the ensemble dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDensityQuery {
    pub lambdas: Vec<f64>,
    pub n: usize,
    pub m: usize,
}

impl JointDensityQuery {
    pub fn new(lambdas: Vec<f64>, n: usize, m: usize) -> Result<Self> {
        if lambdas.len() != n {
            return Err(Error::InvalidParams(format!("{} eigenvalues for N = {n}", lambdas.len())));
        }
        if n > m {
            return Err(Error::DimensionOrder { n, m });
        }
        let total: f64 = lambdas.iter().sum();
        if total.abs() > 1e-12 || lambdas.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams(format!("eigenvalues must sum to 0, sum is {total}")));
        }
        Ok(Self { lambdas, n, m })
    }
}

/// Evaluator with per-orthant derived polynomials cached on first use.
///
/// Densities are with respect to `(lambda_1, ..., lambda_{N-1})` with
/// `lambda_N = -sum_{i<N} lambda_i`.
#[derive(Debug)]
pub struct JointDensity {
    psi: OrthantPiecewisePoly,
    budget: usize,
    ln_norm: f64,
    pieces: Mutex<HashMap<Vec<i8>, Arc<MixedPoly>>>,
}

impl JointDensity {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Self::with_limits(n, m, DEFAULT_MAX_N, DEFAULT_TERM_BUDGET)
    }

    pub fn with_limits(n: usize, m: usize, max_n: usize, budget: usize) -> Result<Self> {
        if n > max_n {
            return Err(Error::SizeLimit { terms: n, budget: max_n });
        }
        let psi = build_psi_poly_with_budget(n, m, budget)?;
        let pairs = n * (n - 1) / 2;
        let ln_prod_fact: f64 = (1..=n as u64).map(ln_factorial).sum();
        // Each difference operator was scaled by 2 to stay integral.
        let ln_norm = psi.ln_prefactor() - ln_prod_fact - pairs as f64 * LN_2;
        Ok(Self {
            psi,
            budget,
            ln_norm,
            pieces: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.psi.n_vars()
    }

    pub fn m(&self) -> usize {
        self.psi.m_large()
    }

    pub fn psi(&self) -> &OrthantPiecewisePoly {
        &self.psi
    }

    /// `2^D prod_{i<j} (d_i - d_j) psi / C` on one orthant.
    pub fn derived_piece(&self, signs: &[i8]) -> Result<Arc<MixedPoly>> {
        if let Some(p) = self.pieces.lock().expect("cache lock").get(signs) {
            return Ok(Arc::clone(p));
        }
        let n = self.n();
        let mut poly = self.psi.mixed().clone();
        for i in 0..n {
            for j in i + 1..n {
                poly = poly.apply_difference(i, j, signs);
                if poly.len() > self.budget {
                    return Err(Error::SizeLimit {
                        terms: poly.len(),
                        budget: self.budget,
                    });
                }
            }
        }
        let poly = Arc::new(poly);
        self.pieces
            .lock()
            .expect("cache lock")
            .insert(signs.to_vec(), Arc::clone(&poly));
        Ok(poly)
    }

    /// Density at an interior point. Zero outside `R`; `BoundaryPoint`
    /// within [`BOUNDARY_TOL`] of an orthant face or of the boundary of `R`.
    pub fn density(&self, lambdas: &[f64]) -> Result<f64> {
        let n = self.n();
        if lambdas.len() != n {
            return Err(Error::InvalidParams(format!("{} eigenvalues for N = {n}", lambdas.len())));
        }
        let u: Vec<f64> = lambdas.iter().map(|x| x.abs()).collect();
        let gamma = 1.0 - 0.5 * u.iter().sum::<f64>();
        if gamma < -BOUNDARY_TOL {
            return Ok(0.0);
        }
        if gamma.abs() <= BOUNDARY_TOL || u.iter().any(|&x| x <= BOUNDARY_TOL) {
            return Err(Error::BoundaryPoint);
        }
        let mut vandermonde = 1.0;
        for i in 0..n {
            for j in i + 1..n {
                vandermonde *= lambdas[j] - lambdas[i];
            }
        }
        if vandermonde == 0.0 {
            return Ok(0.0);
        }
        let signs: Vec<i8> = lambdas.iter().map(|&x| if x > 0.0 { 1 } else { -1 }).collect();
        let piece = self.derived_piece(&signs)?;
        let v = piece.evaluate(gamma, &u)?;
        let value = v.sign * vandermonde.signum() * (v.ln_abs + self.ln_norm + vandermonde.abs().ln()).exp();
        if value < -1e-9 {
            log::warn!("negative joint density {value:e} at {lambdas:?}");
        }
        Ok(value)
    }

    /// Single-eigenvalue marginal at `x` for `N = 2` (direct) and `N = 3`
    /// (quadrature over `lambda_2` with breaks at the orthant faces).
    pub fn marginal(&self, x: f64) -> Result<f64> {
        let point = |l: &[f64]| match self.density(l) {
            Err(Error::BoundaryPoint) => Ok(0.0),
            other => other,
        };
        match self.n() {
            1 => Ok(0.0),
            2 => point(&[x, -x]),
            3 => {
                // max(|x|, |y|, |x + y|) <= 1 on R
                let lo = (-1.0f64).max(-1.0 - x);
                let hi = 1.0f64.min(1.0 - x);
                if !(lo < hi) {
                    return Ok(0.0);
                }
                let mut breaks = vec![lo, hi];
                for b in [0.0, -x, -0.5 * x] {
                    if b > lo && b < hi {
                        breaks.push(b);
                    }
                }
                breaks.sort_by(f64::total_cmp);
                let mut failure = None;
                let r = integrate_breaks(
                    |y| match point(&[x, y, -x - y]) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            0.0
                        }
                    },
                    &breaks,
                    Tolerance::new(1e-10, 1e-9),
                )?;
                match failure {
                    Some(e) => Err(e),
                    None => Ok(r.value),
                }
            }
            n => Err(Error::InvalidParams(format!("marginal implemented for N <= 3, got {n}"))),
        }
    }
}

/// One-shot evaluation; builds the polynomial each call. Prefer
/// [`JointDensity`] for repeated queries.
pub fn joint_eigen_density(q: &JointDensityQuery) -> Result<f64> {
    JointDensity::new(q.n, q.m)?.density(&q.lambdas)
}
