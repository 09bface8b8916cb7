//! Dense Hermitian eigensolver.
//!
//! The matrix is reduced to Hermitian tridiagonal form with Householder
//! reflections, the complex off-diagonal is rotated to a real one by a
//! diagonal phase matrix, and the resulting real symmetric tridiagonal
//! matrix is diagonalized with the implicit QL algorithm. Eigenvectors are
//! only accumulated on request.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix, HERMITIAN_TOL};
use crate::error::{Error, Result};

const QL_MAX_SWEEPS: usize = 60;

/// Real eigenvalues of one matrix, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSample {
    pub eigenvalues: Vec<f64>,
    /// `true` once the values have been rescaled to `x = N * lambda`.
    pub rescaled: bool,
}

impl SpectrumSample {
    pub fn raw(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Self {
            eigenvalues,
            rescaled: false,
        }
    }

    /// Multiplies every eigenvalue by `n` (no-op if already rescaled).
    pub fn rescale(mut self, n: usize) -> Self {
        if !self.rescaled {
            let s = n as f64;
            self.eigenvalues.iter_mut().for_each(|x| *x *= s);
            self.rescaled = true;
        }
        self
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Half the sum of absolute values (trace distance for a difference matrix).
    pub fn half_trace_norm(&self) -> f64 {
        0.5 * self.eigenvalues.iter().map(|x| x.abs()).sum::<f64>()
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<SpectrumSample> {
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NonHermitian(dev));
    }
    let (values, _) = decompose(h, false)?;
    Ok(SpectrumSample::raw(values))
}

/// Eigenvalues (ascending) and the unitary whose columns are the matching
/// eigenvectors.
pub fn hermitian_eigen(h: &HermitianMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let (values, vectors) = decompose(h.as_matrix(), true)?;
    let vectors = vectors.expect("vectors requested");
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut sorted_vecs = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            sorted_vecs[(r, new_col)] = vectors[(r, old_col)];
        }
    }
    Ok((order.iter().map(|&i| values[i]).collect(), sorted_vecs))
}

fn decompose(h: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = h.rows();
    let mut a = h.clone();
    let mut q = want_vectors.then(|| ComplexMatrix::identity(n));

    // Householder reduction to tridiagonal form, column by column.
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let norm = (0..m).map(|i| a[(k + 1 + i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * norm;
        for i in 0..m {
            v[i] = a[(k + 1 + i, k)];
        }
        v[0] -= alpha;
        let vnorm = (0..m).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in v.iter_mut().take(m) {
            *vi /= vnorm;
        }

        // Trailing block B <- H B H with H = I - 2 v v^dagger, written as the
        // rank-2 update B - v w^dagger - w v^dagger.
        for i in 0..m {
            let row = &a.as_slice()[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            u[i] = row.iter().zip(&v[..m]).map(|(b, vj)| b * vj).sum();
        }
        let s: f64 = (0..m).map(|i| (v[i].conj() * u[i]).re).sum();
        for i in 0..m {
            u[i] = 2.0 * u[i] - 2.0 * s * v[i];
        }
        for i in 0..m {
            let vi = v[i];
            let wi = u[i];
            let row = &mut a.as_mut_slice()[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            for j in 0..m {
                row[j] -= vi * u[j].conj() + wi * v[j].conj();
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in 1..m {
            a[(k + 1 + i, k)] = Complex64::new(0.0, 0.0);
            a[(k, k + 1 + i)] = Complex64::new(0.0, 0.0);
        }

        if let Some(q) = q.as_mut() {
            // Q <- Q H
            for r in 0..n {
                let row = &mut q.as_mut_slice()[r * n + k + 1..r * n + n];
                let qv: Complex64 = row.iter().zip(&v[..m]).map(|(x, vj)| x * vj).sum();
                for (x, vj) in row.iter_mut().zip(&v[..m]) {
                    *x -= 2.0 * qv * vj.conj();
                }
            }
        }
    }

    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        let off = a[(k + 1, k)];
        let r = off.norm();
        e[k] = r;
        phases[k + 1] = if r > 0.0 { phases[k] * off / r } else { phases[k] };
    }

    let mut z = want_vectors.then(|| {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        z
    });
    tridiagonal_ql(&mut d, &mut e, z.as_deref_mut())?;

    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            // V = Q diag(phases) W
            let mut out = ComplexMatrix::zeros(n, n);
            for r in 0..n {
                for k in 0..n {
                    let qk = q[(r, k)] * phases[k];
                    if qk == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let zrow = &z[k * n..(k + 1) * n];
                    for c in 0..n {
                        out[(r, c)] += qk * zrow[c];
                    }
                }
            }
            Some(out)
        }
        _ => None,
    };
    Ok((d, vectors))
}

/// Implicit QL with Wilkinson-style shifts on a real symmetric tridiagonal
/// matrix. `e[i]` couples rows `i` and `i + 1`; `e[n - 1]` is ignored. When
/// `z` is given (row-major `n x n`), its columns receive the eigenvectors.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    // Absolute floor so that blocks of roundoff-sized entries (zero
    // eigenvalues of rank-deficient inputs) still deflate.
    let norm = (0..n).map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 }).fold(0.0, f64::max);
    let floor = f64::EPSILON * norm;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::NoConvergence("tridiagonal QL iteration"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in 0..i {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn identity_spectrum() {
        let s = hermitian_eigenvalues(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let s = hermitian_eigenvalues(&ComplexMatrix::from_diagonal(&[-0.3, 0.2, 0.1])).unwrap();
        assert_eq!(s.eigenvalues, vec![-0.3, 0.1, 0.2]);
    }

    #[test]
    fn trace_is_preserved() {
        let m = random_hermitian(50, 7);
        let s = hermitian_eigenvalues(&m).unwrap();
        assert!((s.sum() - m.trace().re).abs() < 1e-9);
    }

    #[test]
    fn reconstruction_residual() {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (40, 4)] {
            let m = random_hermitian(n, seed);
            let h = HermitianMatrix::new(m.clone()).unwrap();
            let (vals, v) = hermitian_eigen(&h).unwrap();
            let lambda = ComplexMatrix::from_diagonal(&vals);
            let rebuilt = v.matmul(&lambda).unwrap().matmul(&v.adjoint()).unwrap();
            assert!(rebuilt.max_abs_diff(&m) <= 1e-9 * m.max_abs(), "n = {n}");
            let gram = v.adjoint().matmul(&v).unwrap();
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NonHermitian(_))));
    }

    #[test]
    fn agrees_with_nalgebra() {
        let n = 30;
        let m = random_hermitian(n, 11);
        let na = nalgebra::DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
        let mut expected: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
        expected.sort_by(f64::total_cmp);
        let got = hermitian_eigenvalues(&m).unwrap().eigenvalues;
        for (a, b) in got.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn rank_deficient_differences_converge() {
        use crate::linalg::{sample_difference, EnsembleParams};
        let params = EnsembleParams::symmetric(100, 20, 9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let h = sample_difference(&params, &mut rng).unwrap();
            let spec = hermitian_eigenvalues(h.as_matrix()).unwrap();
            let zeros = spec.eigenvalues.iter().filter(|x| x.abs() < 1e-12).count();
            assert_eq!(zeros, 60);
            assert!(spec.sum().abs() < 1e-12);
        }
    }
}
