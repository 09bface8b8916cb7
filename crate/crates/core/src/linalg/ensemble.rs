//! Random bipartite states, fixed-trace Wishart-Laguerre draws and their
//! weighted differences.

use rand::Rng;

use super::eigen::hermitian_eigenvalues;
use super::matrix::{ComplexMatrix, DensityMatrix, HermitianMatrix};
use super::rng::complex_normal;
use crate::error::{Error, Result};

/// Dimensions and weights of the ensemble `Z = p rho_1 - q rho_2`, with
/// `rho_i` reduced density matrices on the `N`-dimensional factor of an
/// `N x M` bipartite pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleParams {
    pub n_small: usize,
    pub m_large: usize,
    pub weight_p: f64,
    pub weight_q: f64,
    pub seed: u64,
}

impl EnsembleParams {
    pub fn new(n_small: usize, m_large: usize, weight_p: f64, weight_q: f64, seed: u64) -> Result<Self> {
        let p = Self {
            n_small,
            m_large,
            weight_p,
            weight_q,
            seed,
        };
        p.validate()?;
        Ok(p)
    }

    /// Equal unit weights, `Z = rho_1 - rho_2`.
    pub fn symmetric(n_small: usize, m_large: usize, seed: u64) -> Result<Self> {
        Self::new(n_small, m_large, 1.0, 1.0, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_small == 0 || self.m_large == 0 {
            return Err(Error::InvalidParams("N and M must be at least 1".into()));
        }
        let ok = |w: f64| w.is_finite() && w > 0.0;
        if !ok(self.weight_p) || !ok(self.weight_q) {
            return Err(Error::InvalidParams(format!(
                "weights must be finite and positive (p = {}, q = {})",
                self.weight_p, self.weight_q
            )));
        }
        Ok(())
    }

    /// `c = N / M`.
    pub fn ratio(&self) -> f64 {
        self.n_small as f64 / self.m_large as f64
    }

    /// `eta = q / p`.
    pub fn eta(&self) -> f64 {
        self.weight_q / self.weight_p
    }

    pub fn is_symmetric(&self) -> bool {
        self.weight_p == self.weight_q
    }
}

/// `n_rows x n_cols` matrix of i.i.d. complex Gaussians (unit variance per
/// real component).
pub fn sample_ginibre<R: Rng + ?Sized>(n_rows: usize, n_cols: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..n_rows * n_cols).map(|_| complex_normal(rng)).collect();
    ComplexMatrix::from_vec(n_rows, n_cols, data).expect("positive dimensions")
}

/// `G G^dagger / Tr(G G^dagger)`.
pub fn reduced_density_from_ginibre(g: &ComplexMatrix) -> Result<DensityMatrix> {
    let gram = g.gram();
    let tr = gram.trace().re;
    if tr <= 0.0 || !tr.is_finite() {
        return Err(Error::ZeroMatrix);
    }
    DensityMatrix::new(gram.scale(1.0 / tr))
}

/// Haar-random pure state on `C^N (x) C^M`, traced over the `M` factor.
pub fn sample_pure_state_reduced<R: Rng + ?Sized>(params: &EnsembleParams, rng: &mut R) -> Result<DensityMatrix> {
    params.validate()?;
    let (n, m) = (params.n_small, params.m_large);
    let mut psi: Vec<_> = (0..n * m).map(|_| complex_normal(rng)).collect();
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    psi.iter_mut().for_each(|z| *z /= norm);

    // rho_{ij} = sum_a psi_{(i, a)} conj(psi_{(j, a)})
    let mut rho = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for a in 0..m {
                acc += psi[i * m + a] * psi[j * m + a].conj();
            }
            rho[(i, j)] = acc;
            rho[(j, i)] = acc.conj();
        }
        rho[(i, i)].im = 0.0;
    }
    // Renormalize away the rounding in |psi|^2.
    let tr = rho.trace().re;
    DensityMatrix::new(rho.scale(1.0 / tr))
}

/// One FTWL draw with parameters `(N, M)`.
pub fn sample_ftwl<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<DensityMatrix> {
    reduced_density_from_ginibre(&sample_ginibre(n, m, rng))
}

/// `p rho_1 - q rho_2` for independent FTWL draws.
pub fn sample_difference<R: Rng + ?Sized>(params: &EnsembleParams, rng: &mut R) -> Result<HermitianMatrix> {
    params.validate()?;
    let rho1 = sample_ftwl(params.n_small, params.m_large, rng)?;
    let rho2 = sample_ftwl(params.n_small, params.m_large, rng)?;
    let z = rho1
        .as_matrix()
        .linear_combination(params.weight_p, rho2.as_matrix(), -params.weight_q)?;
    HermitianMatrix::new(z)
}

/// Von Neumann entropy `-Tr(rho ln rho)` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spec = hermitian_eigenvalues(rho.as_matrix())?;
    Ok(spec
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum())
}

/// Mean entanglement entropy of a Haar-random `N x M` pure state,
/// `sum_{k=M+1}^{MN} 1/k - (N - 1) / (2M)`.
pub fn page_entropy_mean(n: usize, m: usize) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams("N and M must be at least 1".into()));
    }
    if n > m {
        return Err(Error::DimensionOrder { n, m });
    }
    let upper = m * n;
    let harmonic_tail = if upper <= 10_000_000 {
        // Summing from the small end keeps the rounding error down.
        (m + 1..=upper).rev().map(|k| 1.0 / k as f64).sum::<f64>()
    } else {
        harmonic(upper as f64) - harmonic(m as f64)
    };
    Ok(harmonic_tail - (n as f64 - 1.0) / (2.0 * m as f64))
}

/// Asymptotic harmonic number, adequate for arguments above 10^6.
fn harmonic(n: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    let inv = 1.0 / n;
    n.ln() + EULER_GAMMA + 0.5 * inv - inv * inv / 12.0 + inv.powi(4) / 120.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rng::worker_rng;

    #[test]
    fn ginibre_shape_and_determinism() {
        let g = sample_ginibre(2, 3, &mut worker_rng(1, 0));
        assert_eq!((g.rows(), g.cols()), (2, 3));
        assert_eq!(g.as_slice().len(), 6);
        let h = sample_ginibre(2, 3, &mut worker_rng(1, 0));
        assert_eq!(g, h);
    }

    #[test]
    fn ginibre_second_moment() {
        let mut rng = worker_rng(5, 0);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| sample_ginibre(1, 1, &mut rng)[(0, 0)].norm_sqr())
            .sum::<f64>()
            / n as f64;
        // |g|^2 is exponential with mean 2 and standard deviation 2.
        let sigma = 2.0 / (n as f64).sqrt();
        assert!((mean - 2.0).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn one_by_one_normalizes_to_one() {
        let g = ComplexMatrix::from_vec(1, 1, vec![num_complex::Complex64::new(-0.3, 2.0)]).unwrap();
        let rho = reduced_density_from_ginibre(&g).unwrap();
        assert!((rho.as_matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_ginibre_gives_maximally_mixed() {
        let rho = reduced_density_from_ginibre(&ComplexMatrix::identity(2)).unwrap();
        assert!(rho.as_matrix().max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn zero_matrix_rejected() {
        assert_eq!(
            reduced_density_from_ginibre(&ComplexMatrix::zeros(2, 2)).unwrap_err(),
            Error::ZeroMatrix
        );
    }

    #[test]
    fn pure_state_path_with_n_one() {
        let params = EnsembleParams::symmetric(1, 7, 0).unwrap();
        let rho = sample_pure_state_reduced(&params, &mut worker_rng(0, 0)).unwrap();
        assert!((rho.as_matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn difference_trace_and_small_n() {
        let mut rng = worker_rng(9, 0);
        let params = EnsembleParams::new(1, 4, 0.7, 0.2, 0).unwrap();
        let z = sample_difference(&params, &mut rng).unwrap();
        assert!((z.as_matrix()[(0, 0)].re - 0.5).abs() < 1e-15);

        let params = EnsembleParams::symmetric(6, 3, 0).unwrap();
        for _ in 0..20 {
            let z = sample_difference(&params, &mut rng).unwrap();
            assert!(z.trace().abs() < 1e-10);
        }
    }

    #[test]
    fn rank_deficiency_gives_zero_eigenvalues() {
        let params = EnsembleParams::symmetric(100, 20, 0).unwrap();
        let mut rng = worker_rng(2, 0);
        let z = sample_difference(&params, &mut rng).unwrap();
        let spec = hermitian_eigenvalues(z.as_matrix()).unwrap();
        let zeros = spec.eigenvalues.iter().filter(|l| l.abs() < 1e-10).count();
        assert!(zeros >= 60, "{zeros} zero eigenvalues");
        assert!(spec.eigenvalues.iter().all(|l| (-1.0..=1.0).contains(l)));
    }

    #[test]
    fn page_formula_values() {
        assert_eq!(page_entropy_mean(1, 5).unwrap(), 0.0);
        assert!((page_entropy_mean(2, 2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(page_entropy_mean(3, 2).unwrap_err(), Error::DimensionOrder { n: 3, m: 2 });
        // <S> ~ ln N up to O(N / M)
        let (n, m) = (50, 50_000);
        let s = page_entropy_mean(n, m).unwrap();
        assert!((s - (n as f64).ln()).abs() < 2.0 * n as f64 / m as f64);
    }

    #[test]
    fn page_formula_large_arguments_switch_smoothly() {
        // 2 * 5_000_000 sits on the direct-sum side, 2 * 5_000_001 on the asymptotic side.
        let a = page_entropy_mean(2, 5_000_000).unwrap();
        let b = page_entropy_mean(2, 5_000_001).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(EnsembleParams::new(0, 3, 1.0, 1.0, 0).is_err());
        assert!(EnsembleParams::new(2, 3, -1.0, 1.0, 0).is_err());
        assert!(EnsembleParams::new(2, 3, 1.0, f64::NAN, 0).is_err());
    }
}
