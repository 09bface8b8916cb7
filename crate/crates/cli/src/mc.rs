//! Seeded parallel Monte Carlo. Worker `w` owns the stream
//! `worker_rng(seed, w)` and a share of the draws fixed before the run, and
//! results are concatenated in worker order, so the output depends only on
//! `(seed, samples, workers)`.

use rayon::prelude::*;
use rmtdiff::linalg::{
    hermitian_eigenvalues, sample_difference, sample_pure_state_reduced, von_neumann_entropy, worker_rng,
    EnsembleParams, SpectrumSample, StreamRng,
};

use crate::error::{CliError, CliResult};

/// Draw counts per worker; the first `samples % workers` get one extra.
pub fn split_counts(samples: usize, workers: usize) -> Vec<usize> {
    let (base, extra) = (samples / workers, samples % workers);
    (0..workers).map(|w| base + usize::from(w < extra)).collect()
}

pub fn parallel_draws<T, F>(seed: u64, samples: usize, workers: usize, draw: F) -> CliResult<Vec<T>>
where
    T: Send,
    F: Fn(&mut StreamRng) -> rmtdiff::Result<T> + Sync,
{
    if workers == 0 {
        return Err(CliError::Usage("workers must be at least 1".into()));
    }
    let counts = split_counts(samples, workers);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    let per_worker: Vec<rmtdiff::Result<Vec<T>>> = pool.install(|| {
        counts
            .par_iter()
            .enumerate()
            .map(|(w, &count)| {
                let mut rng = worker_rng(seed, w as u64);
                (0..count).map(|_| draw(&mut rng)).collect()
            })
            .collect()
    });
    let mut out = Vec::with_capacity(samples);
    for chunk in per_worker {
        out.extend(chunk?);
    }
    Ok(out)
}

/// Spectra of `p rho_1 - q rho_2`, rescaled to `x = N lambda`.
pub fn sample_spectra(params: &EnsembleParams, samples: usize, workers: usize) -> CliResult<Vec<SpectrumSample>> {
    parallel_draws(params.seed, samples, workers, |rng| {
        let z = sample_difference(params, rng)?;
        Ok(hermitian_eigenvalues(z.as_matrix())?.rescale(params.n_small))
    })
}

/// Entanglement entropies (nats) of Haar-random `N x M` pure states.
pub fn sample_entropies(params: &EnsembleParams, samples: usize, workers: usize) -> CliResult<Vec<f64>> {
    parallel_draws(params.seed, samples, workers, |rng| {
        von_neumann_entropy(&sample_pure_state_reduced(params, rng)?)
    })
}

/// Sample mean and its standard error.
pub fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_cover_all_samples() {
        assert_eq!(split_counts(10, 3), vec![4, 3, 3]);
        assert_eq!(split_counts(2, 4), vec![1, 1, 0, 0]);
        assert_eq!(split_counts(9, 1), vec![9]);
    }

    #[test]
    fn deterministic_for_fixed_workers() {
        let params = EnsembleParams::symmetric(3, 4, 17).unwrap();
        let a = sample_spectra(&params, 13, 3).unwrap();
        let b = sample_spectra(&params, 13, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 13);
        assert!(a.iter().all(|s| s.rescaled && s.len() == 3));
    }

    #[test]
    fn mean_and_error() {
        let (m, e) = mean_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((e - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
    }
}
