use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmtdiff::linalg::{hermitian_eigenvalues, sample_difference, sample_ftwl, EnsembleParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn density_matrices_are_states(n in 1usize..7, m in 1usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = sample_ftwl(n, m, &mut rng).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() <= 1e-10);
        let spec = hermitian_eigenvalues(rho.as_matrix()).unwrap();
        prop_assert!(spec.eigenvalues[0] >= -1e-10);
    }

    #[test]
    fn difference_spectrum_bounds(n in 1usize..8, m in 1usize..5, seed in any::<u64>()) {
        let params = EnsembleParams::symmetric(n, m, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = sample_difference(&params, &mut rng).unwrap();
        let spec = hermitian_eigenvalues(z.as_matrix()).unwrap();
        prop_assert!(spec.eigenvalues.iter().all(|&x| (-1.0 - 1e-12..=1.0 + 1e-12).contains(&x)));
        prop_assert!(spec.sum().abs() < 1e-10);
        let rank = spec.eigenvalues.iter().filter(|x| x.abs() > 1e-9).count();
        prop_assert!(rank <= n.min(2 * params.m_large));
    }
}

#[test]
fn rank_deficient_when_n_exceeds_2m() {
    let params = EnsembleParams::new(9, 3, 1.0, 1.0, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let z = sample_difference(&params, &mut rng).unwrap();
        let spec = hermitian_eigenvalues(z.as_matrix()).unwrap();
        assert!(spec.eigenvalues.iter().filter(|x| x.abs() > 1e-9).count() <= 6);
    }
}

#[test]
fn same_seed_same_stream() {
    let params = EnsembleParams::symmetric(4, 6, 99).unwrap();
    let draw = || {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        (0..5)
            .flat_map(|_| hermitian_eigenvalues(sample_difference(&params, &mut rng).unwrap().as_matrix()).unwrap().eigenvalues)
            .collect::<Vec<f64>>()
    };
    assert_eq!(draw(), draw());
}

#[test]
fn symmetric_ensemble_has_centred_spectrum() {
    let params = EnsembleParams::symmetric(6, 8, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pooled = Vec::new();
    for _ in 0..1000 {
        let z = sample_difference(&params, &mut rng).unwrap();
        pooled.extend(hermitian_eigenvalues(z.as_matrix()).unwrap().eigenvalues.into_iter().map(|x| x.powi(3)));
    }
    // the trace vanishes identically, so test the odd third moment instead
    let n = pooled.len() as f64;
    let mean = pooled.iter().sum::<f64>() / n;
    let var = pooled.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    assert!(mean.abs() < 3.0 * (var / n).sqrt(), "{mean}");
}
