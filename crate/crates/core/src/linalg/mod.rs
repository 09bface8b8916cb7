//! Sampling of random bipartite states and fixed-trace Wishart-Laguerre
//! density matrices, difference matrices, and Hermitian eigenvalues.

pub mod eigen;
pub mod ensemble;
pub mod matrix;
pub mod rng;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, SpectrumSample};
pub use ensemble::{
    page_entropy_mean, reduced_density_from_ginibre, sample_difference, sample_ftwl, sample_ginibre,
    sample_pure_state_reduced, von_neumann_entropy, EnsembleParams,
};
pub use matrix::{ComplexMatrix, DensityMatrix, HermitianMatrix, HERMITIAN_TOL};
pub use rng::{worker_rng, worker_seed, StreamRng};
