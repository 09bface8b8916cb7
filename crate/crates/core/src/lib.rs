//! Spectral statistics of the difference of two independent random reduced
//! density matrices.
//!
//! - [`linalg`]: sampling `Z = p rho_1 - q rho_2` and Hermitian eigenvalues.
//! - [`specfun`]: log-gamma, Gauss hypergeometric series, the Laguerre sum.
//! - [`finite`]: exact finite-`(N, M)` densities (diagonal-element law,
//!   derivative principle, closed `N = 2` marginal).
//! - [`asym`]: asymptotic eigenvalue density, Cauchy-transform cubic,
//!   Marchenko-Pastur baseline.
//! - [`moments`]: absolute moments and distance asymptotics.

pub mod asym;
pub mod error;
pub mod finite;
pub mod linalg;
pub mod moments;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
