//! Log-gamma, Gauss hypergeometric `2F1` and the associated-Laguerre sum.

pub mod gamma;
pub mod hyper;
pub mod laguerre;

pub use gamma::{gamma_complex, ln_binomial, ln_factorial, ln_gamma, recip_gamma_complex};
pub use hyper::{gauss_2f1, gauss_2f1_real, HypergeometricQuery};
pub use laguerre::laguerre_sum;
