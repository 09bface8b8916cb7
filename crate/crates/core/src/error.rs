use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("matrix has zero trace norm")]
    ZeroMatrix,

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NonHermitian(f64),

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("dimension order violated: n = {n} must not exceed m = {m}")]
    DimensionOrder { n: usize, m: usize },

    #[error("argument outside domain: {0}")]
    DomainError(String),

    #[error("pole encountered: {0}")]
    PoleError(String),

    #[error("term budget exceeded: {terms} terms > budget {budget}")]
    SizeLimit { terms: usize, budget: usize },

    #[error("query point lies on or near an orthant or support boundary")]
    BoundaryPoint,

    #[error("Cauchy transform branch is ambiguous at z = {re} + {im}i")]
    BranchAmbiguity { re: f64, im: f64 },

    #[error("quadrature failed to reach tolerance (error estimate {0:e})")]
    QuadratureFailure(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
