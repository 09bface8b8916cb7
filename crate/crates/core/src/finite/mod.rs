//! Exact finite-`(N, M)` laws: the diagonal-element density, the joint
//! eigenvalue density through the derivative principle, and the `N = 2`
//! closed form.

pub mod joint;
pub mod n2;
pub mod poly;
pub mod psi;
pub mod selftest;

pub use joint::{joint_eigen_density, JointDensity, JointDensityQuery, BOUNDARY_TOL};
pub use n2::{n2_exact_density, w_poly, N2Density};
pub use poly::MixedPoly;
pub use psi::{build_psi_poly, build_psi_poly_with_budget, OrthantPiecewisePoly, DEFAULT_TERM_BUDGET};
pub use selftest::{derivative_principle_selftest, SelftestReport};
