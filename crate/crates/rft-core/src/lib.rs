//! Closed-form landscape statistics for mixed p-spin models and the
//! equivalent isotropic Gaussian random fields on the N-sphere.
//!
//! The crate is organized around three small value types:
//!
//! * [`CovarianceModel`] — a mixture `{(p, gamma_p)}` defining the overlap
//!   covariance `xi(q) = sum_p gamma_p q^p`, together with the derivatives
//!   `f(0), f'(0), f''(0)` of the equivalent isotropic covariance
//!   `f(u) = xi(1 - u)`.
//! * [`LandscapeConstants`] — the scalars `P, Q, eps_c, C1, C2` and the 2x2
//!   matrix `M` that determine the quadratic complexity surface and the
//!   critical-point index curve of the landscape.
//! * [`ComplexityPoint`] — one row of a theory table: energy, most likely
//!   mean Hessian eigenvalue, complexity, and index fraction.
//!
//! Everything here is closed form; no sampling or linear algebra. The
//! simulation counterparts live in the `glass-sim` crate.

mod complexity;
mod constants;
mod covariance;
mod error;
mod spectrum;

pub use complexity::{
    complexity, complexity_gradient, complexity_point, convexifying_strength, count_to_complexity,
    effective_lr_factor, index_from_energy, most_likely_mean_eigenvalue, psi, ComplexityPoint,
};
pub use constants::LandscapeConstants;
pub use covariance::CovarianceModel;
pub use error::RftError;
pub use spectrum::{index_from_mean_eigenvalue, semicircle_cdf, semicircle_density, SupportMode};
