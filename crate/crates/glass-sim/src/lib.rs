//! Direct simulation of the mean-field glass objects that the `rft-core`
//! formulas describe: dense p-spin and Sherrington-Kirkpatrick Hamiltonians,
//! exact Gibbs enumeration at small n, GOE spectra, projected gradient
//! descent on the sphere, and the Monte Carlo estimators that compare all of
//! them against theory.
//!
//! Determinism is the organizing constraint. Every randomized operation
//! draws from a stream keyed by `(component name, root seed, sample index)`
//! (see [`stream_rng`]), Monte Carlo fan-out collects per-sample results in
//! index order before reducing, and the `parallel` feature (on by default)
//! only changes where samples are computed, never their values. Identical
//! seeds give bit-identical outputs on the same build.
//!
//! Dense linear algebra is bounded at [`DENSE_BOUND`] spins and exact
//! enumeration at [`ENUMERATION_BOUND`]; larger requests fail with a sizing
//! error instead of thrashing.

mod coupling;
mod descent;
mod error;
mod gibbs;
mod goe;
mod hamiltonian;
mod measure;
mod parallel;
mod seed;
mod spin;
mod stats;

pub use coupling::{CouplingTensor, COUPLING_BUDGET};
pub use descent::{
    descent_step, spherical_descent, DescentRecord, DescentTrajectory, DIVERGENCE_LIMIT,
};
pub use error::GlassError;
pub use gibbs::{enumerate_gibbs, GibbsEnsemble, GibbsReport, ENUMERATION_BOUND};
pub use goe::{sample_goe, spectrum};
pub use hamiltonian::{
    energy_and_gradient, energy_and_gradient_at, euclidean_gradient, hamiltonian_p_spin,
    hamiltonian_sk, hessian, project_tangent, riemannian_gradient, DENSE_BOUND,
};
pub use measure::{
    covariance_check, covariance_check_at, empirical_index_energy, empirical_index_energy_with,
    tangent_hessian, CovarianceReport, HessianKind, IndexReport, OverlapBin, DEFAULT_OVERLAPS,
};
pub use parallel::{map_samples, map_samples_seq};
pub use seed::stream_rng;
pub use spin::{SpinConfiguration, SpinKind, SPHERE_TOLERANCE};
pub use stats::{ks_distance_to_semicircle, mean_and_stderr, negative_fraction};
