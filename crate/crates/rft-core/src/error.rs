use thiserror::Error;

/// Errors reported by the closed-form landscape operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RftError {
    #[error("mixture must contain at least one (degree, weight) term")]
    EmptyMixture,

    #[error("mixture degree p = {p} is below the minimum degree 2")]
    InvalidDegree { p: u32 },

    #[error("mixture weight {weight} for degree {p} must be finite and >= 0")]
    InvalidWeight { p: u32, weight: f64 },

    #[error("mixture needs at least one strictly positive weight")]
    AllWeightsZero,

    #[error("covariance derivatives (f0 = {f0}, f1 = {f1}, f2 = {f2}) must satisfy f0 > 0, f1 < 0, f2 > 0")]
    InvalidDerivatives { f0: f64, f1: f64, f2: f64 },

    #[error("Q = 0 for this covariance; C2 = 1/(f''(0) Q) is undefined")]
    DegenerateConstants,

    #[error("dimension n must be >= 1")]
    ZeroDimension,

    #[error("curvature scale f2 = {f2} must be strictly positive")]
    NonpositiveCurvature { f2: f64 },

    #[error("mean eigenvalue {lambda_bar} lies outside the semicircle support [-{edge}, {edge}]")]
    OutOfSupport { lambda_bar: f64, edge: f64 },

    #[error("energy {eps} lies outside the index band [{eps_c}, {minus_eps_c}]")]
    OutOfBand {
        eps: f64,
        eps_c: f64,
        minus_eps_c: f64,
    },

    #[error("count {count} must be finite and >= 1")]
    InvalidCount { count: f64 },
}
