use thiserror::Error;

/// Errors reported by the simulation operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GlassError {
    #[error("coupling tensor needs n >= 2 and p >= 2, got n = {n}, p = {p}")]
    BadShape { n: usize, p: u32 },

    #[error("coupling tensor with n^p = {requested} values exceeds the budget of {budget} (n = {n}, p = {p})")]
    TensorTooLarge {
        n: usize,
        p: u32,
        requested: u128,
        budget: usize,
    },

    #[error("configuration has {got} spins, the coupling tensor expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation needs a coupling tensor of order p = {expected}, got p = {got}")]
    WrongOrder { expected: u32, got: u32 },

    #[error("configuration is not binary: sigma[{index}] = {value}")]
    NotBinary { index: usize, value: f64 },

    #[error("operation needs hard spins; got a spherical configuration")]
    BinaryRequired,

    #[error("configuration is off the radius-sqrt(n) sphere: |sum sigma^2 - n| = {defect:e} exceeds 1e-9")]
    NotSpherical { defect: f64 },

    #[error("exact enumeration over 2^n states needs n <= {max}, got n = {n}")]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("dense Hessian path needs n <= {max}, got n = {n}")]
    HessianTooLarge { n: usize, max: usize },

    #[error("descent diverged at step {step}: per-site energy {eps:e}")]
    Diverged { step: usize, eps: f64 },

    #[error("invalid {name}: {message}")]
    InvalidParameter {
        name: &'static str,
        message: String,
    },
}

impl GlassError {
    pub(crate) fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        GlassError::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}
