use anneal::AnnealError;
use glass_sim::GlassError;
use thiserror::Error;

/// Errors reported by model construction, data synthesis, and run setup.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrainerError {
    #[error("layer sizes {sizes:?} must all be >= 1")]
    BadLayerSizes { sizes: [usize; 3] },

    #[error("theta has {got} entries, the architecture needs {expected}")]
    WrongWeightCount { expected: usize, got: usize },

    #[error("batch shape ({d_in}, {d_out}) does not match the model ({model_in}, {model_out})")]
    BatchMismatch {
        d_in: usize,
        d_out: usize,
        model_in: usize,
        model_out: usize,
    },

    #[error("batch is empty")]
    EmptyBatch,

    #[error("invalid {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },

    #[error(transparent)]
    Glass(#[from] GlassError),

    #[error(transparent)]
    Schedule(#[from] AnnealError),
}

pub(crate) fn invalid(name: &'static str, message: impl Into<String>) -> TrainerError {
    TrainerError::InvalidParameter {
        name,
        message: message.into(),
    }
}
