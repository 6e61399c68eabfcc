use thiserror::Error;

/// Errors reported by the schedulers.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AnnealError {
    #[error("observed loss {loss} is not positive; the matched loss ratio is undefined, shift the loss or switch to signed mode")]
    NonpositiveLoss { loss: f64 },

    #[error("observed loss {loss} is not finite")]
    NonFiniteLoss { loss: f64 },

    #[error("initial loss must be finite and nonzero, got {loss}")]
    BadInitialLoss { loss: f64 },

    #[error("regularization strength {lambda0} must be finite and >= 0")]
    NegativeStrength { lambda0: f64 },

    #[error("cosine period must be >= 1")]
    ZeroPeriod,

    #[error("smoothing memory must be >= 1")]
    ZeroMemory,

    #[error("base learning rate {eta} must be finite and > 0")]
    NonpositiveRate { eta: f64 },
}
