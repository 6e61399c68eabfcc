use crate::error::AnnealError;
use crate::smoothing::{Smoother, Smoothing};

/// How the matched scheduler treats the observed-loss stream.
///
/// `Strict` follows the ratio rule literally and rejects nonpositive losses.
/// `Signed` accepts any finite loss with a nonzero start, which covers
/// per-site glass energies; the final clamp keeps lambda nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossMode {
    Strict,
    Signed,
}

/// Loss-matched regularization schedule: lambda_i = lambda0 * S(L(i)/L(0)).
///
/// The first observed loss becomes L(0). For `warmup` further epochs lambda
/// is held at lambda0 while the smoother keeps ingesting ratios; annealing
/// takes over afterwards. With warmup 0 the first step still returns lambda0
/// exactly, because every smoother maps a leading input of 1.0 to 1.0.
#[derive(Debug)]
pub struct MatchedAnnealer {
    lambda0: f64,
    warmup: u64,
    mode: LossMode,
    smoother: Smoother,
    initial_loss: Option<f64>,
    epoch: u64,
    current_lambda: f64,
}

impl MatchedAnnealer {
    pub fn new(
        lambda0: f64,
        warmup: u64,
        smoothing: Smoothing,
        mode: LossMode,
    ) -> Result<Self, AnnealError> {
        if !lambda0.is_finite() || lambda0 < 0.0 {
            return Err(AnnealError::NegativeStrength { lambda0 });
        }
        Ok(MatchedAnnealer {
            lambda0,
            warmup,
            mode,
            smoother: Smoother::new(smoothing)?,
            initial_loss: None,
            epoch: 0,
            current_lambda: lambda0,
        })
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn mode(&self) -> LossMode {
        self.mode
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    /// L(0), once the first loss has been observed.
    pub fn initial_loss(&self) -> Option<f64> {
        self.initial_loss
    }

    /// Lambda emitted by the most recent step (lambda0 before any step).
    pub fn current_lambda(&self) -> f64 {
        self.current_lambda
    }

    /// Consumes one observed loss and returns lambda for this epoch.
    pub fn step(&mut self, observed_loss: f64) -> Result<f64, AnnealError> {
        if !observed_loss.is_finite() {
            return Err(AnnealError::NonFiniteLoss {
                loss: observed_loss,
            });
        }
        match self.mode {
            LossMode::Strict => {
                if observed_loss <= 0.0 {
                    return Err(AnnealError::NonpositiveLoss {
                        loss: observed_loss,
                    });
                }
            }
            LossMode::Signed => {
                if self.initial_loss.is_none() && observed_loss == 0.0 {
                    return Err(AnnealError::BadInitialLoss {
                        loss: observed_loss,
                    });
                }
            }
        }
        let initial = *self.initial_loss.get_or_insert(observed_loss);
        let smoothed = self.smoother.apply(observed_loss / initial);
        let lambda = if self.epoch <= self.warmup {
            self.lambda0
        } else {
            (self.lambda0 * smoothed).max(0.0)
        };
        self.epoch += 1;
        self.current_lambda = lambda;
        Ok(lambda)
    }
}

/// One matched-decay update: lambda shrinks by the same relative amount as
/// the loss, floored at zero. Callers must pass lambda_prev > 0.
pub fn matched_relative_decay(lambda_prev: f64, rel_loss_change: f64) -> f64 {
    (lambda_prev * (1.0 + rel_loss_change)).max(0.0)
}
