use std::f64::consts::TAU;

use crate::error::AnnealError;

/// Cosine restart value at one epoch: lambda0 * (1 + cos(2 pi i / T)),
/// halved in normalized mode so the schedule starts at lambda0.
///
/// The phase is reduced with integer arithmetic before the float divide, so
/// lambda at epoch i + T is bitwise identical to lambda at epoch i.
pub fn cosine_lambda(lambda0: f64, period: u64, normalized: bool, epoch: u64) -> f64 {
    let phase = (epoch % period) as f64 / period as f64;
    let value = lambda0 * (1.0 + (TAU * phase).cos());
    if normalized {
        0.5 * value
    } else {
        value
    }
}

/// Periodic regularization schedule with warm restarts every `period` epochs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineAnnealer {
    lambda0: f64,
    period: u64,
    normalized: bool,
    epoch: u64,
}

impl CosineAnnealer {
    /// Literal schedule: starts at 2 * lambda0 and sweeps down to 0.
    pub fn new(lambda0: f64, period: u64) -> Result<Self, AnnealError> {
        Self::build(lambda0, period, false)
    }

    /// Normalized variant: starts at lambda0, for parity with learning-rate
    /// cosine restarts.
    pub fn normalized(lambda0: f64, period: u64) -> Result<Self, AnnealError> {
        Self::build(lambda0, period, true)
    }

    fn build(lambda0: f64, period: u64, normalized: bool) -> Result<Self, AnnealError> {
        if !lambda0.is_finite() || lambda0 < 0.0 {
            return Err(AnnealError::NegativeStrength { lambda0 });
        }
        if period == 0 {
            return Err(AnnealError::ZeroPeriod);
        }
        Ok(CosineAnnealer {
            lambda0,
            period,
            normalized,
            epoch: 0,
        })
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    /// Lambda at an arbitrary epoch, without advancing the state.
    pub fn lambda_at(&self, epoch: u64) -> f64 {
        cosine_lambda(self.lambda0, self.period, self.normalized, epoch)
    }

    /// Returns lambda for the current epoch and advances to the next one.
    pub fn step(&mut self) -> f64 {
        let lambda = self.lambda_at(self.epoch);
        self.epoch += 1;
        lambda
    }
}
