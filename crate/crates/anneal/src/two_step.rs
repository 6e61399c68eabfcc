use std::fmt;

use crate::cosine::cosine_lambda;
use crate::error::AnnealError;

/// Closed-form lambda schedules the two-step scheduler can replay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaSchedule {
    Constant {
        lambda0: f64,
    },
    Cosine {
        lambda0: f64,
        period: u64,
        normalized: bool,
    },
}

impl LambdaSchedule {
    pub fn lambda_at(&self, epoch: u64) -> f64 {
        match *self {
            LambdaSchedule::Constant { lambda0 } => lambda0,
            LambdaSchedule::Cosine {
                lambda0,
                period,
                normalized,
            } => cosine_lambda(lambda0, period, normalized, epoch),
        }
    }

    fn validate(&self) -> Result<(), AnnealError> {
        let lambda0 = match *self {
            LambdaSchedule::Constant { lambda0 } => lambda0,
            LambdaSchedule::Cosine {
                lambda0, period, ..
            } => {
                if period == 0 {
                    return Err(AnnealError::ZeroPeriod);
                }
                lambda0
            }
        };
        if !lambda0.is_finite() || lambda0 < 0.0 {
            return Err(AnnealError::NegativeStrength { lambda0 });
        }
        Ok(())
    }
}

/// Sizing rule for the regularization step.
///
/// `Magnitude` treats the step as a size and takes |delta lambda| * eta.
/// `SignPreserving` keeps delta lambda's sign, so a decaying schedule walks
/// the regularization gradient uphill.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepSign {
    Magnitude,
    SignPreserving,
}

enum ScheduleSource {
    Closed(LambdaSchedule),
    Custom(Box<dyn Fn(u64) -> f64 + Send>),
}

/// EM-style scheduler that splits each epoch into a loss step of size eta
/// and a regularization step of size (lambda_i - lambda_{i-1}) * eta.
///
/// At epoch 0 there is no previous lambda and the regularization step is
/// zero. Schedule values are clamped to >= 0 before differencing.
pub struct TwoStepAnnealer {
    source: ScheduleSource,
    sign: StepSign,
    epoch: u64,
    previous_lambda: Option<f64>,
}

impl fmt::Debug for TwoStepAnnealer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("TwoStepAnnealer");
        match &self.source {
            ScheduleSource::Closed(schedule) => s.field("schedule", schedule),
            ScheduleSource::Custom(_) => s.field("schedule", &"custom"),
        };
        s.field("sign", &self.sign)
            .field("epoch", &self.epoch)
            .field("previous_lambda", &self.previous_lambda)
            .finish()
    }
}

impl TwoStepAnnealer {
    pub fn from_schedule(schedule: LambdaSchedule, sign: StepSign) -> Result<Self, AnnealError> {
        schedule.validate()?;
        Ok(TwoStepAnnealer {
            source: ScheduleSource::Closed(schedule),
            sign,
            epoch: 0,
            previous_lambda: None,
        })
    }

    /// Builds from an arbitrary epoch-to-lambda handle. Negative outputs are
    /// clamped to zero at evaluation time.
    pub fn from_fn(schedule: impl Fn(u64) -> f64 + Send + 'static, sign: StepSign) -> Self {
        TwoStepAnnealer {
            source: ScheduleSource::Custom(Box::new(schedule)),
            sign,
            epoch: 0,
            previous_lambda: None,
        }
    }

    pub fn sign(&self) -> StepSign {
        self.sign
    }

    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    /// The closed-form schedule, when one was supplied.
    pub fn schedule(&self) -> Option<&LambdaSchedule> {
        match &self.source {
            ScheduleSource::Closed(schedule) => Some(schedule),
            ScheduleSource::Custom(_) => None,
        }
    }

    /// Lambda consumed by the most recent `two_step_sizes` call.
    pub fn last_lambda(&self) -> Option<f64> {
        self.previous_lambda
    }

    pub fn lambda_at(&self, epoch: u64) -> f64 {
        let raw = match &self.source {
            ScheduleSource::Closed(schedule) => schedule.lambda_at(epoch),
            ScheduleSource::Custom(handle) => handle(epoch),
        };
        raw.max(0.0)
    }

    /// Returns (loss step size, regularization step size) for the current
    /// epoch and advances the state.
    pub fn two_step_sizes(&mut self, eta: f64) -> Result<(f64, f64), AnnealError> {
        if !eta.is_finite() || eta <= 0.0 {
            return Err(AnnealError::NonpositiveRate { eta });
        }
        let lambda = self.lambda_at(self.epoch);
        let delta = match self.previous_lambda {
            None => 0.0,
            Some(previous) => lambda - previous,
        };
        let m_step = match self.sign {
            StepSign::Magnitude => delta.abs() * eta,
            StepSign::SignPreserving => delta * eta,
        };
        self.previous_lambda = Some(lambda);
        self.epoch += 1;
        Ok((eta, m_step))
    }
}
