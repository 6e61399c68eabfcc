use anneal::{LossMode, Smoothing, StepSign};

use crate::error::{invalid, TrainerError};

/// What the loop optimizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetSpec {
    /// Spherical p-spin Hamiltonian with sampled couplings.
    Glass { n: usize, p: u32 },
    /// Teacher-student MSE regression on a two-layer ReLU network.
    Mlp {
        d_in: usize,
        d_h: usize,
        d_out: usize,
        samples: usize,
        noise: f64,
    },
}

/// Regularization schedule driving the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Matched,
    Cosine,
    TwoStep,
    Fixed,
}

/// Smoothing family for the matched schedule; the memory comes from
/// [`TrainConfig::k`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothingKind {
    Identity,
    MovingAverage,
    Exponential,
}

/// Lambda schedule replayed by the two-step algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    Constant,
    Cosine,
}

/// Full description of one training run. The record list is a pure
/// function of this value.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub target: TargetSpec,
    pub algo: Algo,
    pub lambda0: f64,
    /// Step size eta.
    pub lr: f64,
    pub epochs: u64,
    pub seed: u64,
    /// Matched smoothing memory and warmup length.
    pub k: u64,
    /// Cosine restart period.
    pub t: u64,
    pub smoothing: SmoothingKind,
    pub loss_mode: LossMode,
    pub step_sign: StepSign,
    pub two_step_schedule: ScheduleKind,
    pub normalized_cosine: bool,
    /// Probes per epoch for the Hessian-trace column.
    pub trace_probes: u32,
    /// Glass runs measure the empirical index every this many epochs;
    /// zero disables the measurement.
    pub index_every: u64,
}

impl TrainConfig {
    /// Glass-target defaults: plain descent, no regularization, signed
    /// losses (per-site energies are negative).
    pub fn glass(n: usize, p: u32) -> Self {
        TrainConfig {
            target: TargetSpec::Glass { n, p },
            algo: Algo::Fixed,
            lambda0: 0.0,
            lr: 1e-3,
            epochs: 100,
            seed: 1,
            k: 5,
            t: 8,
            smoothing: SmoothingKind::Exponential,
            loss_mode: LossMode::Signed,
            step_sign: StepSign::Magnitude,
            two_step_schedule: ScheduleKind::Cosine,
            normalized_cosine: false,
            trace_probes: 4,
            index_every: 0,
        }
    }

    /// MLP-target defaults: strict matched losses (MSE is nonnegative).
    pub fn mlp(d_in: usize, d_h: usize, d_out: usize, samples: usize, noise: f64) -> Self {
        TrainConfig {
            target: TargetSpec::Mlp {
                d_in,
                d_h,
                d_out,
                samples,
                noise,
            },
            algo: Algo::Fixed,
            lambda0: 0.0,
            lr: 1e-2,
            epochs: 200,
            seed: 1,
            k: 5,
            t: 8,
            smoothing: SmoothingKind::Exponential,
            loss_mode: LossMode::Strict,
            step_sign: StepSign::Magnitude,
            two_step_schedule: ScheduleKind::Cosine,
            normalized_cosine: false,
            trace_probes: 4,
            index_every: 0,
        }
    }

    /// Smoothing operator described by `smoothing` and `k`.
    pub fn smoother_spec(&self) -> Smoothing {
        match self.smoothing {
            SmoothingKind::Identity => Smoothing::Identity,
            SmoothingKind::MovingAverage => Smoothing::MovingAverage {
                window: self.k as usize,
            },
            SmoothingKind::Exponential => Smoothing::Exponential {
                half_life: self.k as usize,
            },
        }
    }

    pub fn validate(&self) -> Result<(), TrainerError> {
        if !self.lr.is_finite() || self.lr <= 0.0 {
            return Err(invalid("lr", format!("{} is not > 0", self.lr)));
        }
        if self.epochs == 0 {
            return Err(invalid("epochs", "need at least one epoch"));
        }
        if !self.lambda0.is_finite() || self.lambda0 < 0.0 {
            return Err(invalid("lambda0", format!("{} is not >= 0", self.lambda0)));
        }
        if self.trace_probes == 0 {
            return Err(invalid("trace_probes", "need at least one probe"));
        }
        match self.target {
            TargetSpec::Glass { n, p } => {
                if n < 2 || p < 2 {
                    return Err(invalid(
                        "target",
                        format!("glass target needs n >= 2 and p >= 2, got n = {n}, p = {p}"),
                    ));
                }
            }
            TargetSpec::Mlp {
                d_in,
                d_h,
                d_out,
                samples,
                noise,
            } => {
                if d_in == 0 || d_h == 0 || d_out == 0 {
                    return Err(invalid("target", "layer sizes must all be >= 1"));
                }
                if samples == 0 {
                    return Err(invalid("target", "need at least one sample"));
                }
                if !noise.is_finite() || noise < 0.0 {
                    return Err(invalid("target", format!("noise {noise} is not >= 0")));
                }
            }
        }
        match self.algo {
            Algo::Matched => {
                if self.smoothing != SmoothingKind::Identity && self.k == 0 {
                    return Err(invalid("k", "smoothing memory must be >= 1"));
                }
            }
            Algo::Cosine => {
                if self.t == 0 {
                    return Err(invalid("t", "cosine period must be >= 1"));
                }
            }
            Algo::TwoStep => {
                if self.two_step_schedule == ScheduleKind::Cosine && self.t == 0 {
                    return Err(invalid("t", "cosine period must be >= 1"));
                }
            }
            Algo::Fixed => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        TrainConfig::glass(16, 3).validate().unwrap();
        TrainConfig::mlp(8, 16, 1, 256, 0.0).validate().unwrap();
    }

    #[test]
    fn bad_fields_are_named() {
        let mut config = TrainConfig::glass(16, 3);
        config.lr = 0.0;
        assert!(matches!(
            config.validate(),
            Err(TrainerError::InvalidParameter { name: "lr", .. })
        ));

        let mut config = TrainConfig::glass(16, 3);
        config.epochs = 0;
        assert!(config.validate().is_err());

        let mut config = TrainConfig::glass(16, 3);
        config.lambda0 = -1e-3;
        assert!(config.validate().is_err());

        let mut config = TrainConfig::glass(1, 3);
        config.algo = Algo::Fixed;
        assert!(config.validate().is_err());

        let mut config = TrainConfig::mlp(8, 16, 1, 0, 0.0);
        assert!(config.validate().is_err());
        config = TrainConfig::mlp(8, 16, 1, 4, -1.0);
        assert!(config.validate().is_err());

        let mut config = TrainConfig::glass(16, 3);
        config.algo = Algo::Matched;
        config.k = 0;
        assert!(config.validate().is_err());

        let mut config = TrainConfig::glass(16, 3);
        config.algo = Algo::Cosine;
        config.t = 0;
        assert!(config.validate().is_err());
    }
}
