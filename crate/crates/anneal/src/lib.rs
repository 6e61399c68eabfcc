//! L2-regularization annealing schedules as pure, stepwise state machines.
//!
//! Three schedulers share a contract: they are deterministic (replaying a
//! loss or epoch stream reproduces the lambda sequence bit for bit) and they
//! never emit a negative strength.
//!
//! * [`MatchedAnnealer`] — lambda tracks the smoothed loss ratio
//!   `L(i)/L(0)`, so regularization decays at the same relative rate as the
//!   loss.
//! * [`CosineAnnealer`] — periodic warm restarts
//!   `lambda0 * (1 + cos(2 pi i / T))`.
//! * [`TwoStepAnnealer`] — each epoch splits into a loss step of size eta
//!   and a regularization step of size `(lambda_i - lambda_{i-1}) * eta`
//!   driven by a replayable lambda schedule.
//!
//! Nothing here touches the objective being optimized; optimization loops
//! live in the `trainer` crate.

mod cosine;
mod error;
mod lr;
mod matched;
mod smoothing;
mod two_step;

pub use cosine::{cosine_lambda, CosineAnnealer};
pub use error::AnnealError;
pub use lr::power_law_lr;
pub use matched::{matched_relative_decay, LossMode, MatchedAnnealer};
pub use smoothing::{Smoother, Smoothing};
pub use two_step::{LambdaSchedule, StepSign, TwoStepAnnealer};
