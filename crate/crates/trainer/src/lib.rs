//! Desk-scale optimization loops that drive the annealing schedules over
//! two targets: the spherical p-spin glass from `glass-sim` and a small
//! teacher-student ReLU network with analytic backprop.
//!
//! A run is a pure function of its [`TrainConfig`]: couplings, initial
//! weights, data, and Hutchinson probes all come from named streams of the
//! one root seed. Every epoch evaluates the loss at the current weights,
//! asks the schedule for lambda, logs a [`TrainingRecord`], then takes the
//! projected gradient step on `loss + lambda * ||theta||^2`. The step
//! kernel is shared with `glass_sim::spherical_descent`, so a fixed
//! schedule at lambda0 = 0 reproduces plain descent bitwise.
//!
//! Divergence (a non-finite loss) and matched-schedule rejections stop a
//! run early; the partial records and a [`RunFailure`] are returned rather
//! than an error, so callers can persist what was logged.

mod config;
mod data;
mod error;
mod hutchinson;
mod mlp;
mod run;

pub use config::{Algo, ScheduleKind, SmoothingKind, TargetSpec, TrainConfig};
pub use data::{teacher_student_batch, Batch};
pub use error::TrainerError;
pub use hutchinson::{hutchinson_trace, hutchinson_trace_fn};
pub use mlp::{init_spherical_weights, mlp_loss_and_grad, weight_count, MlpModel};
pub use run::{
    glass_descent_experiment, run_algorithm, GlassRecord, GlassReport, RunFailure, RunReport,
    TrainingRecord,
};
