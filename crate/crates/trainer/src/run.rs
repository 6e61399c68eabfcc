use anneal::{AnnealError, CosineAnnealer, LambdaSchedule, MatchedAnnealer, TwoStepAnnealer};
use glass_sim::{
    descent_step, empirical_index_energy, energy_and_gradient_at, project_tangent, stream_rng,
    CouplingTensor, SpinConfiguration, DENSE_BOUND,
};

use crate::config::{Algo, ScheduleKind, TargetSpec, TrainConfig};
use crate::data::teacher_student_batch;
use crate::error::{invalid, TrainerError};
use crate::hutchinson::hutchinson_trace_fn;
use crate::mlp::{init_spherical_weights, mlp_loss_and_grad_raw};

/// One logged epoch. Loss, trace, and gradient norm are measured at the
/// pre-step weights; `lambda` is the strength the step then used;
/// `trace_estimate` is the Hutchinson estimate of the loss-Hessian trace
/// divided by the weight count; `grad_norm` is the tangent-projected
/// gradient norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingRecord {
    pub epoch: u64,
    pub loss: f64,
    pub lambda: f64,
    pub trace_estimate: f64,
    pub grad_norm: f64,
}

/// Why a run stopped before its epoch budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunFailure {
    NonFiniteLoss { epoch: u64, loss: f64 },
    NonpositiveLoss { epoch: u64, loss: f64 },
}

/// Completed or aborted run: every record up to the failing epoch, plus the
/// final weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub records: Vec<TrainingRecord>,
    pub failure: Option<RunFailure>,
    pub final_theta: Vec<f64>,
}

/// Glass run row: per-site energy in place of a loss, with the empirical
/// Hessian index attached on measurement epochs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlassRecord {
    pub epoch: u64,
    pub eps: f64,
    pub lambda: f64,
    pub grad_norm: f64,
    pub alpha_hat: Option<f64>,
    pub lambda_bar_hat: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlassReport {
    pub records: Vec<GlassRecord>,
    pub failure: Option<RunFailure>,
    pub final_sigma: Vec<f64>,
}

enum Scheduler {
    Fixed { lambda0: f64 },
    Matched(MatchedAnnealer),
    Cosine(CosineAnnealer),
    TwoStep(TwoStepAnnealer),
}

impl Scheduler {
    fn from_config(config: &TrainConfig) -> Result<Self, TrainerError> {
        Ok(match config.algo {
            Algo::Fixed => Scheduler::Fixed {
                lambda0: config.lambda0,
            },
            Algo::Matched => Scheduler::Matched(MatchedAnnealer::new(
                config.lambda0,
                config.k,
                config.smoother_spec(),
                config.loss_mode,
            )?),
            Algo::Cosine => Scheduler::Cosine(if config.normalized_cosine {
                CosineAnnealer::normalized(config.lambda0, config.t)?
            } else {
                CosineAnnealer::new(config.lambda0, config.t)?
            }),
            Algo::TwoStep => {
                let schedule = match config.two_step_schedule {
                    ScheduleKind::Constant => LambdaSchedule::Constant {
                        lambda0: config.lambda0,
                    },
                    ScheduleKind::Cosine => LambdaSchedule::Cosine {
                        lambda0: config.lambda0,
                        period: config.t,
                        normalized: config.normalized_cosine,
                    },
                };
                Scheduler::TwoStep(TwoStepAnnealer::from_schedule(schedule, config.step_sign)?)
            }
        })
    }

    /// Lambda for this epoch plus the second-step size, which is zero for
    /// everything but the two-step algorithm.
    fn advance(&mut self, epoch: u64, loss: f64, lr: f64) -> Result<(f64, f64), RunFailure> {
        let stepped = match self {
            Scheduler::Fixed { lambda0 } => return Ok((*lambda0, 0.0)),
            Scheduler::Matched(annealer) => annealer.step(loss).map(|lambda| (lambda, 0.0)),
            Scheduler::Cosine(annealer) => Ok((annealer.step(), 0.0)),
            Scheduler::TwoStep(annealer) => annealer
                .two_step_sizes(lr)
                .map(|(_, m_step)| (annealer.last_lambda().unwrap_or(0.0), m_step)),
        };
        stepped.map_err(|error| match error {
            AnnealError::NonpositiveLoss { loss } | AnnealError::BadInitialLoss { loss } => {
                RunFailure::NonpositiveLoss { epoch, loss }
            }
            AnnealError::NonFiniteLoss { loss } => RunFailure::NonFiniteLoss { epoch, loss },
            _ => unreachable!("schedule parameters are validated before the run"),
        })
    }
}

/// Epoch loop shared by both targets.
///
/// Per epoch: evaluate loss and gradient at the current weights, draw
/// lambda from the scheduler, log the record, hand the pre-step weights to
/// `hook`, then take the regularized projected step (and the second,
/// schedule-difference-sized step when the algorithm is two-step). A
/// non-finite loss or a scheduler rejection stops the loop and keeps the
/// records logged so far.
fn drive<F, H>(
    config: &TrainConfig,
    mut theta: Vec<f64>,
    mut eval: F,
    mut hook: H,
) -> Result<RunReport, TrainerError>
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
    H: FnMut(u64, &[f64]),
{
    let mut scheduler = Scheduler::from_config(config)?;
    let dim = theta.len() as f64;
    let mut records = Vec::with_capacity(config.epochs as usize);
    let mut failure = None;
    for epoch in 0..config.epochs {
        let (loss, grad) = eval(&theta);
        if !loss.is_finite() {
            failure = Some(RunFailure::NonFiniteLoss { epoch, loss });
            break;
        }
        let (lambda, m_step) = match scheduler.advance(epoch, loss, config.lr) {
            Ok(pair) => pair,
            Err(reason) => {
                failure = Some(reason);
                break;
            }
        };
        let trace = hutchinson_trace_fn(&theta, |x| eval(x).1, config.trace_probes, config.seed)?
            / dim;
        let tangent = project_tangent(&grad, &theta);
        let grad_norm = tangent.iter().map(|g| g * g).sum::<f64>().sqrt();
        records.push(TrainingRecord {
            epoch,
            loss,
            lambda,
            trace_estimate: trace,
            grad_norm,
        });
        hook(epoch, &theta);
        descent_step(&mut theta, &grad, lambda, config.lr);
        if m_step != 0.0 {
            let (_, second_grad) = eval(&theta);
            descent_step(&mut theta, &second_grad, lambda, m_step);
        }
    }
    Ok(RunReport {
        records,
        failure,
        final_theta: theta,
    })
}

/// Runs the configured annealing algorithm on the configured target.
///
/// Glass runs draw couplings from the config seed and the starting
/// configuration from the `train-init` stream; MLP runs draw data and
/// initial weights as documented in the data and model modules. With algo
/// fixed and lambda0 = 0 the glass loop reproduces `spherical_descent`
/// bitwise.
pub fn run_algorithm(config: &TrainConfig) -> Result<RunReport, TrainerError> {
    config.validate()?;
    match config.target {
        TargetSpec::Glass { n, p } => {
            let j = CouplingTensor::sample(n, p, config.seed)?;
            let mut rng = stream_rng("train-init", config.seed, 0);
            let sigma0 = SpinConfiguration::random_spherical(n, &mut rng);
            let per_site = n as f64;
            drive(
                config,
                sigma0.sigma().to_vec(),
                |x| {
                    let (energy, grad) =
                        energy_and_gradient_at(&j, x).expect("dimension fixed at setup");
                    (energy / per_site, grad)
                },
                |_, _| {},
            )
        }
        TargetSpec::Mlp {
            d_in,
            d_h,
            d_out,
            samples,
            noise,
        } => {
            let sizes = [d_in, d_h, d_out];
            let (_, batch) = teacher_student_batch(sizes, samples, noise, config.seed)?;
            let model = init_spherical_weights(sizes, config.seed)?;
            drive(
                config,
                model.theta().to_vec(),
                |x| mlp_loss_and_grad_raw(sizes, x, &batch),
                |_, _| {},
            )
        }
    }
}

/// Glass run that also measures the empirical Hessian index every
/// `index_every` epochs (plus the final epoch), attaching `alpha_hat` and
/// `lambda_bar_hat` to those rows.
pub fn glass_descent_experiment(config: &TrainConfig) -> Result<GlassReport, TrainerError> {
    config.validate()?;
    let TargetSpec::Glass { n, p } = config.target else {
        return Err(invalid("target", "glass experiment needs a glass target"));
    };
    if n > DENSE_BOUND {
        return Err(invalid(
            "target",
            format!("index measurement needs n <= {DENSE_BOUND}, got {n}"),
        ));
    }
    let j = CouplingTensor::sample(n, p, config.seed)?;
    let mut rng = stream_rng("train-init", config.seed, 0);
    let sigma0 = SpinConfiguration::random_spherical(n, &mut rng);
    let per_site = n as f64;
    let index_every = config.index_every;
    let epochs = config.epochs;
    let mut index_rows: Vec<(u64, f64, f64)> = Vec::new();
    let report = drive(
        config,
        sigma0.sigma().to_vec(),
        |x| {
            let (energy, grad) = energy_and_gradient_at(&j, x).expect("dimension fixed at setup");
            (energy / per_site, grad)
        },
        |epoch, theta| {
            let due = index_every > 0 && (epoch % index_every == 0 || epoch + 1 == epochs);
            if !due {
                return;
            }
            let s = SpinConfiguration::from_spherical(theta.to_vec())
                .expect("descent keeps the sphere");
            let index = empirical_index_energy(&j, &s).expect("n within the dense bound");
            index_rows.push((epoch, index.alpha_hat, index.lambda_bar_hat));
        },
    )?;

    let mut cursor = index_rows.iter().peekable();
    let records = report
        .records
        .iter()
        .map(|record| {
            let mut alpha_hat = None;
            let mut lambda_bar_hat = None;
            if let Some(&&(epoch, alpha, lambda_bar)) = cursor.peek() {
                if epoch == record.epoch {
                    alpha_hat = Some(alpha);
                    lambda_bar_hat = Some(lambda_bar);
                    cursor.next();
                }
            }
            GlassRecord {
                epoch: record.epoch,
                eps: record.loss,
                lambda: record.lambda,
                grad_norm: record.grad_norm,
                alpha_hat,
                lambda_bar_hat,
            }
        })
        .collect();
    Ok(GlassReport {
        records,
        failure: report.failure,
        final_sigma: report.final_theta,
    })
}
