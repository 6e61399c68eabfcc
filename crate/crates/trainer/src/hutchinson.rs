use rand::Rng;

use crate::data::Batch;
use crate::error::{invalid, TrainerError};
use crate::mlp::{mlp_loss_and_grad, MlpModel};
use glass_sim::stream_rng;

/// Finite-difference step for the Hessian-vector products.
const FD_STEP: f64 = 1e-4;

/// Hutchinson trace estimate for the Hessian of an arbitrary objective,
/// given only its gradient.
///
/// Each Rademacher probe z contributes the central difference
/// z . (grad(theta + h z) - grad(theta - h z)) / (2h), an exact z . Hz for
/// quadratics away from rounding. The probe for index i comes from the
/// `hutchinson` stream, so estimates with the same seed replay bitwise.
pub fn hutchinson_trace_fn<G>(
    theta: &[f64],
    mut grad: G,
    probes: u32,
    seed: u64,
) -> Result<f64, TrainerError>
where
    G: FnMut(&[f64]) -> Vec<f64>,
{
    if probes == 0 {
        return Err(invalid("probes", "need at least one probe"));
    }
    let n = theta.len();
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    let mut total = 0.0;
    for probe in 0..probes {
        let mut rng = stream_rng("hutchinson", seed, probe as u64);
        let z: Vec<f64> = (0..n)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        for i in 0..n {
            plus[i] = theta[i] + FD_STEP * z[i];
            minus[i] = theta[i] - FD_STEP * z[i];
        }
        let grad_plus = grad(&plus);
        let grad_minus = grad(&minus);
        let mut quadratic_form = 0.0;
        for i in 0..n {
            quadratic_form += z[i] * ((grad_plus[i] - grad_minus[i]) / (2.0 * FD_STEP));
        }
        total += quadratic_form;
    }
    Ok(total / probes as f64)
}

/// Hutchinson estimate of the trace of the Hessian of the batch loss at the
/// model's current weights.
pub fn hutchinson_trace(
    model: &MlpModel,
    batch: &Batch,
    probes: u32,
    seed: u64,
) -> Result<f64, TrainerError> {
    let sizes = model.layer_sizes();
    mlp_loss_and_grad(model, batch)?;
    hutchinson_trace_fn(
        model.theta(),
        |theta| {
            let probe_model = MlpModel::new(sizes, theta.to_vec()).expect("same architecture");
            mlp_loss_and_grad(&probe_model, batch).expect("validated batch").1
        },
        probes,
        seed,
    )
}
