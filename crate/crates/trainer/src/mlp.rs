use rand::Rng;
use rand_distr::StandardNormal;

use crate::data::Batch;
use crate::error::TrainerError;
use glass_sim::stream_rng;

/// Two-layer perceptron with ReLU hidden units and a linear output, holding
/// its weights as one flat vector.
///
/// Layout of `theta`: `W1` row-major (`d_h x d_in`), `b1`, `W2` row-major
/// (`d_out x d_h`), `b2`. Training keeps the vector on the sphere
/// `sum theta^2 = N_w`.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    layer_sizes: [usize; 3],
    theta: Vec<f64>,
}

/// Flat weight count for `[d_in, d_h, d_out]`.
pub fn weight_count(layer_sizes: [usize; 3]) -> usize {
    let [d_in, d_h, d_out] = layer_sizes;
    d_h * d_in + d_h + d_out * d_h + d_out
}

impl MlpModel {
    pub fn new(layer_sizes: [usize; 3], theta: Vec<f64>) -> Result<Self, TrainerError> {
        if layer_sizes.contains(&0) {
            return Err(TrainerError::BadLayerSizes { sizes: layer_sizes });
        }
        let expected = weight_count(layer_sizes);
        if theta.len() != expected {
            return Err(TrainerError::WrongWeightCount {
                expected,
                got: theta.len(),
            });
        }
        Ok(MlpModel { layer_sizes, theta })
    }

    pub fn layer_sizes(&self) -> [usize; 3] {
        self.layer_sizes
    }

    pub fn weight_count(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Network output for one input row.
    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let [d_in, d_h, d_out] = self.layer_sizes;
        assert_eq!(x.len(), d_in, "input row has the wrong width");
        let mut out = vec![0.0; d_out];
        forward_raw(self.layer_sizes, &self.theta, x, &mut vec![0.0; d_h], &mut out);
        out
    }
}

/// Gaussian i.i.d. weights rescaled onto the sphere `sum theta^2 = N_w`.
///
/// Draws from the `mlp-init` stream of the root seed.
pub fn init_spherical_weights(
    layer_sizes: [usize; 3],
    seed: u64,
) -> Result<MlpModel, TrainerError> {
    let mut rng = stream_rng("mlp-init", seed, 0);
    let theta = gaussian_sphere_theta(layer_sizes, &mut rng)?;
    MlpModel::new(layer_sizes, theta)
}

/// Spherical Gaussian weight draw from a caller-supplied stream.
pub(crate) fn gaussian_sphere_theta(
    layer_sizes: [usize; 3],
    rng: &mut impl Rng,
) -> Result<Vec<f64>, TrainerError> {
    if layer_sizes.contains(&0) {
        return Err(TrainerError::BadLayerSizes { sizes: layer_sizes });
    }
    let n = weight_count(layer_sizes);
    let mut theta: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let norm_sq: f64 = theta.iter().map(|t| t * t).sum();
    let scale = (n as f64 / norm_sq).sqrt();
    for t in theta.iter_mut() {
        *t *= scale;
    }
    Ok(theta)
}

/// Hidden pre-activations and output for one sample, written into scratch
/// buffers so the batch loop does not allocate.
fn forward_raw(
    layer_sizes: [usize; 3],
    theta: &[f64],
    x: &[f64],
    pre_h: &mut [f64],
    out: &mut [f64],
) {
    let [d_in, d_h, d_out] = layer_sizes;
    let (w1, rest) = theta.split_at(d_h * d_in);
    let (b1, rest) = rest.split_at(d_h);
    let (w2, b2) = rest.split_at(d_out * d_h);
    for h in 0..d_h {
        let row = &w1[h * d_in..(h + 1) * d_in];
        pre_h[h] = b1[h] + row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>();
    }
    for o in 0..d_out {
        let row = &w2[o * d_h..(o + 1) * d_h];
        out[o] = b2[o]
            + row
                .iter()
                .zip(pre_h.iter())
                .map(|(w, pre)| w * pre.max(0.0))
                .sum::<f64>();
    }
}

/// Mean squared error over all batch entries together with the exact
/// backpropagated gradient with respect to `theta`.
pub fn mlp_loss_and_grad(model: &MlpModel, batch: &Batch) -> Result<(f64, Vec<f64>), TrainerError> {
    let [d_in, _, d_out] = model.layer_sizes;
    if batch.is_empty() {
        return Err(TrainerError::EmptyBatch);
    }
    if batch.d_in() != d_in || batch.d_out() != d_out {
        return Err(TrainerError::BatchMismatch {
            d_in: batch.d_in(),
            d_out: batch.d_out(),
            model_in: d_in,
            model_out: d_out,
        });
    }
    Ok(mlp_loss_and_grad_raw(
        model.layer_sizes,
        &model.theta,
        batch,
    ))
}

/// Loss/gradient kernel shared with the training loop, which holds theta as
/// a bare vector between projections.
pub(crate) fn mlp_loss_and_grad_raw(
    layer_sizes: [usize; 3],
    theta: &[f64],
    batch: &Batch,
) -> (f64, Vec<f64>) {
    let [d_in, d_h, d_out] = layer_sizes;
    let samples = batch.len();
    let scale = 1.0 / (samples * d_out) as f64;
    let w1_len = d_h * d_in;
    let b1_off = w1_len;
    let w2_off = b1_off + d_h;
    let b2_off = w2_off + d_out * d_h;

    let mut pre_h = vec![0.0; d_h];
    let mut out = vec![0.0; d_out];
    let mut loss = 0.0;
    let mut grad = vec![0.0; theta.len()];
    for k in 0..samples {
        let x = batch.input(k);
        let y = batch.target(k);
        forward_raw(layer_sizes, theta, x, &mut pre_h, &mut out);
        for o in 0..d_out {
            let residual = out[o] - y[o];
            loss += scale * residual * residual;
            let g_out = 2.0 * scale * residual;
            grad[b2_off + o] += g_out;
            for h in 0..d_h {
                grad[w2_off + o * d_h + h] += g_out * pre_h[h].max(0.0);
            }
        }
        for h in 0..d_h {
            if pre_h[h] <= 0.0 {
                continue;
            }
            let mut g_hidden = 0.0;
            for o in 0..d_out {
                let residual = out[o] - y[o];
                g_hidden += 2.0 * scale * residual * theta[w2_off + o * d_h + h];
            }
            grad[b1_off + h] += g_hidden;
            for i in 0..d_in {
                grad[h * d_in + i] += g_hidden * x[i];
            }
        }
    }
    (loss, grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Batch;

    #[test]
    fn zero_weights_and_zero_targets_give_zero_loss_and_gradient() {
        let sizes = [3, 4, 2];
        let model = MlpModel::new(sizes, vec![0.0; weight_count(sizes)]).unwrap();
        let batch = Batch::new(3, 2, vec![0.5, -1.0, 2.0], vec![0.0, 0.0]).unwrap();
        let (loss, grad) = mlp_loss_and_grad(&model, &batch).unwrap();
        assert_eq!(loss, 0.0);
        assert!(grad.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn initialization_lands_on_the_sphere_and_replays_by_seed() {
        let sizes = [8, 16, 1];
        let a = init_spherical_weights(sizes, 7).unwrap();
        let b = init_spherical_weights(sizes, 7).unwrap();
        let c = init_spherical_weights(sizes, 8).unwrap();
        let n = weight_count(sizes) as f64;
        let norm_sq: f64 = a.theta().iter().map(|t| t * t).sum();
        assert!((norm_sq - n).abs() <= 1e-9, "norm_sq = {norm_sq}");
        assert_eq!(a.theta(), b.theta());
        assert_ne!(a.theta(), c.theta());
    }

    #[test]
    fn duplicating_the_batch_leaves_loss_and_gradient_unchanged() {
        let sizes = [3, 5, 2];
        let model = init_spherical_weights(sizes, 11).unwrap();
        let inputs = vec![0.3, -0.9, 1.2, 0.7, 0.1, -0.4];
        let targets = vec![1.0, -0.5, 0.25, 2.0];
        let single = Batch::new(3, 2, inputs.clone(), targets.clone()).unwrap();
        let doubled = Batch::new(
            3,
            2,
            [inputs.clone(), inputs].concat(),
            [targets.clone(), targets].concat(),
        )
        .unwrap();
        let (loss1, grad1) = mlp_loss_and_grad(&model, &single).unwrap();
        let (loss2, grad2) = mlp_loss_and_grad(&model, &doubled).unwrap();
        assert!((loss1 - loss2).abs() <= 1e-12 * loss1.abs());
        for (a, b) in grad1.iter().zip(&grad2) {
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-9), "{a} vs {b}");
        }
    }

    #[test]
    fn forward_matches_a_hand_computed_network() {
        let sizes = [2, 2, 1];
        // W1 = [[1, -1], [2, 0]], b1 = [0.5, -3], W2 = [[1, 1]], b2 = [0.25].
        let theta = vec![1.0, -1.0, 2.0, 0.0, 0.5, -3.0, 1.0, 1.0, 0.25];
        let model = MlpModel::new(sizes, theta).unwrap();
        let out = model.forward(&[1.0, 2.0]);
        // pre = [1 - 2 + 0.5, 2 - 3] = [-0.5, -1], both clipped to 0.
        assert_eq!(out, vec![0.25]);
        let out = model.forward(&[2.0, 0.0]);
        // pre = [2.5, 1], output = 2.5 + 1 + 0.25.
        assert_eq!(out, vec![3.75]);
    }

    #[test]
    fn shape_errors_are_reported() {
        assert!(matches!(
            MlpModel::new([0, 4, 1], vec![]),
            Err(TrainerError::BadLayerSizes { .. })
        ));
        assert!(matches!(
            MlpModel::new([2, 2, 1], vec![0.0; 3]),
            Err(TrainerError::WrongWeightCount { expected: 9, got: 3 })
        ));
        let model = MlpModel::new([2, 2, 1], vec![0.0; 9]).unwrap();
        let batch = Batch::new(3, 1, vec![0.0; 3], vec![0.0]).unwrap();
        assert!(matches!(
            mlp_loss_and_grad(&model, &batch),
            Err(TrainerError::BatchMismatch { .. })
        ));
    }
}
