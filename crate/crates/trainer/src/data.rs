use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, TrainerError};
use crate::mlp::{gaussian_sphere_theta, MlpModel};
use glass_sim::stream_rng;

/// Full batch of regression data in flat row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    d_in: usize,
    d_out: usize,
    samples: usize,
    inputs: Vec<f64>,
    targets: Vec<f64>,
}

impl Batch {
    pub fn new(
        d_in: usize,
        d_out: usize,
        inputs: Vec<f64>,
        targets: Vec<f64>,
    ) -> Result<Self, TrainerError> {
        if d_in == 0 || d_out == 0 {
            return Err(invalid("batch", "feature widths must be >= 1"));
        }
        if inputs.is_empty() || !inputs.len().is_multiple_of(d_in) {
            return Err(invalid(
                "batch",
                format!("{} input values do not tile rows of width {d_in}", inputs.len()),
            ));
        }
        let samples = inputs.len() / d_in;
        if targets.len() != samples * d_out {
            return Err(invalid(
                "batch",
                format!(
                    "{} target values for {samples} rows of width {d_out}",
                    targets.len()
                ),
            ));
        }
        Ok(Batch {
            d_in,
            d_out,
            samples,
            inputs,
            targets,
        })
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn len(&self) -> usize {
        self.samples
    }

    pub fn is_empty(&self) -> bool {
        self.samples == 0
    }

    pub fn input(&self, k: usize) -> &[f64] {
        &self.inputs[k * self.d_in..(k + 1) * self.d_in]
    }

    pub fn target(&self, k: usize) -> &[f64] {
        &self.targets[k * self.d_out..(k + 1) * self.d_out]
    }
}

/// Synthetic regression task: Gaussian inputs labeled by a hidden teacher
/// network of the same architecture, plus optional Gaussian label noise.
///
/// The teacher weights come from the `teacher-init` stream, inputs from
/// `teacher-data`, and noise from `teacher-noise`, so a noise level of zero
/// leaves inputs and teacher bitwise unchanged. Returns the teacher and the
/// labeled batch.
pub fn teacher_student_batch(
    layer_sizes: [usize; 3],
    samples: usize,
    noise: f64,
    seed: u64,
) -> Result<(MlpModel, Batch), TrainerError> {
    if samples == 0 {
        return Err(invalid("samples", "need at least one sample"));
    }
    if !noise.is_finite() || noise < 0.0 {
        return Err(invalid("noise", format!("{noise} is not >= 0")));
    }
    let [d_in, _, d_out] = layer_sizes;
    let mut teacher_rng = stream_rng("teacher-init", seed, 0);
    let teacher = MlpModel::new(
        layer_sizes,
        gaussian_sphere_theta(layer_sizes, &mut teacher_rng)?,
    )?;

    let mut data_rng = stream_rng("teacher-data", seed, 0);
    let inputs: Vec<f64> = (0..samples * d_in)
        .map(|_| data_rng.sample(StandardNormal))
        .collect();

    let mut noise_rng = stream_rng("teacher-noise", seed, 0);
    let mut targets = Vec::with_capacity(samples * d_out);
    for k in 0..samples {
        let y = teacher.forward(&inputs[k * d_in..(k + 1) * d_in]);
        for value in y {
            if noise > 0.0 {
                let z: f64 = noise_rng.sample(StandardNormal);
                targets.push(value + noise * z);
            } else {
                targets.push(value);
            }
        }
    }
    let batch = Batch::new(d_in, d_out, inputs, targets)?;
    Ok((teacher, batch))
}
