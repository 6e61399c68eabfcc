use crate::coupling::CouplingTensor;
use crate::error::GlassError;
use crate::hamiltonian::{energy_and_gradient_raw, project_tangent};
use crate::spin::{rescale_to_sphere, SpinConfiguration};

/// Per-site energy magnitude beyond which a run counts as diverged.
pub const DIVERGENCE_LIMIT: f64 = 1e6;

/// Constraint defect below which the post-step rescale is skipped, so a
/// step with zero displacement leaves the configuration untouched.
const RESCALE_THRESHOLD: f64 = 5e-10;

/// One row of a descent trajectory, recorded after the step: step counter
/// (1-based), per-site energy `H/n`, and the Riemannian gradient norm of H.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentRecord {
    pub step: usize,
    pub eps: f64,
    pub grad_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentTrajectory {
    pub records: Vec<DescentRecord>,
    pub final_sigma: SpinConfiguration,
}

/// One projected gradient step on the regularized energy `H + l2 * sum sigma^2`.
///
/// The Euclidean gradient `euclid_grad + 2 * l2 * sigma` is projected onto
/// the tangent space, `sigma` moves by `-lr` times the projection, and the
/// result is rescaled back onto the sphere (skipped while the constraint
/// defect stays below [`RESCALE_THRESHOLD`]).
pub fn descent_step(sigma: &mut [f64], euclid_grad: &[f64], l2: f64, lr: f64) {
    if lr == 0.0 {
        return;
    }
    let regularized: Vec<f64> = euclid_grad
        .iter()
        .zip(sigma.iter())
        .map(|(g, s)| g + 2.0 * l2 * s)
        .collect();
    let tangent = project_tangent(&regularized, sigma);
    for (s, t) in sigma.iter_mut().zip(&tangent) {
        *s -= lr * t;
    }
    let n = sigma.len() as f64;
    let defect = (sigma.iter().map(|s| s * s).sum::<f64>() - n).abs();
    if defect > RESCALE_THRESHOLD {
        rescale_to_sphere(sigma);
    }
}

/// Projected gradient descent of `H + l2 * sum sigma^2` on the sphere.
///
/// Records one row per step, taken at the post-step configuration. Errors
/// with [`GlassError::Diverged`] once `|H/n|` passes [`DIVERGENCE_LIMIT`].
pub fn spherical_descent(
    j: &CouplingTensor,
    sigma0: &SpinConfiguration,
    steps: usize,
    lr: f64,
    l2: f64,
) -> Result<DescentTrajectory, GlassError> {
    if sigma0.n() != j.n() {
        return Err(GlassError::DimensionMismatch {
            expected: j.n(),
            got: sigma0.n(),
        });
    }
    if !lr.is_finite() || lr < 0.0 {
        return Err(GlassError::invalid("lr", format!("{lr} is not >= 0")));
    }
    if !l2.is_finite() || l2 < 0.0 {
        return Err(GlassError::invalid("l2", format!("{l2} is not >= 0")));
    }
    let n = j.n() as f64;
    let mut sigma = sigma0.sigma().to_vec();
    let (_, mut grad) = energy_and_gradient_raw(j, &sigma);
    let mut records = Vec::with_capacity(steps);
    for step in 1..=steps {
        descent_step(&mut sigma, &grad, l2, lr);
        let (energy, next_grad) = energy_and_gradient_raw(j, &sigma);
        grad = next_grad;
        let eps = energy / n;
        let tangent = project_tangent(&grad, &sigma);
        let grad_norm = tangent.iter().map(|g| g * g).sum::<f64>().sqrt();
        records.push(DescentRecord {
            step,
            eps,
            grad_norm,
        });
        if !eps.is_finite() || eps.abs() > DIVERGENCE_LIMIT {
            return Err(GlassError::Diverged { step, eps });
        }
    }
    Ok(DescentTrajectory {
        records,
        final_sigma: SpinConfiguration::from_descent(sigma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::stream_rng;

    #[test]
    fn zero_couplings_leave_the_configuration_fixed() {
        let j = CouplingTensor::zeros(8, 3, 0).unwrap();
        let mut rng = stream_rng("descent-test", 1, 0);
        let s0 = SpinConfiguration::random_spherical(8, &mut rng);
        let out = spherical_descent(&j, &s0, 25, 1e-2, 0.0).unwrap();
        assert_eq!(out.final_sigma.sigma(), s0.sigma());
        assert!(out.records.iter().all(|r| r.eps == 0.0));
    }

    #[test]
    fn zero_rate_keeps_the_trajectory_constant() {
        let j = CouplingTensor::sample(8, 3, 2).unwrap();
        let mut rng = stream_rng("descent-test", 2, 0);
        let s0 = SpinConfiguration::random_spherical(8, &mut rng);
        let out = spherical_descent(&j, &s0, 10, 0.0, 0.0).unwrap();
        assert_eq!(out.final_sigma.sigma(), s0.sigma());
        let first = out.records[0].eps;
        assert!(out.records.iter().all(|r| r.eps == first));
    }

    #[test]
    fn the_sphere_constraint_holds_after_every_step() {
        let j = CouplingTensor::sample(32, 3, 3).unwrap();
        let mut rng = stream_rng("descent-test", 3, 0);
        let mut sigma = SpinConfiguration::random_spherical(32, &mut rng)
            .sigma()
            .to_vec();
        let (_, mut grad) = energy_and_gradient_raw(&j, &sigma);
        for _ in 0..200 {
            descent_step(&mut sigma, &grad, 1e-3, 5e-2);
            let defect = (sigma.iter().map(|s| s * s).sum::<f64>() - 32.0).abs();
            assert!(defect <= 1e-9, "defect = {defect:e}");
            grad = energy_and_gradient_raw(&j, &sigma).1;
        }
    }

    #[test]
    fn descent_lowers_the_energy_on_a_fixed_instance() {
        let j = CouplingTensor::sample(32, 3, 4).unwrap();
        let mut rng = stream_rng("descent-test", 4, 0);
        let s0 = SpinConfiguration::random_spherical(32, &mut rng);
        let out = spherical_descent(&j, &s0, 400, 1e-2, 0.0).unwrap();
        let first = out.records.first().unwrap().eps;
        let last = out.records.last().unwrap().eps;
        assert!(last < first, "first = {first}, last = {last}");
    }

    #[test]
    fn record_count_matches_the_requested_steps() {
        let j = CouplingTensor::sample(8, 2, 5).unwrap();
        let mut rng = stream_rng("descent-test", 5, 0);
        let s0 = SpinConfiguration::random_spherical(8, &mut rng);
        let out = spherical_descent(&j, &s0, 17, 1e-3, 0.0).unwrap();
        assert_eq!(out.records.len(), 17);
        assert_eq!(out.records.first().unwrap().step, 1);
        assert_eq!(out.records.last().unwrap().step, 17);
    }

    #[test]
    fn negative_rates_are_rejected() {
        let j = CouplingTensor::sample(8, 2, 6).unwrap();
        let mut rng = stream_rng("descent-test", 6, 0);
        let s0 = SpinConfiguration::random_spherical(8, &mut rng);
        assert!(matches!(
            spherical_descent(&j, &s0, 1, -1.0, 0.0),
            Err(GlassError::InvalidParameter { name: "lr", .. })
        ));
    }
}
