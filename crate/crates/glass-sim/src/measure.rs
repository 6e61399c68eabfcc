use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use rft_core::CovarianceModel;

use crate::coupling::{checked_tuple_count, CouplingTensor};
use crate::error::GlassError;
use crate::hamiltonian::{energy_and_gradient, for_each_tuple, hessian, prefactor};
use crate::parallel::map_samples;
use crate::seed::stream_rng;
use crate::spin::SpinConfiguration;
use crate::stats::mean_and_stderr;

/// Which Hessian the index statistics are read from.
///
/// `Tangent` restricts the radially corrected Hessian
/// `grad^2 H - (sigma . grad H / n) I` to an orthonormal basis of the
/// sphere's tangent space, giving an (n-1)-dimensional spectrum. `Ambient`
/// uses the raw n-dimensional second partials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HessianKind {
    Tangent,
    Ambient,
}

/// Index and energy statistics at one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexReport {
    /// Per-site energy `H / n`.
    pub eps: f64,
    /// Fraction of negative Hessian eigenvalues.
    pub alpha_hat: f64,
    /// Hessian trace divided by the spectrum dimension.
    pub lambda_bar_hat: f64,
}

/// Orthonormal basis of the tangent space at `sigma`, as the trailing n-1
/// columns of the Householder reflector that maps the first axis onto the
/// radial direction.
fn tangent_basis(sigma: &[f64]) -> DMatrix<f64> {
    let n = sigma.len();
    let norm = sigma.iter().map(|s| s * s).sum::<f64>().sqrt();
    let mut w: Vec<f64> = sigma.iter().map(|s| s / norm).collect();
    let sign = if w[0] >= 0.0 { 1.0 } else { -1.0 };
    w[0] += sign;
    let wtw: f64 = w.iter().map(|x| x * x).sum();
    let mut q = DMatrix::<f64>::zeros(n, n - 1);
    for k in 0..n - 1 {
        for i in 0..n {
            let identity = if i == k + 1 { 1.0 } else { 0.0 };
            q[(i, k)] = identity - 2.0 * w[i] * w[k + 1] / wtw;
        }
    }
    q
}

/// Radially corrected Hessian restricted to the tangent space at `sigma`:
/// the (n-1) x (n-1) matrix `Q^T (grad^2 H - (sigma . grad H / n) I) Q`.
pub fn tangent_hessian(
    j: &CouplingTensor,
    s: &SpinConfiguration,
) -> Result<DMatrix<f64>, GlassError> {
    let (_, corrected) = corrected_hessian(j, s)?;
    let q = tangent_basis(s.sigma());
    Ok(q.transpose() * corrected * q)
}

fn corrected_hessian(
    j: &CouplingTensor,
    s: &SpinConfiguration,
) -> Result<(f64, DMatrix<f64>), GlassError> {
    let (energy, grad) = energy_and_gradient(j, s)?;
    let mut a = hessian(j, s)?;
    let n = s.n() as f64;
    let radial: f64 = s.sigma().iter().zip(&grad).map(|(x, g)| x * g).sum::<f64>() / n;
    for i in 0..s.n() {
        a[(i, i)] -= radial;
    }
    Ok((energy / n, a))
}

/// Index statistics from the tangent-space Hessian.
pub fn empirical_index_energy(
    j: &CouplingTensor,
    s: &SpinConfiguration,
) -> Result<IndexReport, GlassError> {
    empirical_index_energy_with(j, s, HessianKind::Tangent)
}

/// Index statistics from the chosen Hessian.
pub fn empirical_index_energy_with(
    j: &CouplingTensor,
    s: &SpinConfiguration,
    kind: HessianKind,
) -> Result<IndexReport, GlassError> {
    let (eps, matrix) = match kind {
        HessianKind::Tangent => {
            let (eps, corrected) = corrected_hessian(j, s)?;
            let q = tangent_basis(s.sigma());
            (eps, q.transpose() * corrected * q)
        }
        HessianKind::Ambient => {
            let (energy, _) = energy_and_gradient(j, s)?;
            (energy / s.n() as f64, hessian(j, s)?)
        }
    };
    let dim = matrix.nrows() as f64;
    let lambda_bar_hat = matrix.trace() / dim;
    let eigs = matrix.symmetric_eigen().eigenvalues;
    let negatives = eigs.iter().filter(|&&e| e < 0.0).count();
    Ok(IndexReport {
        eps,
        alpha_hat: negatives as f64 / dim,
        lambda_bar_hat,
    })
}

/// One overlap bin of a covariance check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapBin {
    pub overlap: f64,
    /// Monte Carlo mean of `H(sigma) H(tau) / n` over disorder.
    pub empirical: f64,
    /// `xi(overlap)` for the pure order-p model.
    pub theory: f64,
    pub stderr: f64,
    /// `(empirical - theory) / stderr`.
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceReport {
    pub n: usize,
    pub p: u32,
    pub samples: usize,
    pub bins: Vec<OverlapBin>,
}

pub const DEFAULT_OVERLAPS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

/// [`covariance_check_at`] over the standard overlap grid.
pub fn covariance_check(
    n: usize,
    p: u32,
    samples: usize,
    seed: u64,
) -> Result<CovarianceReport, GlassError> {
    covariance_check_at(n, p, samples, seed, &DEFAULT_OVERLAPS)
}

/// Monte Carlo check of `E[H(sigma) H(tau)] / n = xi(sigma . tau / n)`.
///
/// One fixed configuration pair per overlap: `sigma` is a random point on
/// the sphere and `tau = q sigma + sqrt(1 - q^2) w` for a companion `w`
/// orthogonal to `sigma`. Disorder is redrawn per sample from indexed
/// streams (the same draws serve every overlap bin), so the estimate is
/// deterministic in `seed` and independent of thread count.
pub fn covariance_check_at(
    n: usize,
    p: u32,
    samples: usize,
    seed: u64,
    overlaps: &[f64],
) -> Result<CovarianceReport, GlassError> {
    let tuple_count = checked_tuple_count(n, p)?;
    if samples < 100 {
        return Err(GlassError::invalid(
            "samples",
            format!("{samples} is below the minimum of 100"),
        ));
    }
    if overlaps.is_empty() {
        return Err(GlassError::invalid("overlaps", "empty overlap list"));
    }
    if overlaps.iter().any(|q| !q.is_finite() || q.abs() > 1.0) {
        return Err(GlassError::invalid(
            "overlaps",
            "every overlap must lie in [-1, 1]",
        ));
    }
    let model = CovarianceModel::pure(p)
        .map_err(|e| GlassError::invalid("p", e.to_string()))?;

    let mut cfg_rng = stream_rng("covariance-config", seed, 0);
    let sigma = SpinConfiguration::random_spherical(n, &mut cfg_rng);
    let companion = orthogonal_companion(sigma.sigma(), &mut cfg_rng);

    let monomial_sigma = monomials(n, p, sigma.sigma());
    let monomial_taus: Vec<Vec<f64>> = overlaps
        .iter()
        .map(|&q| {
            let tau: Vec<f64> = sigma
                .sigma()
                .iter()
                .zip(&companion)
                .map(|(s, w)| q * s + (1.0 - q * q).sqrt() * w)
                .collect();
            monomials(n, p, &tau)
        })
        .collect();

    let scale = prefactor(n, p);
    let normalizer = scale * scale / n as f64;
    let per_sample: Vec<Vec<f64>> = map_samples(samples, |index| {
        let mut rng = stream_rng("covariance", seed, index as u64);
        let mut dot_sigma = 0.0;
        let mut dot_taus = vec![0.0; overlaps.len()];
        for t in 0..tuple_count {
            let z: f64 = rng.sample(StandardNormal);
            dot_sigma += z * monomial_sigma[t];
            for (acc, m) in dot_taus.iter_mut().zip(&monomial_taus) {
                *acc += z * m[t];
            }
        }
        dot_taus
            .iter()
            .map(|d| normalizer * dot_sigma * d)
            .collect()
    });

    let bins = overlaps
        .iter()
        .enumerate()
        .map(|(b, &q)| {
            let values: Vec<f64> = per_sample.iter().map(|row| row[b]).collect();
            let (empirical, stderr) = mean_and_stderr(&values);
            let theory = model.xi(q).expect("pure models evaluate xi everywhere");
            OverlapBin {
                overlap: q,
                empirical,
                theory,
                stderr,
                z: (empirical - theory) / stderr,
            }
        })
        .collect();
    Ok(CovarianceReport {
        n,
        p,
        samples,
        bins,
    })
}

/// Products `sigma_{i_1} ... sigma_{i_p}` for every ordered tuple, laid out
/// in coupling order, so the energy is `-n^(-(p-1)/2)` times the dot product
/// of couplings and monomials.
fn monomials(n: usize, p: u32, sigma: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n.pow(p)];
    for_each_tuple(n, p as usize, |t, digits| {
        let mut prod = 1.0;
        for &d in digits {
            prod *= sigma[d];
        }
        out[t] = prod;
    });
    out
}

/// Random unit-of-sphere companion orthogonal to `sigma`: a Gaussian draw
/// with its radial part removed, rescaled to `sum w^2 = n`.
fn orthogonal_companion(sigma: &[f64], rng: &mut impl Rng) -> Vec<f64> {
    let n = sigma.len();
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let radial: f64 = w.iter().zip(sigma).map(|(a, b)| a * b).sum::<f64>() / n as f64;
    for (wi, si) in w.iter_mut().zip(sigma) {
        *wi -= radial * si;
    }
    let norm2: f64 = w.iter().map(|x| x * x).sum();
    let factor = (n as f64 / norm2).sqrt();
    for wi in w.iter_mut() {
        *wi *= factor;
    }
    w
}
