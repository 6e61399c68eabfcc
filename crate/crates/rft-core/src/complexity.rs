use std::f64::consts::PI;

use crate::constants::LandscapeConstants;
use crate::covariance::CovarianceModel;
use crate::error::RftError;

/// One row of a theory table: an energy together with the most likely mean
/// Hessian eigenvalue, the annealed complexity there, and (inside the index
/// band) the expected fraction of negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityPoint {
    /// Per-site energy.
    pub eps: f64,
    /// Most likely mean Hessian eigenvalue at this energy.
    pub lambda_bar: f64,
    /// Annealed complexity `Sigma(eps, lambda_bar)`.
    pub sigma: f64,
    /// Index fraction, `None` outside `[eps_c, -eps_c]`.
    pub alpha: Option<f64>,
}

/// Expected fraction of negative Hessian eigenvalues at per-site energy
/// `eps`, via `alpha = (arccos x - x sqrt(1 - x^2)) / pi` with
/// `x = eps/eps_c`. Defined on the band `[eps_c, -eps_c]`.
pub fn index_from_energy(eps: f64, consts: &LandscapeConstants) -> Result<f64, RftError> {
    let x = eps / consts.eps_c;
    if !x.is_finite() || x.abs() > 1.0 {
        return Err(RftError::OutOfBand {
            eps,
            eps_c: consts.eps_c,
            minus_eps_c: -consts.eps_c,
        });
    }
    Ok((x.acos() - x * (1.0 - x * x).sqrt()) / PI)
}

/// Most likely mean Hessian eigenvalue at per-site energy `eps`:
/// `lambda_bar(eps) = 2 f'(0) eps / (f''(0) P)`. This is the minimizer of
/// [`psi`] over `lambda_bar` and reaches the support edge `2 sqrt(f''(0))`
/// exactly at `eps = eps_c`.
pub fn most_likely_mean_eigenvalue(eps: f64, consts: &LandscapeConstants) -> f64 {
    2.0 * consts.f1 * eps / (consts.f2 * consts.p)
}

/// Quadratic exponent `psi(lambda_bar, eps) = eps^2 - 2 (f'(0)/f''(0)) eps
/// lambda_bar + (P/2) lambda_bar^2` controlling how the expected number of
/// critical points decays away from the most likely mean eigenvalue.
pub fn psi(lambda_bar: f64, eps: f64, consts: &LandscapeConstants) -> f64 {
    let r = consts.f1 / consts.f2;
    eps * eps - 2.0 * r * eps * lambda_bar + 0.5 * consts.p * lambda_bar * lambda_bar
}

fn m_times_u(consts: &LandscapeConstants, eps: f64, lambda_bar: f64) -> [f64; 2] {
    let m = &consts.m;
    [
        m[0][0] * eps + m[0][1] * lambda_bar,
        m[1][0] * eps + m[1][1] * lambda_bar,
    ]
}

/// Annealed complexity at `u = (eps, lambda_bar)`:
/// `Sigma(u) = C1 - (1/2) C2 u^T M u`. The quadratic form `u^T M u` equals
/// [`psi`], so this agrees with `C1 - psi / (2 f''(0) Q)`.
pub fn complexity(eps: f64, lambda_bar: f64, consts: &LandscapeConstants) -> f64 {
    let mu = m_times_u(consts, eps, lambda_bar);
    consts.c1 - 0.5 * consts.c2 * (eps * mu[0] + lambda_bar * mu[1])
}

/// Gradient of [`complexity`] with respect to `u = (eps, lambda_bar)`:
/// `-C2 M u` exactly, since `M` is symmetric.
pub fn complexity_gradient(eps: f64, lambda_bar: f64, consts: &LandscapeConstants) -> [f64; 2] {
    let mu = m_times_u(consts, eps, lambda_bar);
    [-consts.c2 * mu[0], -consts.c2 * mu[1]]
}

/// Multiplier `1 + 2 / (1 + f(0) f''(0) / f'(0)^2)` by which a relative
/// decrease in per-site energy amplifies the decrease of `psi` along the
/// most likely ray; equivalently, the effective learning-rate factor of a
/// proportional regularization decay.
pub fn effective_lr_factor(cov: &CovarianceModel) -> f64 {
    1.0 + 2.0 / (1.0 + cov.f0() * cov.f2() / (cov.f1() * cov.f1()))
}

/// Smallest L2 strength that shifts the expected Hessian spectrum at
/// per-site energy `eps` to be positive semidefinite:
/// `lambda_min = (2 sqrt(f''(0)) - lambda_bar(eps)) / 2`.
pub fn convexifying_strength(eps: f64, consts: &LandscapeConstants) -> f64 {
    (2.0 * consts.f2.sqrt() - most_likely_mean_eigenvalue(eps, consts)) / 2.0
}

/// Converts an expected critical-point count at dimension `n` into a
/// per-site complexity `ln(count)/n`. Counts below one are rejected.
pub fn count_to_complexity(count: f64, n: u64) -> Result<f64, RftError> {
    if n == 0 {
        return Err(RftError::ZeroDimension);
    }
    if !count.is_finite() || count < 1.0 {
        return Err(RftError::InvalidCount { count });
    }
    Ok(count.ln() / n as f64)
}

/// Evaluates the full theory row at per-site energy `eps`.
pub fn complexity_point(eps: f64, consts: &LandscapeConstants) -> ComplexityPoint {
    let lambda_bar = most_likely_mean_eigenvalue(eps, consts);
    ComplexityPoint {
        eps,
        lambda_bar,
        sigma: complexity(eps, lambda_bar, consts),
        alpha: index_from_energy(eps, consts).ok(),
    }
}
