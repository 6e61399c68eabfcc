use crate::error::RftError;

/// Mixed p-spin covariance mixture together with the derivatives at the
/// origin of the equivalent isotropic covariance.
///
/// A mixture `{(p, gamma_p)}` defines the overlap covariance
/// `xi(q) = sum_p gamma_p q^p`. On the sphere `sum_i sigma_i^2 = n` the
/// overlap `q` and the squared distance are affinely related, so the
/// equivalent isotropic covariance is `f(u) = xi(1 - u)` and
///
/// ```text
/// f(0)   = sum_p gamma_p            (> 0)
/// f'(0)  = -sum_p gamma_p p         (< 0)
/// f''(0) = sum_p gamma_p p (p - 1)  (> 0)
/// ```
///
/// Every mixture term needs degree `p >= 2` and a finite weight `>= 0`,
/// with at least one weight strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceModel {
    mixture: Vec<(u32, f64)>,
    f0: f64,
    f1: f64,
    f2: f64,
}

impl CovarianceModel {
    /// Builds the model from mixture terms `(p, gamma_p)`.
    pub fn from_mixture(mixture: &[(u32, f64)]) -> Result<Self, RftError> {
        if mixture.is_empty() {
            return Err(RftError::EmptyMixture);
        }
        let mut any_positive = false;
        for &(p, weight) in mixture {
            if p < 2 {
                return Err(RftError::InvalidDegree { p });
            }
            if !weight.is_finite() || weight < 0.0 {
                return Err(RftError::InvalidWeight { p, weight });
            }
            any_positive |= weight > 0.0;
        }
        if !any_positive {
            return Err(RftError::AllWeightsZero);
        }
        let mut f0 = 0.0;
        let mut f1 = 0.0;
        let mut f2 = 0.0;
        for &(p, weight) in mixture {
            let p = f64::from(p);
            f0 += weight;
            f1 -= weight * p;
            f2 += weight * p * (p - 1.0);
        }
        Ok(Self {
            mixture: mixture.to_vec(),
            f0,
            f1,
            f2,
        })
    }

    /// Pure p-spin model: a single mixture term with unit weight.
    pub fn pure(p: u32) -> Result<Self, RftError> {
        Self::from_mixture(&[(p, 1.0)])
    }

    /// Builds the model directly from covariance derivatives at the origin,
    /// without an underlying mixture. Requires `f0 > 0`, `f1 < 0`, `f2 > 0`.
    pub fn from_derivatives(f0: f64, f1: f64, f2: f64) -> Result<Self, RftError> {
        let finite = f0.is_finite() && f1.is_finite() && f2.is_finite();
        if !finite || f0 <= 0.0 || f1 >= 0.0 || f2 <= 0.0 {
            return Err(RftError::InvalidDerivatives { f0, f1, f2 });
        }
        Ok(Self {
            mixture: Vec::new(),
            f0,
            f1,
            f2,
        })
    }

    /// `f(0)`, the field variance per site.
    pub fn f0(&self) -> f64 {
        self.f0
    }

    /// `f'(0)`, always negative.
    pub fn f1(&self) -> f64 {
        self.f1
    }

    /// `f''(0)`, the curvature scale of the Hessian spectrum.
    pub fn f2(&self) -> f64 {
        self.f2
    }

    /// Mixture terms, empty when built with [`from_derivatives`].
    ///
    /// [`from_derivatives`]: Self::from_derivatives
    pub fn mixture(&self) -> &[(u32, f64)] {
        &self.mixture
    }

    /// Evaluates the overlap covariance `xi(q) = sum_p gamma_p q^p`.
    ///
    /// Returns `None` when the model was built from raw derivatives and no
    /// mixture is available.
    pub fn xi(&self, q: f64) -> Option<f64> {
        if self.mixture.is_empty() {
            return None;
        }
        Some(
            self.mixture
                .iter()
                .map(|&(p, weight)| weight * q.powi(p as i32))
                .sum(),
        )
    }
}
