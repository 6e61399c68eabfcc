use crate::covariance::CovarianceModel;
use crate::error::RftError;

/// Scalars and the 2x2 matrix that determine the landscape of a covariance
/// model: the index curve, the critical energy, and the quadratic
/// complexity surface.
///
/// With `r = f'(0)/f''(0)`:
///
/// ```text
/// P     = f(0)/f''(0) + r^2
/// Q     = f(0)/f''(0) - r^2
/// eps_c = P f''(0)^{3/2} / f'(0)            (< 0)
/// C1    = (1/2) ln(f''(0) / |f'(0)|)
/// C2    = 1 / (f''(0) Q)
/// M     = [[1, -r], [-r, P/2]]
/// ```
///
/// The finite-size variants `P_N`, `Q_N` carry `(1 -+ 2/n)` corrections on
/// the `f(0)/f''(0)` term and are populated when a dimension is supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeConstants {
    /// Copy of `f(0)` from the covariance model.
    pub f0: f64,
    /// Copy of `f'(0)` from the covariance model.
    pub f1: f64,
    /// Copy of `f''(0)` from the covariance model.
    pub f2: f64,
    /// `P = f0/f2 + (f1/f2)^2`.
    pub p: f64,
    /// `Q = f0/f2 - (f1/f2)^2`. May take either sign but never zero.
    pub q: f64,
    /// Finite-size `P_N = (1 - 2/n) f0/f2 + (f1/f2)^2`, if `n` was given.
    pub p_n: Option<f64>,
    /// Finite-size `Q_N = (1 + 2/n) f0/f2 - (f1/f2)^2`, if `n` was given.
    pub q_n: Option<f64>,
    /// Critical energy `eps_c = P f2^{3/2} / f1`, always negative.
    pub eps_c: f64,
    /// Additive complexity constant `C1 = (1/2) ln(f2/|f1|)`.
    pub c1: f64,
    /// Quadratic complexity coefficient `C2 = 1/(f2 Q)`.
    pub c2: f64,
    /// Symmetric matrix of the quadratic form in `u = (eps, lambda_bar)`.
    pub m: [[f64; 2]; 2],
}

impl LandscapeConstants {
    /// Derives the constants from a covariance model, with optional
    /// finite-size corrections at dimension `n`.
    ///
    /// Fails with [`RftError::DegenerateConstants`] when `Q = 0`, which
    /// leaves `C2` undefined.
    pub fn from_covariance(cov: &CovarianceModel, n: Option<u32>) -> Result<Self, RftError> {
        let (f0, f1, f2) = (cov.f0(), cov.f1(), cov.f2());
        let r = f1 / f2;
        let p = f0 / f2 + r * r;
        let q = f0 / f2 - r * r;
        if q == 0.0 {
            return Err(RftError::DegenerateConstants);
        }
        let (p_n, q_n) = match n {
            Some(0) => return Err(RftError::ZeroDimension),
            Some(n) => {
                let correction = 2.0 / f64::from(n);
                (
                    Some((1.0 - correction) * f0 / f2 + r * r),
                    Some((1.0 + correction) * f0 / f2 - r * r),
                )
            }
            None => (None, None),
        };
        Ok(Self {
            f0,
            f1,
            f2,
            p,
            q,
            p_n,
            q_n,
            eps_c: p * (f2 * f2.sqrt()) / f1,
            c1: 0.5 * (f2 / f1.abs()).ln(),
            c2: 1.0 / (f2 * q),
            m: [[1.0, -r], [-r, 0.5 * p]],
        })
    }
}
