use std::f64::consts::PI;

use crate::error::RftError;

/// How index functions treat a mean eigenvalue outside the semicircle
/// support `[-2 sqrt(f2), 2 sqrt(f2)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportMode {
    /// Out-of-support inputs are an error.
    Strict,
    /// Out-of-support inputs are clamped to the nearest edge.
    Clamp,
}

fn edge(f2: f64) -> Result<f64, RftError> {
    if !f2.is_finite() || f2 <= 0.0 {
        return Err(RftError::NonpositiveCurvature { f2 });
    }
    Ok(2.0 * f2.sqrt())
}

/// Semicircle eigenvalue density `sqrt(4 f2 - lambda^2) / (2 pi f2)` on the
/// support `[-2 sqrt(f2), 2 sqrt(f2)]`, zero outside.
pub fn semicircle_density(lambda: f64, f2: f64) -> Result<f64, RftError> {
    let edge = edge(f2)?;
    if !lambda.is_finite() || lambda.abs() >= edge {
        return Ok(0.0);
    }
    Ok((4.0 * f2 - lambda * lambda).sqrt() / (2.0 * PI * f2))
}

/// Cumulative distribution of the semicircle density. Clamps to 0 below the
/// lower edge and 1 above the upper edge.
pub fn semicircle_cdf(lambda: f64, f2: f64) -> Result<f64, RftError> {
    let edge = edge(f2)?;
    if lambda <= -edge {
        return Ok(0.0);
    }
    if lambda >= edge {
        return Ok(1.0);
    }
    let s = lambda / edge;
    Ok(0.5 + (s * (1.0 - s * s).sqrt() + s.asin()) / PI)
}

/// Expected fraction of negative eigenvalues of a semicircle spectrum whose
/// mean has been shifted to `lambda_bar`:
///
/// ```text
/// alpha(lambda_bar) = (2/pi) Integral_{s}^{1} sqrt(1 - t^2) dt,
/// s = lambda_bar / (2 sqrt(f2))
/// ```
///
/// evaluated in the closed form `(arccos s - s sqrt(1 - s^2)) / pi`.
pub fn index_from_mean_eigenvalue(
    lambda_bar: f64,
    f2: f64,
    mode: SupportMode,
) -> Result<f64, RftError> {
    let edge = edge(f2)?;
    if !lambda_bar.is_finite() {
        return Err(RftError::OutOfSupport { lambda_bar, edge });
    }
    let mut s = lambda_bar / edge;
    if s.abs() > 1.0 {
        match mode {
            SupportMode::Strict => return Err(RftError::OutOfSupport { lambda_bar, edge }),
            SupportMode::Clamp => s = s.clamp(-1.0, 1.0),
        }
    }
    Ok((s.acos() - s * (1.0 - s * s).sqrt()) / PI)
}
