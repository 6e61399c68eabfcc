use rft_core::{semicircle_cdf, RftError};

use crate::error::GlassError;

/// Kolmogorov-Smirnov distance between the empirical distribution of a
/// sorted sample and the semicircle law with curvature scale `f2`.
pub fn ks_distance_to_semicircle(sorted: &[f64], f2: f64) -> Result<f64, GlassError> {
    if sorted.is_empty() {
        return Err(GlassError::invalid("sample", "empty eigenvalue list"));
    }
    if sorted.windows(2).any(|w| w[0] > w[1]) {
        return Err(GlassError::invalid("sample", "eigenvalues must be sorted"));
    }
    let n = sorted.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let cdf = semicircle_cdf(x, f2).map_err(from_rft)?;
        let below = i as f64 / n;
        let above = (i + 1) as f64 / n;
        sup = sup.max((cdf - below).abs()).max((cdf - above).abs());
    }
    Ok(sup)
}

fn from_rft(err: RftError) -> GlassError {
    GlassError::invalid("f2", err.to_string())
}

/// Fraction of strictly negative entries.
pub fn negative_fraction(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().filter(|&&v| v < 0.0).count() as f64 / values.len() as f64
}

/// Sample mean and standard error of the mean.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, f64::INFINITY);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
