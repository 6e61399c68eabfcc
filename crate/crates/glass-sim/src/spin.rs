use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::GlassError;

/// How far `sum sigma_i^2` may drift from `n` before a configuration stops
/// counting as spherical.
pub const SPHERE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinKind {
    Binary,
    Spherical,
}

/// A spin configuration: `n` real spins, either Ising (`sigma_i` in {-1, +1})
/// or spherical (`sum sigma_i^2 = n` within [`SPHERE_TOLERANCE`]).
///
/// Binary configurations satisfy the spherical constraint exactly, so they
/// are accepted everywhere a spherical one is.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinConfiguration {
    n: usize,
    sigma: Vec<f64>,
    kind: SpinKind,
}

impl SpinConfiguration {
    /// Wraps a real vector after checking the spherical constraint.
    pub fn from_spherical(sigma: Vec<f64>) -> Result<Self, GlassError> {
        let n = sigma.len();
        let defect = (sigma.iter().map(|s| s * s).sum::<f64>() - n as f64).abs();
        if !defect.is_finite() || defect > SPHERE_TOLERANCE {
            return Err(GlassError::NotSpherical { defect });
        }
        Ok(SpinConfiguration {
            n,
            sigma,
            kind: SpinKind::Spherical,
        })
    }

    /// Wraps a vector of hard spins after checking every entry is exactly
    /// plus or minus one.
    pub fn from_binary(sigma: Vec<f64>) -> Result<Self, GlassError> {
        for (index, &value) in sigma.iter().enumerate() {
            if value != 1.0 && value != -1.0 {
                return Err(GlassError::NotBinary { index, value });
            }
        }
        Ok(SpinConfiguration {
            n: sigma.len(),
            sigma,
            kind: SpinKind::Binary,
        })
    }

    /// Uniform point on the radius-sqrt(n) sphere: a standard Gaussian
    /// vector rescaled onto the constraint.
    pub fn random_spherical(n: usize, rng: &mut impl Rng) -> Self {
        let mut sigma: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        rescale_to_sphere(&mut sigma);
        SpinConfiguration {
            n,
            sigma,
            kind: SpinKind::Spherical,
        }
    }

    /// Uniform configuration of hard spins.
    pub fn random_binary(n: usize, rng: &mut impl Rng) -> Self {
        let sigma = (0..n)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        SpinConfiguration {
            n,
            sigma,
            kind: SpinKind::Binary,
        }
    }

    pub(crate) fn from_descent(sigma: Vec<f64>) -> Self {
        SpinConfiguration {
            n: sigma.len(),
            sigma,
            kind: SpinKind::Spherical,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn kind(&self) -> SpinKind {
        self.kind
    }

    pub fn is_binary(&self) -> bool {
        self.kind == SpinKind::Binary
    }
}

/// Rescales a nonzero vector onto `sum sigma_i^2 = n` in place.
pub(crate) fn rescale_to_sphere(sigma: &mut [f64]) {
    let norm2: f64 = sigma.iter().map(|s| s * s).sum();
    let factor = ((sigma.len() as f64) / norm2).sqrt();
    for s in sigma.iter_mut() {
        *s *= factor;
    }
}
