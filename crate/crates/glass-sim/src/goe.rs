use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::GlassError;
use crate::seed::stream_rng;

/// Draws one GOE matrix at the Hessian-bulk normalization: off-diagonal
/// entries `N(0, 1/n)`, diagonal entries `N(0, 2/n)`, symmetric. The
/// empirical spectrum approaches the semicircle on `[-2, 2]` as n grows.
pub fn sample_goe(n: usize, seed: u64) -> Result<DMatrix<f64>, GlassError> {
    if n < 2 {
        return Err(GlassError::BadShape { n, p: 2 });
    }
    let mut rng = stream_rng("goe", seed, 0);
    let off = (1.0 / n as f64).sqrt();
    let diag = (2.0 / n as f64).sqrt();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for k in i..n {
            let z: f64 = rng.sample(StandardNormal);
            if i == k {
                a[(i, i)] = diag * z;
            } else {
                a[(i, k)] = off * z;
                a[(k, i)] = off * z;
            }
        }
    }
    Ok(a)
}

/// Eigenvalues of a symmetric matrix, sorted ascending.
pub fn spectrum(matrix: &DMatrix<f64>) -> Vec<f64> {
    let mut eigs: Vec<f64> = matrix
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigs.sort_by(|a, b| a.total_cmp(b));
    eigs
}
