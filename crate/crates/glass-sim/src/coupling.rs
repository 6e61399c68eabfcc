use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::GlassError;
use crate::seed::stream_rng;

/// Largest number of coupling values one tensor may hold (2^26 values,
/// 512 MiB of f64). Guards against accidental n^p blowups.
pub const COUPLING_BUDGET: usize = 1 << 26;

/// A dense order-p coupling realization: one i.i.d. standard-normal value
/// per ordered index tuple `(i_1, ..., i_p)` in `{0..n-1}^p`.
///
/// Values are stored row-major in tuple order (`i_1` most significant), so
/// `values[i_1 * n^(p-1) + ... + i_p]` is the coupling of that tuple.
/// Regenerating with the same `(n, p, seed)` reproduces the tensor bit for
/// bit.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTensor {
    n: usize,
    p: u32,
    values: Vec<f64>,
    seed: u64,
}

/// Checks the tensor shape against [`COUPLING_BUDGET`] and returns the
/// number of tuples `n^p`.
pub(crate) fn checked_tuple_count(n: usize, p: u32) -> Result<usize, GlassError> {
    if n < 2 || p < 2 {
        return Err(GlassError::BadShape { n, p });
    }
    let requested = (n as u128).pow(p);
    if requested > COUPLING_BUDGET as u128 {
        return Err(GlassError::TensorTooLarge {
            n,
            p,
            requested,
            budget: COUPLING_BUDGET,
        });
    }
    Ok(requested as usize)
}

impl CouplingTensor {
    /// Draws the `n^p` couplings from the seeded stream.
    pub fn sample(n: usize, p: u32, seed: u64) -> Result<Self, GlassError> {
        let count = checked_tuple_count(n, p)?;
        let mut rng = stream_rng("couplings", seed, 0);
        let values = (0..count)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        Ok(CouplingTensor { n, p, values, seed })
    }

    /// All-zero couplings of the given shape (the free field H = 0).
    pub fn zeros(n: usize, p: u32, seed: u64) -> Result<Self, GlassError> {
        let count = checked_tuple_count(n, p)?;
        Ok(CouplingTensor {
            n,
            p,
            values: vec![0.0; count],
            seed,
        })
    }

    /// Builds a tensor from explicit values laid out in tuple order.
    pub fn from_values(n: usize, p: u32, values: Vec<f64>) -> Result<Self, GlassError> {
        let count = checked_tuple_count(n, p)?;
        if values.len() != count {
            return Err(GlassError::DimensionMismatch {
                expected: count,
                got: values.len(),
            });
        }
        Ok(CouplingTensor {
            n,
            p,
            values,
            seed: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of ordered tuples, `n^p`.
    pub fn tuple_count(&self) -> usize {
        self.values.len()
    }

    /// Coupling of one ordered tuple; panics if an index is out of range or
    /// the tuple length is not `p`.
    pub fn value_at(&self, tuple: &[usize]) -> f64 {
        assert_eq!(tuple.len(), self.p as usize, "tuple length must equal p");
        let mut flat = 0usize;
        for &i in tuple {
            assert!(i < self.n, "tuple index {i} out of range for n = {}", self.n);
            flat = flat * self.n + i;
        }
        self.values[flat]
    }
}
