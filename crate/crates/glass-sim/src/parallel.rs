//! Sample fan-out for the Monte Carlo loops.
//!
//! A "sample" is a pure function of its index (each index derives its own
//! generator via [`crate::seed::stream_rng`]), so samples can run on any
//! number of threads. Results are collected in index order and reduced
//! sequentially by the callers, which makes the parallel and sequential
//! paths agree bit for bit.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluates `f(0), ..., f(count - 1)`, in parallel when the `parallel`
/// feature is enabled, and returns the results in index order.
pub fn map_samples<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_samples_seq(count, f)
    }
}

/// Sequential counterpart of [`map_samples`]; always available so the two
/// paths can be compared directly.
pub fn map_samples_seq<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::stream_rng;
    use rand::Rng;

    fn noisy_sample(index: usize) -> f64 {
        let mut rng = stream_rng("parallel-test", 3, index as u64);
        (0..32).map(|_| rng.random::<f64>()).sum()
    }

    #[test]
    fn parallel_and_sequential_agree_bit_for_bit() {
        let par = map_samples(64, noisy_sample);
        let seq = map_samples_seq(64, noisy_sample);
        assert_eq!(par, seq);
    }

    #[test]
    fn results_arrive_in_index_order() {
        let indices = map_samples(16, |i| i);
        assert_eq!(indices, (0..16).collect::<Vec<_>>());
    }
}
