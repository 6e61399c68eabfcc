use crate::coupling::CouplingTensor;
use crate::error::GlassError;

/// Largest n for which all 2^n hard-spin states are enumerated.
pub const ENUMERATION_BOUND: usize = 24;

/// An exactly enumerable Gibbs ensemble: one Sherrington-Kirkpatrick
/// disorder realization at inverse temperature `beta`.
#[derive(Debug, Clone)]
pub struct GibbsEnsemble<'a> {
    beta: f64,
    couplings: &'a CouplingTensor,
}

impl<'a> GibbsEnsemble<'a> {
    pub fn new(couplings: &'a CouplingTensor, beta: f64) -> Result<Self, GlassError> {
        if couplings.p() != 2 {
            return Err(GlassError::WrongOrder {
                expected: 2,
                got: couplings.p(),
            });
        }
        if couplings.n() > ENUMERATION_BOUND {
            return Err(GlassError::EnumerationTooLarge {
                n: couplings.n(),
                max: ENUMERATION_BOUND,
            });
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(GlassError::invalid("beta", format!("{beta} is not > 0")));
        }
        Ok(GibbsEnsemble { beta, couplings })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n(&self) -> usize {
        self.couplings.n()
    }
}

/// Exact enumeration of one ensemble.
///
/// States are indexed by bit pattern: state `s` has `sigma_i = +1` when bit
/// `i` of `s` is set, else `-1`. `partition_function` is `exp(log_partition)`
/// and may overflow to infinity at large `beta * |min H|`; `log_partition`
/// and the probabilities are always finite because the energies are shifted
/// by their minimum before exponentiating.
#[derive(Debug, Clone)]
pub struct GibbsReport {
    pub partition_function: f64,
    pub log_partition: f64,
    /// Gibbs probability of every state, indexed by bit pattern.
    pub probabilities: Vec<f64>,
    /// `log_partition / n / beta` for this disorder realization.
    pub free_energy: f64,
    /// Ground-state energy `min_s H(s)`.
    pub min_energy: f64,
    /// Bit pattern of one ground state (the lowest index if degenerate).
    pub ground_state: usize,
}

/// Sums the Gibbs weights of all 2^n states.
pub fn enumerate_gibbs(ens: &GibbsEnsemble<'_>) -> GibbsReport {
    let n = ens.couplings.n();
    let beta = ens.beta;
    let values = ens.couplings.values();
    let scale = -1.0 / (n as f64).sqrt();

    // Symmetrized off-diagonal couplings, so each state costs one pass over
    // unordered pairs.
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for k in (i + 1)..n {
            pairs.push((i, k, values[i * n + k] + values[k * n + i]));
        }
    }

    let states = 1usize << n;
    let mut energies = Vec::with_capacity(states);
    let mut min_energy = f64::INFINITY;
    let mut ground_state = 0usize;
    for s in 0..states {
        let mut sum = 0.0;
        for &(i, k, j) in &pairs {
            let aligned = ((s >> i) ^ (s >> k)) & 1 == 0;
            sum += if aligned { j } else { -j };
        }
        let energy = scale * sum;
        if energy < min_energy {
            min_energy = energy;
            ground_state = s;
        }
        energies.push(energy);
    }

    let mut weights: Vec<f64> = energies
        .iter()
        .map(|e| (-beta * (e - min_energy)).exp())
        .collect();
    let shifted_sum: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= shifted_sum;
    }
    let log_partition = shifted_sum.ln() - beta * min_energy;
    GibbsReport {
        partition_function: log_partition.exp(),
        log_partition,
        probabilities: weights,
        free_energy: log_partition / n as f64 / beta,
        min_energy,
        ground_state,
    }
}
