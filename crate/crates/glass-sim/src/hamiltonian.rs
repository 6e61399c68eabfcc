use nalgebra::DMatrix;

use crate::coupling::CouplingTensor;
use crate::error::GlassError;
use crate::spin::SpinConfiguration;

/// Largest n for which dense Hessians are assembled.
pub const DENSE_BOUND: usize = 512;

/// Scale `n^(-(p-1)/2)` in front of the order-p energy sum.
pub(crate) fn prefactor(n: usize, p: u32) -> f64 {
    (n as f64).powf(-0.5 * (f64::from(p) - 1.0))
}

/// Runs `body(flat_index, digits)` over all ordered tuples in `{0..n-1}^p`,
/// in the row-major order of [`CouplingTensor`].
pub(crate) fn for_each_tuple(n: usize, p: usize, mut body: impl FnMut(usize, &[usize])) {
    let mut digits = vec![0usize; p];
    let count = n.pow(p as u32);
    for t in 0..count {
        body(t, &digits);
        for k in (0..p).rev() {
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn check_pair(j: &CouplingTensor, s: &SpinConfiguration) -> Result<(), GlassError> {
    if s.n() != j.n() {
        return Err(GlassError::DimensionMismatch {
            expected: j.n(),
            got: s.n(),
        });
    }
    Ok(())
}

/// Order-p energy `H = -n^(-(p-1)/2) * sum_tuples J * sigma_{i_1} ... sigma_{i_p}`,
/// summed over all ordered tuples including repeated indices.
pub fn hamiltonian_p_spin(j: &CouplingTensor, s: &SpinConfiguration) -> Result<f64, GlassError> {
    check_pair(j, s)?;
    let sigma = s.sigma();
    let values = j.values();
    let p = j.p() as usize;
    let mut sum = 0.0;
    for_each_tuple(j.n(), p, |t, digits| {
        let mut prod = values[t];
        for &d in digits {
            prod *= sigma[d];
        }
        sum += prod;
    });
    Ok(-prefactor(j.n(), j.p()) * sum)
}

/// Sherrington-Kirkpatrick energy `-(1/sqrt(n)) * sum_{i != j} J_ij sigma_i sigma_j`
/// over hard spins; the diagonal is excluded because `sigma_i^2 = 1` only
/// shifts the energy by a constant.
pub fn hamiltonian_sk(j: &CouplingTensor, s: &SpinConfiguration) -> Result<f64, GlassError> {
    if j.p() != 2 {
        return Err(GlassError::WrongOrder {
            expected: 2,
            got: j.p(),
        });
    }
    check_pair(j, s)?;
    if !s.is_binary() {
        return Err(GlassError::BinaryRequired);
    }
    let n = j.n();
    let sigma = s.sigma();
    let values = j.values();
    let mut sum = 0.0;
    for i in 0..n {
        for k in 0..n {
            if i != k {
                sum += values[i * n + k] * sigma[i] * sigma[k];
            }
        }
    }
    Ok(-sum / (n as f64).sqrt())
}

/// Energy together with the exact polynomial gradient `dH/dsigma_i`,
/// accumulated in one pass over the tuples.
pub fn energy_and_gradient(
    j: &CouplingTensor,
    s: &SpinConfiguration,
) -> Result<(f64, Vec<f64>), GlassError> {
    check_pair(j, s)?;
    let (energy, grad) = energy_and_gradient_raw(j, s.sigma());
    Ok((energy, grad))
}

/// Energy and gradient at an arbitrary point, which need not sit on the
/// sphere because the polynomial and its gradient are defined everywhere.
///
/// Optimization loops that maintain the constraint themselves use this entry
/// point; it shares its kernel with [`spherical_descent`], so the two
/// produce bitwise-identical trajectories.
///
/// [`spherical_descent`]: crate::descent::spherical_descent
pub fn energy_and_gradient_at(
    j: &CouplingTensor,
    point: &[f64],
) -> Result<(f64, Vec<f64>), GlassError> {
    if point.len() != j.n() {
        return Err(GlassError::DimensionMismatch {
            expected: j.n(),
            got: point.len(),
        });
    }
    Ok(energy_and_gradient_raw(j, point))
}

pub(crate) fn energy_and_gradient_raw(j: &CouplingTensor, sigma: &[f64]) -> (f64, Vec<f64>) {
    let n = j.n();
    let p = j.p() as usize;
    let values = j.values();
    let mut pre = vec![1.0; p + 1];
    let mut suf = vec![1.0; p + 1];
    let mut sum = 0.0;
    let mut grad = vec![0.0; n];
    for_each_tuple(n, p, |t, digits| {
        let jt = values[t];
        for k in 0..p {
            pre[k + 1] = pre[k] * sigma[digits[k]];
        }
        for k in (0..p).rev() {
            suf[k] = sigma[digits[k]] * suf[k + 1];
        }
        sum += jt * pre[p];
        for k in 0..p {
            grad[digits[k]] += jt * pre[k] * suf[k + 1];
        }
    });
    let c = -prefactor(j.n(), j.p());
    for g in grad.iter_mut() {
        *g *= c;
    }
    (c * sum, grad)
}

/// Exact polynomial gradient `dH/dsigma_i`.
pub fn euclidean_gradient(j: &CouplingTensor, s: &SpinConfiguration) -> Result<Vec<f64>, GlassError> {
    energy_and_gradient(j, s).map(|(_, grad)| grad)
}

/// Projects a vector onto the tangent space of the radius-sqrt(n) sphere
/// at `sigma`: `v - (v . sigma / n) sigma`.
pub fn project_tangent(v: &[f64], sigma: &[f64]) -> Vec<f64> {
    let n = sigma.len() as f64;
    let radial: f64 = v.iter().zip(sigma).map(|(a, b)| a * b).sum::<f64>() / n;
    v.iter().zip(sigma).map(|(a, b)| a - radial * b).collect()
}

/// Euclidean gradient projected onto the tangent space at `sigma`.
pub fn riemannian_gradient(
    j: &CouplingTensor,
    s: &SpinConfiguration,
) -> Result<Vec<f64>, GlassError> {
    let grad = euclidean_gradient(j, s)?;
    Ok(project_tangent(&grad, s.sigma()))
}

/// Dense matrix of exact second partials `d^2 H / dsigma_i dsigma_j`.
///
/// Mirror entries accumulate the same terms in the same order, so the
/// result is symmetric bit for bit.
pub fn hessian(j: &CouplingTensor, s: &SpinConfiguration) -> Result<DMatrix<f64>, GlassError> {
    check_pair(j, s)?;
    let n = j.n();
    if n > DENSE_BOUND {
        return Err(GlassError::HessianTooLarge {
            n,
            max: DENSE_BOUND,
        });
    }
    let sigma = s.sigma();
    let values = j.values();
    let p = j.p() as usize;
    let mut h = DMatrix::<f64>::zeros(n, n);
    for_each_tuple(n, p, |t, digits| {
        let jt = values[t];
        for k in 0..p {
            for l in (k + 1)..p {
                let mut prod = jt;
                for (r, &d) in digits.iter().enumerate() {
                    if r != k && r != l {
                        prod *= sigma[d];
                    }
                }
                h[(digits[k], digits[l])] += prod;
                h[(digits[l], digits[k])] += prod;
            }
        }
    });
    h *= -prefactor(j.n(), j.p());
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::stream_rng;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    fn spherical(sigma: Vec<f64>) -> SpinConfiguration {
        SpinConfiguration::from_spherical(sigma).unwrap()
    }

    fn binary(sigma: Vec<f64>) -> SpinConfiguration {
        SpinConfiguration::from_binary(sigma).unwrap()
    }

    #[test]
    fn identity_couplings_at_the_diagonal_configuration() {
        let j = CouplingTensor::from_values(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        let h = hamiltonian_p_spin(&j, &spherical(vec![1.0, 1.0])).unwrap();
        assert!((h + SQRT_2).abs() <= 1e-12, "h = {h}");
    }

    #[test]
    fn single_cubic_coupling_along_the_first_axis() {
        let mut values = vec![0.0; 8];
        values[0] = 1.0;
        let j = CouplingTensor::from_values(2, 3, values).unwrap();
        let h = hamiltonian_p_spin(&j, &spherical(vec![SQRT_2, 0.0])).unwrap();
        assert!((h + SQRT_2).abs() <= 1e-12, "h = {h}");
    }

    #[test]
    fn even_order_energies_are_parity_invariant() {
        let j = CouplingTensor::sample(4, 2, 9).unwrap();
        let mut rng = stream_rng("hamiltonian-test", 9, 0);
        let s = SpinConfiguration::random_spherical(4, &mut rng);
        let flipped = spherical(s.sigma().iter().map(|x| -x).collect());
        let a = hamiltonian_p_spin(&j, &s).unwrap();
        let b = hamiltonian_p_spin(&j, &flipped).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn antisymmetric_sk_couplings_cancel() {
        let j = CouplingTensor::from_values(2, 2, vec![0.0, 1.0, -1.0, 0.0]).unwrap();
        for sigma in [vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, -1.0]] {
            assert_eq!(hamiltonian_sk(&j, &binary(sigma)).unwrap(), 0.0);
        }
    }

    #[test]
    fn symmetric_sk_pair_at_aligned_spins() {
        let j = CouplingTensor::from_values(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let h = hamiltonian_sk(&j, &binary(vec![1.0, 1.0])).unwrap();
        assert!((h + SQRT_2).abs() <= 1e-15, "h = {h}");
    }

    #[test]
    fn zero_couplings_have_zero_sk_energy() {
        let j = CouplingTensor::zeros(4, 2, 0).unwrap();
        let h = hamiltonian_sk(&j, &binary(vec![1.0, -1.0, 1.0, -1.0])).unwrap();
        assert_eq!(h, 0.0);
    }

    #[test]
    fn sk_rejects_soft_spins_and_higher_orders() {
        let j2 = CouplingTensor::zeros(2, 2, 0).unwrap();
        let j3 = CouplingTensor::zeros(2, 3, 0).unwrap();
        let soft = spherical(vec![SQRT_2, 0.0]);
        assert_eq!(
            hamiltonian_sk(&j2, &soft).unwrap_err(),
            GlassError::BinaryRequired
        );
        assert_eq!(
            hamiltonian_sk(&j3, &binary(vec![1.0, 1.0])).unwrap_err(),
            GlassError::WrongOrder {
                expected: 2,
                got: 3
            }
        );
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let j = CouplingTensor::zeros(4, 2, 0).unwrap();
        let s = binary(vec![1.0, 1.0]);
        assert_eq!(
            hamiltonian_p_spin(&j, &s).unwrap_err(),
            GlassError::DimensionMismatch {
                expected: 4,
                got: 2
            }
        );
    }

    #[test]
    fn zero_couplings_have_zero_gradient_and_hessian() {
        let j = CouplingTensor::zeros(3, 3, 0).unwrap();
        let mut rng = stream_rng("hamiltonian-test", 1, 0);
        let s = SpinConfiguration::random_spherical(3, &mut rng);
        assert!(euclidean_gradient(&j, &s).unwrap().iter().all(|&g| g == 0.0));
        assert!(hessian(&j, &s).unwrap().iter().all(|&h| h == 0.0));
    }

    #[test]
    fn energy_and_gradient_match_the_single_purpose_paths() {
        let j = CouplingTensor::sample(6, 3, 21).unwrap();
        let mut rng = stream_rng("hamiltonian-test", 21, 0);
        let s = SpinConfiguration::random_spherical(6, &mut rng);
        let (e, g) = energy_and_gradient(&j, &s).unwrap();
        assert!((e - hamiltonian_p_spin(&j, &s).unwrap()).abs() <= 1e-12);
        assert_eq!(g, euclidean_gradient(&j, &s).unwrap());
    }

    #[test]
    fn riemannian_gradient_is_tangent() {
        let j = CouplingTensor::sample(16, 3, 2).unwrap();
        let mut rng = stream_rng("hamiltonian-test", 2, 0);
        let s = SpinConfiguration::random_spherical(16, &mut rng);
        let r = riemannian_gradient(&j, &s).unwrap();
        let dot: f64 = r.iter().zip(s.sigma()).map(|(a, b)| a * b).sum();
        assert!(dot.abs() <= 1e-10, "dot = {dot:e}");
    }

    #[test]
    fn quadratic_hessian_is_the_symmetrized_coupling_matrix() {
        let j = CouplingTensor::sample(5, 2, 3).unwrap();
        let mut rng = stream_rng("hamiltonian-test", 3, 0);
        let s = SpinConfiguration::random_spherical(5, &mut rng);
        let h = hessian(&j, &s).unwrap();
        let c = 1.0 / 5f64.sqrt();
        for i in 0..5 {
            for k in 0..5 {
                if i != k {
                    let expected = -c * (j.value_at(&[i, k]) + j.value_at(&[k, i]));
                    assert!((h[(i, k)] - expected).abs() <= 1e-14);
                }
            }
            let expected = -2.0 * c * j.value_at(&[i, i]);
            assert!((h[(i, i)] - expected).abs() <= 1e-14);
        }
    }

    #[test]
    fn hessian_is_symmetric_bit_for_bit() {
        let j = CouplingTensor::sample(8, 3, 17).unwrap();
        let mut rng = stream_rng("hamiltonian-test", 17, 0);
        let s = SpinConfiguration::random_spherical(8, &mut rng);
        let h = hessian(&j, &s).unwrap();
        for i in 0..8 {
            for k in 0..8 {
                assert_eq!(h[(i, k)], h[(k, i)]);
            }
        }
    }

    #[test]
    fn hessian_rejects_sizes_over_the_dense_bound() {
        let j = CouplingTensor::sample(600, 2, 0).unwrap();
        let mut rng = stream_rng("hamiltonian-test", 4, 0);
        let s = SpinConfiguration::random_spherical(600, &mut rng);
        assert_eq!(
            hessian(&j, &s).unwrap_err(),
            GlassError::HessianTooLarge { n: 600, max: 512 }
        );
    }
}
