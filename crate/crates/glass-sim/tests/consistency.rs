//! Finite-difference consistency suites for the analytic gradient and
//! Hessian, checked against test-local polynomial oracles that decode
//! tuples and prefactors independently of the library kernels.

use glass_sim::{
    euclidean_gradient, hessian, stream_rng, CouplingTensor, SpinConfiguration,
};

const CONFIGS: [(usize, u32); 3] = [(8, 2), (8, 3), (16, 3)];
const POINTS: usize = 50;
const STEP: f64 = 1e-5;

fn oracle_energy(j: &CouplingTensor, sigma: &[f64]) -> f64 {
    let n = j.n();
    let p = j.p() as usize;
    let mut sum = 0.0;
    for (t, &jt) in j.values().iter().enumerate() {
        let mut rest = t;
        let mut prod = jt;
        for _ in 0..p {
            prod *= sigma[rest % n];
            rest /= n;
        }
        sum += prod;
    }
    -sum / (n as f64).sqrt().powi(j.p() as i32 - 1)
}

fn oracle_gradient(j: &CouplingTensor, sigma: &[f64]) -> Vec<f64> {
    let n = j.n();
    let p = j.p() as usize;
    let mut grad = vec![0.0; n];
    for (t, &jt) in j.values().iter().enumerate() {
        let mut digits = vec![0usize; p];
        let mut rest = t;
        for k in (0..p).rev() {
            digits[k] = rest % n;
            rest /= n;
        }
        for k in 0..p {
            let mut prod = jt;
            for (r, &d) in digits.iter().enumerate() {
                if r != k {
                    prod *= sigma[d];
                }
            }
            grad[digits[k]] += prod;
        }
    }
    let c = -1.0 / (n as f64).sqrt().powi(j.p() as i32 - 1);
    for g in grad.iter_mut() {
        *g *= c;
    }
    grad
}

fn random_point(n: usize, p: u32, index: u64) -> (CouplingTensor, SpinConfiguration) {
    let seed = 1000 * n as u64 + u64::from(p);
    let j = CouplingTensor::sample(n, p, seed).unwrap();
    let mut rng = stream_rng("fd-suite", seed, index);
    let s = SpinConfiguration::random_spherical(n, &mut rng);
    (j, s)
}

#[test]
fn analytic_gradients_match_central_differences() {
    for (n, p) in CONFIGS {
        for point in 0..POINTS {
            let (j, s) = random_point(n, p, point as u64);
            let grad = euclidean_gradient(&j, &s).unwrap();
            let mut sigma = s.sigma().to_vec();
            for i in 0..n {
                let base = sigma[i];
                sigma[i] = base + STEP;
                let up = oracle_energy(&j, &sigma);
                sigma[i] = base - STEP;
                let down = oracle_energy(&j, &sigma);
                sigma[i] = base;
                let fd = (up - down) / (2.0 * STEP);
                let tolerance = 1e-6 * grad[i].abs().max(1.0);
                assert!(
                    (fd - grad[i]).abs() <= tolerance,
                    "(n, p) = ({n}, {p}), point {point}, coordinate {i}: fd = {fd}, analytic = {}",
                    grad[i]
                );
            }
        }
    }
}

#[test]
fn analytic_hessians_match_gradient_differences() {
    for (n, p) in CONFIGS {
        for point in 0..POINTS {
            let (j, s) = random_point(n, p, point as u64);
            let matrix = hessian(&j, &s).unwrap();
            let mut sigma = s.sigma().to_vec();
            for k in 0..n {
                let base = sigma[k];
                sigma[k] = base + STEP;
                let up = oracle_gradient(&j, &sigma);
                sigma[k] = base - STEP;
                let down = oracle_gradient(&j, &sigma);
                sigma[k] = base;
                for i in 0..n {
                    let fd = (up[i] - down[i]) / (2.0 * STEP);
                    let entry = matrix[(i, k)];
                    let tolerance = 1e-5 * entry.abs().max(1.0);
                    assert!(
                        (fd - entry).abs() <= tolerance,
                        "(n, p) = ({n}, {p}), point {point}, entry ({i}, {k}): fd = {fd}, analytic = {entry}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_and_library_energies_agree() {
    for (n, p) in CONFIGS {
        let (j, s) = random_point(n, p, 99);
        let library = glass_sim::hamiltonian_p_spin(&j, &s).unwrap();
        let oracle = oracle_energy(&j, s.sigma());
        assert!(
            (library - oracle).abs() <= 1e-12 * library.abs().max(1.0),
            "(n, p) = ({n}, {p}): library = {library}, oracle = {oracle}"
        );
    }
}
