/// Power-law learning-rate decay eps0 / (1 + t)^eta_exp.
///
/// The canonical exponent is 1/2; eta_exp = 0 recovers a constant rate.
pub fn power_law_lr(eps0: f64, t: u64, eta_exp: f64) -> f64 {
    eps0 / (1.0 + t as f64).powf(eta_exp)
}

#[cfg(test)]
mod tests {
    use super::power_law_lr;

    #[test]
    fn step_zero_returns_the_base_rate() {
        assert_eq!(power_law_lr(0.37, 0, 0.5), 0.37);
        assert_eq!(power_law_lr(0.37, 0, 2.0), 0.37);
    }

    #[test]
    fn square_root_decay_hits_exact_grid_points() {
        assert_eq!(power_law_lr(1.0, 3, 0.5), 0.5);
        assert_eq!(power_law_lr(1.0, 15, 0.5), 0.25);
    }

    #[test]
    fn linear_decay_matches_the_reciprocal() {
        assert_eq!(power_law_lr(1.0, 9, 1.0), 0.1);
    }

    #[test]
    fn decay_is_monotone_in_t() {
        let mut previous = f64::INFINITY;
        for t in 0..50 {
            let rate = power_law_lr(0.2, t, 0.5);
            assert!(rate < previous, "t = {t}");
            previous = rate;
        }
    }
}
