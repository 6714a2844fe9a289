/// Expected number of `v_1 -> v_i` paths, `p (1+p)^(i-2)`, which bounds the
/// probability that `v_i` is reachable.
pub fn reach_prob_upper(i: u64, p: f64) -> f64 {
    assert!(i >= 2, "reach_prob_upper needs i >= 2, got {i}");
    p * ((i - 2) as f64 * p.ln_1p()).exp()
}

/// The weaker form `p e^(p i)`.
pub fn reach_prob_upper_exp(i: u64, p: f64) -> f64 {
    p * (p * i as f64).exp()
}

/// `p (e^(p(n+1)) - 1) / (e^p - 1)`, an upper bound on the expected number of
/// reachable vertices other than `v_1`. Returns 0 at `p = 0`.
pub fn expected_reach_upper(n: u64, p: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    p * (p * (n + 1) as f64).exp_m1() / p.exp_m1()
}

/// Limiting reachable fraction `max(0, 1 - 1/c)`.
pub fn theoretical_fraction(c: f64) -> f64 {
    (1.0 - 1.0 / c).max(0.0)
}
