/// `2 gamma - 1`, the second-order constant in `sum_{i<=k} d(i)`.
pub const DIRICHLET_CONSTANT: f64 = 2.0 * 0.577_215_664_901_532_9 - 1.0;

/// `sum_{i=1..k} d_t(i)` together with its leading-order estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisorSumResult {
    pub k: u64,
    pub t: u64,
    pub exact_sum: u64,
    /// `k ln(min(t, k))`
    pub asymptotic: f64,
    /// `(exact_sum - asymptotic) / k`
    pub residual_per_k: f64,
}

/// Number of divisors of `i` that are at most `t`, by trial division.
pub fn divisor_count_bounded(i: u64, t: u64) -> u64 {
    assert!(i >= 1 && t >= 1, "divisor_count_bounded needs i, t >= 1");
    let mut count = 0;
    let mut d = 1;
    while d * d <= i {
        if i.is_multiple_of(d) {
            if d <= t {
                count += 1;
            }
            let other = i / d;
            if other != d && other <= t {
                count += 1;
            }
        }
        d += 1;
    }
    count
}

/// `sum_{i=1..k} d_t(i)` via the floor-sum identity
/// `sum_{j=1..min(t,k)} floor(k / j)`.
pub fn divisor_sum_bounded(k: u64, t: u64) -> DivisorSumResult {
    assert!(k >= 1 && t >= 1, "divisor_sum_bounded needs k, t >= 1");
    let m = t.min(k);
    let exact_sum: u64 = (1..=m).map(|j| k / j).sum();
    let asymptotic = k as f64 * (m as f64).ln();
    DivisorSumResult {
        k,
        t,
        exact_sum,
        asymptotic,
        residual_per_k: (exact_sum as f64 - asymptotic) / k as f64,
    }
}
