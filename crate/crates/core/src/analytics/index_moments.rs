//! Moments of `X_t`, the index of the `t`-th reachable vertex after `v_1`.
//!
//! `X_0 = 1` and the increments are independent Geometric(`q_k`) with
//! `q_k = 1 - (1-p)^k`, so `E[X_t] = 1 + sum_k 1/q_k` here (the leading 1 is
//! `X_0`) and `Var(X_t) = sum_k (1-q_k)/q_k^2`.

use crate::analytics::divisors::divisor_count_bounded;
use crate::error::{Error, Result};
use crate::infection::catch_from_log_miss;

fn check_open(p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok((-p).ln_1p())
    } else {
        Err(Error::DegenerateProbability(p))
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `1 + sum_{k=1..t} 1 / (1 - (1-p)^k)`.
pub fn expected_xt_exact(t: u64, p: f64) -> Result<f64> {
    let log_miss = check_open(p)?;
    let mut acc = Compensated::default();
    acc.add(1.0);
    for k in 1..=t {
        acc.add(1.0 / catch_from_log_miss(k, log_miss));
    }
    Ok(acc.value())
}

/// Leading-order form `t + ln(t) / p`. Does not include `X_0`.
pub fn expected_xt_approx(t: u64, p: f64) -> f64 {
    assert!(t >= 1, "expected_xt_approx needs t >= 1");
    t as f64 + (t as f64).ln() / p
}

/// `1 + t + sum_i d_t(i) (1-p)^i`, the divisor-weighted series form of
/// [`expected_xt_exact`]. Terms are added until the remaining tail, bounded by
/// `t (1-p)^(I+1) / p` since `d_t(i) <= t`, drops below `tail_tol`.
pub fn expected_xt_series(t: u64, p: f64, tail_tol: f64) -> Result<f64> {
    let log_miss = check_open(p)?;
    if !(tail_tol > 0.0) {
        return Err(Error::InvalidParams(format!(
            "tail_tol must be positive, got {tail_tol}"
        )));
    }
    let mut acc = Compensated::default();
    acc.add(1.0 + t as f64);
    if t == 0 {
        return Ok(acc.value());
    }
    let mut i: u64 = 1;
    loop {
        let weight = (i as f64 * log_miss).exp();
        acc.add(divisor_count_bounded(i, t) as f64 * weight);
        let tail = t as f64 * weight * (1.0 - p) / p;
        if tail < tail_tol {
            break;
        }
        i += 1;
    }
    Ok(acc.value())
}

/// `sum_{k=1..t} (1-p)^k / (1 - (1-p)^k)^2`, the exact variance of `X_t`.
pub fn variance_xt_exact(t: u64, p: f64) -> Result<f64> {
    let log_miss = check_open(p)?;
    let mut acc = Compensated::default();
    for k in 1..=t {
        let q = catch_from_log_miss(k, log_miss);
        acc.add((k as f64 * log_miss).exp() / (q * q));
    }
    Ok(acc.value())
}

/// `sum_{k=1..t} p / (1 - (1-p)^k)^2`. This is the summand the Cauchy-Schwarz
/// bound [`variance_xt_bound`] is derived from; it is not the variance of
/// `X_t`, which [`variance_xt_exact`] gives.
pub fn variance_xt_summed_form(t: u64, p: f64) -> Result<f64> {
    let log_miss = check_open(p)?;
    let mut acc = Compensated::default();
    for k in 1..=t {
        let q = catch_from_log_miss(k, log_miss);
        acc.add(p / (q * q));
    }
    Ok(acc.value())
}

/// `sqrt((t/p) E[X_t])` with `E[X_t]` from [`expected_xt_exact`].
pub fn variance_xt_bound(t: u64, p: f64) -> Result<f64> {
    Ok((t as f64 / p * expected_xt_exact(t, p)?).sqrt())
}
