//! Exact finite-n law of `|R|`.
//!
//! Edge coins into each new vertex are fresh, so the infected count after
//! visiting `v_1..v_i` is a Markov chain: from `k` it moves to `k + 1` with
//! probability `1 - (1-p)^k` and stays otherwise. [`exact_size_distribution`]
//! runs that chain forward in `O(n^2)`. [`enumerate_exact`] is the brute-force
//! check: every labelled edge set, weighted by its probability.

use crate::error::{Error, Result};
use crate::graph_model::OrderedDigraph;
use crate::infection::reachable_set;

/// Largest `n` accepted by [`enumerate_exact`] (`2^15` edge sets).
pub const MAX_ENUMERATION_N: usize = 6;

/// `P(|R| = s)` for `s = 1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl SizeDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `P(|R| = s)`; zero outside `1..=n`.
    pub fn prob(&self, s: usize) -> f64 {
        if (1..=self.n).contains(&s) {
            self.probs[s - 1]
        } else {
            0.0
        }
    }

    /// Probabilities for sizes `1..=n`, in order.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, &q)| (i + 1) as f64 * q)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(i, &q)| ((i + 1) as f64 - mean).powi(2) * q)
            .sum()
    }

    /// `P(|R| <= s)` for `s = 1..=n`.
    pub fn cdf(&self) -> Vec<f64> {
        self.probs
            .iter()
            .scan(0.0, |acc, &q| {
                *acc += q;
                Some(*acc)
            })
            .collect()
    }

    /// Largest per-entry absolute difference.
    pub fn max_abs_diff(&self, other: &SizeDistribution) -> f64 {
        let n = self.n.max(other.n);
        (1..=n)
            .map(|s| (self.prob(s) - other.prob(s)).abs())
            .fold(0.0, f64::max)
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "p must lie in [0, 1], got {p}"
        )))
    }
}

/// Catch and miss probabilities for `k = 0..=n`.
fn transition_table(n: usize, p: f64) -> (Vec<f64>, Vec<f64>) {
    let log_miss = (-p).ln_1p();
    let miss: Vec<f64> = (0..=n).map(|k| (k as f64 * log_miss).exp()).collect();
    let catch: Vec<f64> = (0..=n)
        .map(|k| {
            if k == 0 {
                0.0
            } else {
                -(k as f64 * log_miss).exp_m1()
            }
        })
        .collect();
    (catch, miss)
}

/// Runs the chain, calling `visit(i, state)` with the law of the infected
/// count just before `v_i` is decided (`state[k]` = P(k infected)).
fn run_chain(n: usize, p: f64, mut visit: impl FnMut(usize, &[f64], &[f64])) -> Vec<f64> {
    let (catch, miss) = transition_table(n, p);
    // state[k] = P(k vertices infected among those visited); index 0 stays 0
    let mut state = vec![0.0; n + 1];
    state[1] = 1.0;
    for i in 2..=n {
        visit(i, &state[..i], &catch);
        for k in (1..i).rev() {
            let stay = state[k] * miss[k];
            state[k + 1] += state[k] * catch[k];
            state[k] = stay;
        }
    }
    state.remove(0);
    state
}

/// Exact law of `|R|` via the infected-count Markov chain. `O(n^2)`.
pub fn exact_size_distribution(n: usize, p: f64) -> Result<SizeDistribution> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    check_p(p)?;
    let probs = run_chain(n, p, |_, _, _| {});
    Ok(SizeDistribution { n, probs })
}

/// `P(v_i reachable)` for `i = 1..=n` from the same chain.
pub fn exact_reach_marginals(n: usize, p: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    check_p(p)?;
    let mut marginals = vec![0.0; n];
    marginals[0] = 1.0;
    run_chain(n, p, |i, state, catch| {
        marginals[i - 1] = state.iter().zip(catch).map(|(s, c)| s * c).sum();
    });
    Ok(marginals)
}

/// Brute force over all `2^(n(n-1)/2)` labelled edge sets.
pub fn enumerate_exact(n: usize, p: f64) -> Result<SizeDistribution> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    check_p(p)?;
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
        .collect();
    let total = pairs.len() as i32;
    let mut probs = vec![0.0; n];
    let mut edges = Vec::with_capacity(pairs.len());
    for mask in 0u32..(1u32 << pairs.len()) {
        edges.clear();
        edges.extend(
            pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e),
        );
        let m = edges.len() as i32;
        let weight = p.powi(m) * (1.0 - p).powi(total - m);
        let graph = OrderedDigraph::from_edges(n, &edges)?;
        probs[reachable_set(&graph).reach_size() - 1] += weight;
    }
    Ok(SizeDistribution { n, probs })
}
