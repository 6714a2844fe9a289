//! Self-checks behind `reachlab oracle-check`: analytic identities, the DP
//! against brute-force enumeration, and the samplers against each other and
//! against the exact law.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::analytics::{
    divisor_sum_bounded, enumerate_exact, exact_reach_marginals, exact_size_distribution,
    expected_xt_exact, expected_xt_series, reach_prob_upper, reach_prob_upper_exp,
};
use crate::error::Result;
use crate::graph_model::{sample_graph_naive, sample_graph_skip, ModelParams};
use crate::harness::stats::{empirical_cdf, max_cdf_distance, size_frequencies};
use crate::harness::{sample_reach_sizes, Method};
use crate::seed::SeedSpec;

pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0x05EE_D0F0_AC1E;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

/// Sampling tolerances are pinned at `base_trials`; with fewer trials they
/// widen by `sqrt(base_trials / trials)`.
fn scaled_tolerance(base: f64, base_trials: u64, trials: u64) -> f64 {
    base * (base_trials as f64 / trials.max(1) as f64).sqrt().max(1.0)
}

pub fn run_all(trials: u64, seed: u64) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        dp_vs_enumeration()?,
        distribution_sanity()?,
        bound_dominance()?,
        series_identity()?,
        divisor_envelope(),
        process_vs_exact(trials, seed)?,
        graph_samplers_agree(trials, seed)?,
        three_samplers(trials, seed)?,
    ])
}

fn dp_vs_enumeration() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for n in 1..=5 {
        for p in [0.1, 0.3, 0.7] {
            let d = exact_size_distribution(n, p)?.max_abs_diff(&enumerate_exact(n, p)?);
            worst = worst.max(d);
        }
    }
    Ok(CheckOutcome::new(
        "dp-vs-enumeration",
        worst <= 1e-12,
        format!("max entry gap {worst:e} (limit 1e-12)"),
    ))
}

fn distribution_sanity() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for (n, p) in [(2, 0.3), (10, 0.1), (100, 0.05), (500, 0.01)] {
        let d = exact_size_distribution(n, p)?;
        worst = worst
            .max((d.total_mass() - 1.0).abs())
            .max((d.prob(1) - (1.0 - p).powi(n as i32 - 1)).abs());
    }
    Ok(CheckOutcome::new(
        "distribution-sanity",
        worst <= 1e-12,
        format!("max mass or isolation error {worst:e}"),
    ))
}

fn bound_dominance() -> Result<CheckOutcome> {
    let mut violations = 0;
    for p in [0.01, 0.05, 0.2] {
        let marginals = exact_reach_marginals(200, p)?;
        for i in 2..=200u64 {
            let exact = marginals[i as usize - 1];
            let path_bound = reach_prob_upper(i, p);
            if exact > path_bound * (1.0 + 1e-12) || path_bound > reach_prob_upper_exp(i, p) {
                violations += 1;
            }
        }
    }
    Ok(CheckOutcome::new(
        "bound-dominance",
        violations == 0,
        format!("{violations} violations over i <= 200"),
    ))
}

fn series_identity() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for t in [1, 10, 100, 1000] {
        for p in [0.3, 0.05, 0.005] {
            worst = worst.max((expected_xt_series(t, p, 1e-9)? - expected_xt_exact(t, p)?).abs());
        }
    }
    Ok(CheckOutcome::new(
        "xt-series-identity",
        worst <= 1e-8,
        format!("max gap {worst:e} (limit 1e-8)"),
    ))
}

fn divisor_envelope() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for k in [10u64, 1_000, 100_000] {
        let root = (k as f64).sqrt().ceil() as u64;
        for t in [2, root, k, 2 * k] {
            worst = worst.max(divisor_sum_bounded(k, t).residual_per_k.abs());
        }
    }
    CheckOutcome::new(
        "divisor-sum-envelope",
        worst <= 2.0,
        format!("max |residual/k| {worst:.4} (limit 2)"),
    )
}

fn process_vs_exact(trials: u64, seed: u64) -> Result<CheckOutcome> {
    let (n, p) = (5, 0.3);
    let base = 1_000_000;
    let runs = trials.saturating_mul(10);
    let sizes = sample_reach_sizes(&ModelParams::new(n, p)?, Method::Process, runs, seed, 0)?;
    let freq = size_frequencies(&sizes, n);
    let exact = exact_size_distribution(n, p)?;
    let worst = (1..=n)
        .map(|s| (freq[s - 1] - exact.prob(s)).abs())
        .fold(0.0, f64::max);
    let tol = scaled_tolerance(0.005, base, runs);
    Ok(CheckOutcome::new(
        "process-vs-exact-law",
        worst <= tol,
        format!("max deviation {worst:.5} at {runs} trials (limit {tol:.5})"),
    ))
}

fn graph_samplers_agree(trials: u64, seed: u64) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for n in [3usize, 4] {
        for p in [0.2, 0.5, 0.8] {
            let params = ModelParams::new(n, p)?;
            let tally = |skip: bool| -> HashMap<String, f64> {
                let keys: Vec<String> = (0..trials)
                    .into_par_iter()
                    .map(|t| {
                        let spec = SeedSpec::new(seed, (1 << 40) + t);
                        let g = if skip {
                            sample_graph_skip(&params, spec)
                        } else {
                            sample_graph_naive(&params, spec)
                        };
                        g.to_dump_string()
                    })
                    .collect();
                let mut counts = HashMap::new();
                for k in keys {
                    *counts.entry(k).or_insert(0.0) += 1.0 / trials as f64;
                }
                counts
            };
            let naive = tally(false);
            let skip = tally(true);
            for key in naive.keys().chain(skip.keys()) {
                let a = naive.get(key).copied().unwrap_or(0.0);
                let b = skip.get(key).copied().unwrap_or(0.0);
                worst = worst.max((a - b).abs());
            }
        }
    }
    let tol = scaled_tolerance(0.01, 100_000, trials);
    Ok(CheckOutcome::new(
        "graph-samplers-agree",
        worst <= tol,
        format!("max edge-set cell gap {worst:.5} (limit {tol:.5})"),
    ))
}

fn three_samplers(trials: u64, seed: u64) -> Result<CheckOutcome> {
    let tol = scaled_tolerance(0.01, 100_000, trials);
    let mut worst: f64 = 0.0;
    for n in [4usize, 30] {
        for p in [0.1, 0.3] {
            let params = ModelParams::new(n, p)?;
            let cdfs: Vec<Vec<f64>> = [Method::Graph, Method::Process, Method::XSequence]
                .iter()
                .enumerate()
                .map(|(k, &m)| {
                    let base = (2 + k as u64) << 40;
                    sample_reach_sizes(&params, m, trials, seed, base).map(|s| empirical_cdf(&s, n))
                })
                .collect::<Result<_>>()?;
            for a in 0..3 {
                for b in (a + 1)..3 {
                    worst = worst.max(max_cdf_distance(&cdfs[a], &cdfs[b]));
                }
            }
        }
    }
    Ok(CheckOutcome::new(
        "three-sampler-equivalence",
        worst <= tol,
        format!("max pairwise CDF distance {worst:.5} (limit {tol:.5})"),
    ))
}
