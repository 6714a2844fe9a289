//! Distributional agreement between the graph samplers, the forward process,
//! the index-sequence sampler and the exact law.

use std::collections::HashMap;

use proptest::prelude::*;
use reachlab::analytics::exact_size_distribution;
use reachlab::graph_model::{sample_graph_naive, sample_graph_skip, ModelParams};
use reachlab::harness::stats::{empirical_cdf, max_cdf_distance, size_frequencies};
use reachlab::harness::{sample_reach_sizes, Method};
use reachlab::infection::{reachable_set, sample_x_sequence, simulate_process};
use reachlab::SeedSpec;

const SEED: u64 = 0xA11CE;

fn edge_set_frequencies(
    params: &ModelParams,
    skip: bool,
    trials: u64,
    base: u64,
) -> HashMap<String, f64> {
    let mut counts = HashMap::new();
    for t in 0..trials {
        let spec = SeedSpec::new(SEED, base + t);
        let g = if skip {
            sample_graph_skip(params, spec)
        } else {
            sample_graph_naive(params, spec)
        };
        *counts.entry(g.to_dump_string()).or_insert(0.0) += 1.0 / trials as f64;
    }
    counts
}

#[test]
fn every_sampled_edge_points_forward() {
    for (n, p) in [(1, 0.5), (2, 1.0), (40, 0.3), (500, 0.01)] {
        let params = ModelParams::new(n, p).unwrap();
        for t in 0..5 {
            for g in [
                sample_graph_naive(&params, SeedSpec::new(SEED, t)),
                sample_graph_skip(&params, SeedSpec::new(SEED, t)),
            ] {
                assert!(g.edges().all(|(i, j)| 1 <= i && i < j && j <= n));
            }
        }
    }
}

#[test]
fn naive_and_skip_agree_on_edge_sets() {
    for n in 2..=4 {
        for p in [0.2, 0.5, 0.8] {
            let params = ModelParams::new(n, p).unwrap();
            let a = edge_set_frequencies(&params, false, 100_000, 0);
            let b = edge_set_frequencies(&params, true, 100_000, 1 << 32);
            let worst = a
                .keys()
                .chain(b.keys())
                .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
                .fold(0.0, f64::max);
            assert!(worst <= 0.01, "n={n} p={p}: {worst}");
        }
    }
}

#[test]
fn skip_sampler_hits_all_eight_subsets_at_their_weights() {
    let p = 0.9;
    let params = ModelParams::new(3, p).unwrap();
    let freq = edge_set_frequencies(&params, true, 200_000, 7 << 32);
    assert_eq!(freq.len(), 8);
    for (dump, f) in &freq {
        let m = dump
            .lines()
            .next()
            .unwrap()
            .split(' ')
            .nth(1)
            .unwrap()
            .parse::<i32>()
            .unwrap();
        let want = p.powi(m) * (1.0f64 - p).powi(3 - m);
        assert!((f - want).abs() <= 0.005, "{dump:?}: {f} vs {want}");
    }
}

#[test]
fn skip_edge_count_mean() {
    let (n, p, trials) = (50, 0.1, 20_000);
    let params = ModelParams::new(n, p).unwrap();
    let counts: Vec<f64> = (0..trials)
        .map(|t| sample_graph_skip(&params, SeedSpec::new(SEED, t)).edge_count() as f64)
        .collect();
    let pairs = (n * (n - 1) / 2) as f64;
    let mean = counts.iter().sum::<f64>() / trials as f64;
    let se = (pairs * p * (1.0 - p) / trials as f64).sqrt();
    assert!(
        (mean - pairs * p).abs() <= 4.0 * se,
        "{mean} vs {}",
        pairs * p
    );
}

#[test]
fn three_methods_agree() {
    for n in [4usize, 30] {
        for p in [0.1, 0.3] {
            let params = ModelParams::new(n, p).unwrap();
            let cdfs: Vec<Vec<f64>> = [Method::Graph, Method::Process, Method::XSequence]
                .iter()
                .enumerate()
                .map(|(k, &m)| {
                    empirical_cdf(
                        &sample_reach_sizes(&params, m, 100_000, SEED, (k as u64) << 40).unwrap(),
                        n,
                    )
                })
                .collect();
            for a in 0..3 {
                for b in (a + 1)..3 {
                    let d = max_cdf_distance(&cdfs[a], &cdfs[b]);
                    assert!(d <= 0.01, "n={n} p={p} methods {a},{b}: {d}");
                }
            }
        }
    }
}

#[test]
fn samplers_match_exact_law_on_small_n() {
    for n in [2usize, 3, 5] {
        for p in [0.1, 0.5] {
            let params = ModelParams::new(n, p).unwrap();
            let exact = exact_size_distribution(n, p).unwrap();
            for (k, method) in [Method::Process, Method::Graph, Method::XSequence]
                .into_iter()
                .enumerate()
            {
                let freq = size_frequencies(
                    &sample_reach_sizes(&params, method, 1_000_000, SEED, (k as u64 + 5) << 40)
                        .unwrap(),
                    n,
                );
                let worst = (1..=n)
                    .map(|s| (freq[s - 1] - exact.prob(s)).abs())
                    .fold(0.0, f64::max);
                assert!(worst <= 0.005, "n={n} p={p} {method}: {worst}");
            }
        }
    }
}

#[test]
fn graph_reach_is_a_valid_result() {
    let params = ModelParams::new(300, 0.02).unwrap();
    for t in 0..20 {
        let r = reachable_set(&sample_graph_skip(&params, SeedSpec::new(SEED, t)));
        r.validate().unwrap();
        assert!(r.is_reachable(1));
        assert_eq!(r.x_sequence()[0], 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn process_is_monotone_in_p(n in 1usize..400, p1 in 0.0f64..1.0, p2 in 0.0f64..1.0, stream in any::<u64>()) {
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let spec = SeedSpec::new(SEED, stream);
        let small = simulate_process(&ModelParams::new(n, lo).unwrap(), spec);
        let large = simulate_process(&ModelParams::new(n, hi).unwrap(), spec);
        for i in 1..=n {
            prop_assert!(!small.is_reachable(i) || large.is_reachable(i));
        }
    }

    #[test]
    fn x_sequence_is_a_valid_reachable_set(n in 1usize..2000, p in 0.0001f64..0.9999, stream in any::<u64>()) {
        let params = ModelParams::new(n, p).unwrap();
        let r = sample_x_sequence(&params, SeedSpec::new(SEED, stream), n as u64).unwrap();
        r.validate().unwrap();
        let xs = r.x_sequence();
        prop_assert_eq!(xs[0], 1);
        prop_assert!(xs.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(*xs.last().unwrap() <= n);
        prop_assert_eq!(xs.len(), r.reach_size());
        prop_assert_eq!(r.flags().iter().filter(|&&f| f).count(), r.reach_size());
    }

    #[test]
    fn truncated_x_sequence_is_a_prefix(n in 2usize..500, p in 0.01f64..0.99, t in 0u64..20, stream in any::<u64>()) {
        let params = ModelParams::new(n, p).unwrap();
        let spec = SeedSpec::new(SEED, stream);
        let full = sample_x_sequence(&params, spec, n as u64).unwrap();
        let part = sample_x_sequence(&params, spec, t).unwrap();
        let k = part.x_sequence().len();
        prop_assert!(k as u64 <= t + 1);
        prop_assert_eq!(part.x_sequence(), &full.x_sequence()[..k]);
    }
}
