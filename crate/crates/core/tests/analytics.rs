//! Analytic formulas checked against the exact DP and Monte Carlo.

use reachlab::analytics::{
    divisor_count_bounded, divisor_sum_bounded, exact_reach_marginals, exact_size_distribution,
    expected_reach_upper, expected_xt_approx, expected_xt_exact, expected_xt_series,
    reach_prob_upper, reach_prob_upper_exp, variance_xt_bound, variance_xt_exact,
    variance_xt_summed_form,
};
use reachlab::harness::stats::{mean, sample_variance};
use reachlab::infection::sample_xt;
use reachlab::SeedSpec;

fn xt_samples(t: u64, p: f64, trials: u64, master: u64) -> Vec<f64> {
    (0..trials)
        .map(|i| sample_xt(p, t, &mut SeedSpec::new(master, i).rng()).unwrap() as f64)
        .collect()
}

#[test]
fn path_bound_dominates_exact_marginals() {
    for p in [0.01, 0.05, 0.2] {
        let m = exact_reach_marginals(200, p).unwrap();
        for i in 2..=200u64 {
            let exact = m[i as usize - 1];
            assert!(
                exact <= reach_prob_upper(i, p) * (1.0 + 1e-12),
                "i={i} p={p}"
            );
            assert!(reach_prob_upper(i, p) <= reach_prob_upper_exp(i, p));
        }
    }
}

#[test]
fn expectation_bound_dominates_exact_mean() {
    for p in [0.01, 0.1] {
        for n in 2..=300 {
            let exact = exact_size_distribution(n, p).unwrap().mean() - 1.0;
            assert!(exact <= expected_reach_upper(n as u64, p), "n={n} p={p}");
        }
    }
    let exact = exact_size_distribution(100, 0.01).unwrap().mean() - 1.0;
    assert!(expected_reach_upper(100, 0.01) - exact >= 0.0);
    assert!(expected_reach_upper(3, 0.5) >= 1.125);
}

#[test]
fn index_mean_monte_carlo() {
    let (t, p, trials) = (100, 0.05, 100_000);
    let xs = xt_samples(t, p, trials, 41);
    let se = (sample_variance(&xs) / trials as f64).sqrt();
    assert!((mean(&xs) - expected_xt_exact(t, p).unwrap()).abs() <= 4.0 * se);
}

#[test]
fn index_variance_monte_carlo() {
    for (t, p) in [(50, 0.05), (10, 0.3), (200, 0.02)] {
        let xs = xt_samples(t, p, 100_000, 42);
        let ratio = sample_variance(&xs) / variance_xt_exact(t, p).unwrap();
        assert!((0.9..=1.1).contains(&ratio), "t={t} p={p}: {ratio}");
    }
}

#[test]
fn cauchy_schwarz_bounds_the_summed_form() {
    for t in [1u64, 10, 100, 1000] {
        for p in [0.3, 0.05, 0.005] {
            assert!(variance_xt_summed_form(t, p).unwrap() <= variance_xt_bound(t, p).unwrap());
        }
    }
}

#[test]
fn series_and_closed_form_agree() {
    for (t, p, tol, within) in [
        (1, 0.5, 1e-12, 1e-10),
        (5, 0.3, 1e-12, 1e-10),
        (100, 0.05, 1e-9, 1e-8),
    ] {
        let gap = (expected_xt_series(t, p, tol).unwrap() - expected_xt_exact(t, p).unwrap()).abs();
        assert!(gap <= within, "t={t} p={p}: {gap}");
    }
}

#[test]
fn approximation_examples() {
    let gap = (expected_xt_exact(1000, 0.01).unwrap() - 1.0 - expected_xt_approx(1000, 0.01)).abs();
    assert!(gap * 0.01 <= 2.0);
    assert!((expected_xt_approx(100, 0.05) - 192.103_403_719_761_8).abs() < 1e-9);
    // the approximation overshoots the exact mean by less than 1/p on the whole grid
    for t in [1u64, 10, 100, 1000] {
        for p in [0.3, 0.05, 0.005] {
            assert!(expected_xt_exact(t, p).unwrap() - 1.0 - expected_xt_approx(t, p) <= 1.0 / p);
        }
    }
}

#[test]
fn divisor_sum_residual_envelope() {
    for k in [10u64, 1_000, 100_000] {
        let root = (k as f64).sqrt().ceil() as u64;
        for t in [2, root, k, 2 * k] {
            assert!(divisor_sum_bounded(k, t).residual_per_k.abs() <= 2.0);
        }
    }
    let direct: u64 = (1..=1000).map(|i| divisor_count_bounded(i, 37)).sum();
    assert_eq!(divisor_sum_bounded(1000, 37).exact_sum, direct);
}
