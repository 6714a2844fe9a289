//! Sweep, summary, threshold and exponent behaviour at moderate scale.

use std::collections::HashSet;

use reachlab::analytics::exact_size_distribution;
use reachlab::graph_model::threshold_probability;
use reachlab::harness::{
    exponent_estimate, read_records_csv, run_sweep, run_sweep_with_workers, stream_index,
    summarize, threshold_curves, threshold_scan, write_records_csv, Crossing, Method, SweepConfig,
};

#[test]
fn supercritical_cell_matches_exact_mean() {
    let cfg = SweepConfig::new(vec![1000], vec![2.0], 200, 11);
    let s = summarize(&run_sweep(&cfg).unwrap()).unwrap().remove(0);
    assert!(
        (0.4..=0.7).contains(&s.mean_fraction),
        "{}",
        s.mean_fraction
    );
    assert!(s.stderr < 0.02);
    let exact = exact_size_distribution(1000, threshold_probability(1000, 2.0, 0.0)).unwrap();
    let exact_frac = exact.mean() / 1000.0;
    assert!(
        (s.mean_fraction - exact_frac).abs() <= 4.0 * s.stderr,
        "{} vs {exact_frac}",
        s.mean_fraction
    );
    assert!(s.q05 <= s.q50 && s.q50 <= s.q95);
}

#[test]
fn threshold_scan_at_large_n() {
    let cfg = SweepConfig::new(vec![100_000], vec![0.5, 1.0, 1.5, 2.0], 60, 12);
    let curve = threshold_scan(&cfg, 0.25).unwrap().remove(0);
    match curve.crossing {
        Crossing::Interpolated {
            c_star,
            lower_c,
            upper_c,
        } => {
            assert!(c_star > 1.0 && c_star < 1.75, "{c_star}");
            assert_eq!((lower_c, upper_c), (1.0, 1.5));
        }
        other => panic!("unexpected {other:?}"),
    }
    for w in curve.points.windows(2) {
        let slack = 2.0 * (w[0].stderr + w[1].stderr);
        assert!(w[1].mean_fraction + slack >= w[0].mean_fraction);
    }
    assert_eq!(
        threshold_scan(&cfg, 0.99).unwrap()[0].crossing,
        Crossing::NoCrossing
    );
}

#[test]
fn dp_crossing_at_moderate_n() {
    // the same grid evaluated exactly at n = 2000
    let n = 2000;
    let fr: Vec<f64> = [1.0, 1.5]
        .iter()
        .map(|&c| {
            exact_size_distribution(n, threshold_probability(n, c, 0.0))
                .unwrap()
                .mean()
                / n as f64
        })
        .collect();
    assert!(fr[0] < 0.25 && fr[1] > 0.25);
    let c_star = 1.0 + 0.5 * (0.25 - fr[0]) / (fr[1] - fr[0]);
    assert!(c_star > 1.0 && c_star < 1.75);
}

#[test]
fn fraction_at_two_exceeds_half_and_falls_with_n() {
    let cfg = SweepConfig::new(vec![1000, 10_000, 100_000], vec![2.0], 150, 13);
    let summary = summarize(&run_sweep(&cfg).unwrap()).unwrap();
    for s in &summary {
        assert!(s.mean_fraction > 0.5);
    }
    for w in summary.windows(2) {
        assert!(
            w[1].mean_fraction < w[0].mean_fraction,
            "{} -> {}",
            w[0].mean_fraction,
            w[1].mean_fraction
        );
    }
}

#[test]
fn subcritical_exponent_and_xi_ordering() {
    let ns = vec![10_000, 100_000];
    let base =
        exponent_estimate(&run_sweep(&SweepConfig::new(ns.clone(), vec![0.5], 100, 14)).unwrap())
            .unwrap();
    assert_eq!(base.len(), 1);
    let base = &base[0];
    assert!(base
        .points
        .iter()
        .all(|pt| (0.35..=0.65).contains(&pt.exponent)));
    assert!(base.converging.is_some());

    for (k, &n) in ns.iter().enumerate() {
        let nf = n as f64;
        let xi = nf.ln() / (nf * nf.ln().ln());
        let at = |x: f64| {
            let cfg = SweepConfig::new(vec![n], vec![0.5], 100, 14).with_xi(vec![x]);
            exponent_estimate(&run_sweep(&cfg).unwrap()).unwrap()[0].points[0].exponent
        };
        let (minus, plus) = (at(-xi), at(xi));
        assert!(minus < base.points[k].exponent && base.points[k].exponent < plus);
    }
}

#[test]
fn single_n_makes_no_convergence_claim() {
    let est =
        exponent_estimate(&run_sweep(&SweepConfig::new(vec![500], vec![0.3], 20, 15)).unwrap())
            .unwrap();
    assert_eq!(est[0].points.len(), 1);
    assert_eq!(est[0].converging, None);
    let bad = run_sweep(&SweepConfig::new(vec![500], vec![1.5], 5, 15)).unwrap();
    assert!(exponent_estimate(&bad).is_err());
}

#[test]
fn stream_indices_never_collide() {
    let cfg = SweepConfig::new(vec![10, 100, 1000], vec![0.5, 1.0, 2.0, 4.0], 500, 16);
    let cells = cfg.cells().unwrap();
    let mut seen = HashSet::new();
    for cell in &cells {
        for t in 0..cfg.trials {
            assert!(seen.insert(stream_index(cell.ordinal, t)));
        }
    }
    let records = run_sweep(&cfg).unwrap();
    let seeds: HashSet<u64> = records.iter().map(|r| r.seed).collect();
    assert_eq!(seeds.len(), records.len());
}

#[test]
fn csv_round_trip_preserves_summary() {
    for method in [Method::Process, Method::Graph, Method::XSequence] {
        let cfg = SweepConfig::new(vec![50, 400], vec![0.5, 2.0], 25, 17).with_method(method);
        let records = run_sweep_with_workers(&cfg, 2).unwrap();
        let mut buf = Vec::new();
        write_records_csv(&records, &mut buf).unwrap();
        let back = read_records_csv(buf.as_slice()).unwrap();
        assert_eq!(back, records);
        assert_eq!(summarize(&back).unwrap(), summarize(&records).unwrap());
        let curves = threshold_curves(&summarize(&back).unwrap(), 0.25).unwrap();
        assert_eq!(curves.len(), 2);
    }
}
