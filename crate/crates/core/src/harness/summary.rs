use std::collections::HashMap;
use std::io;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::stats::{mean, quantile, standard_error};
use crate::harness::sweep::TrialRecord;

/// Aggregate of all trials in one `(n, c)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub n: usize,
    pub c: f64,
    pub p: f64,
    pub trials: usize,
    pub mean_fraction: f64,
    pub stderr: f64,
    pub q05: f64,
    pub q50: f64,
    pub q95: f64,
    /// `ln(mean |R|) / ln(n)`
    pub exponent: f64,
    /// `mean(ln |R|) / ln(n)`
    pub mean_log_exponent: f64,
}

#[derive(Serialize)]
struct SummaryRow {
    n: usize,
    c: f64,
    mean_fraction: f64,
    stderr: f64,
    q05: f64,
    q50: f64,
    q95: f64,
    exponent: f64,
}

/// Group records by cell, in order of first appearance. Cells are keyed on
/// `(n, c, p)` so grids that repeat `c` with different `xi` stay separate.
pub fn summarize(records: &[TrialRecord]) -> Result<Vec<SummaryStats>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no trial records to summarize"));
    }
    let mut order: Vec<Vec<&TrialRecord>> = Vec::new();
    let mut index: HashMap<(usize, u64, u64), usize> = HashMap::new();
    for r in records {
        let key = (r.n, r.c.to_bits(), r.p.to_bits());
        let slot = *index.entry(key).or_insert_with(|| {
            order.push(Vec::new());
            order.len() - 1
        });
        order[slot].push(r);
    }
    Ok(order
        .into_iter()
        .map(|group| summarize_cell(&group))
        .collect())
}

fn summarize_cell(group: &[&TrialRecord]) -> SummaryStats {
    let first = group[0];
    let mut fractions: Vec<f64> = group.iter().map(|r| r.fraction).collect();
    let sizes: Vec<f64> = group.iter().map(|r| r.reach_size as f64).collect();
    let log_n = (first.n as f64).ln();
    let mean_fraction = mean(&fractions);
    let stderr = standard_error(&fractions);
    fractions.sort_by(f64::total_cmp);
    SummaryStats {
        n: first.n,
        c: first.c,
        p: first.p,
        trials: group.len(),
        mean_fraction,
        stderr,
        q05: quantile(&fractions, 0.05),
        q50: quantile(&fractions, 0.50),
        q95: quantile(&fractions, 0.95),
        exponent: mean(&sizes).ln() / log_n,
        mean_log_exponent: sizes.iter().map(|s| s.ln()).sum::<f64>() / sizes.len() as f64 / log_n,
    }
}

/// Summary CSV: `n,c,mean_fraction,stderr,q05,q50,q95,exponent`.
pub fn write_summary_csv<W: io::Write>(summary: &[SummaryStats], w: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    for s in summary {
        writer.serialize(SummaryRow {
            n: s.n,
            c: s.c,
            mean_fraction: s.mean_fraction,
            stderr: s.stderr,
            q05: s.q05,
            q50: s.q50,
            q95: s.q95,
            exponent: s.exponent,
        })?;
    }
    writer.flush()?;
    Ok(())
}
