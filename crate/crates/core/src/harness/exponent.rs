use crate::error::{Error, Result};
use crate::harness::summary::summarize;
use crate::harness::sweep::TrialRecord;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPoint {
    pub n: usize,
    /// `ln(mean |R|) / ln(n)`
    pub exponent: f64,
    /// `mean(ln |R|) / ln(n)`
    pub mean_log_exponent: f64,
}

/// Growth exponent of `|R|` in the sublinear regime for one `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentEstimate {
    pub c: f64,
    /// Sorted by ascending `n`.
    pub points: Vec<ExponentPoint>,
    /// `|a(n_max) - c|`
    pub deviation_at_max_n: f64,
    /// Whether `|a(n) - c|` is smaller at the largest `n` than the smallest.
    /// `None` with a single `n`.
    pub converging: Option<bool>,
}

/// One estimate per distinct `c`, in order of first appearance. Every record
/// must have `c < 1`.
pub fn exponent_estimate(records: &[TrialRecord]) -> Result<Vec<ExponentEstimate>> {
    if let Some(r) = records.iter().find(|r| r.c >= 1.0) {
        return Err(Error::InvalidParams(format!(
            "exponent estimate needs c < 1, got c = {}",
            r.c
        )));
    }
    let summary = summarize(records)?;
    let mut cs: Vec<f64> = Vec::new();
    for s in &summary {
        if !cs.contains(&s.c) {
            cs.push(s.c);
        }
    }
    let mut out = Vec::with_capacity(cs.len());
    for c in cs {
        let mut points: Vec<ExponentPoint> = summary
            .iter()
            .filter(|s| s.c == c)
            .map(|s| ExponentPoint {
                n: s.n,
                exponent: s.exponent,
                mean_log_exponent: s.mean_log_exponent,
            })
            .collect();
        points.sort_by_key(|pt| pt.n);
        if points.windows(2).any(|w| w[0].n == w[1].n) {
            return Err(Error::InvalidParams(format!(
                "several cells share c = {c} at one n; estimate each xi separately"
            )));
        }
        let first = points[0];
        let last = *points.last().expect("nonempty group");
        let deviation_at_max_n = (last.exponent - c).abs();
        let converging =
            (points.len() > 1).then(|| deviation_at_max_n < (first.exponent - c).abs());
        out.push(ExponentEstimate {
            c,
            points,
            deviation_at_max_n,
            converging,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_sweep, SweepConfig};

    #[test]
    fn rejects_supercritical_cells() {
        let records = run_sweep(&SweepConfig::new(vec![100], vec![0.5, 1.0], 2, 1)).unwrap();
        assert!(exponent_estimate(&records).is_err());
        assert!(exponent_estimate(&[]).is_err());
    }

    #[test]
    fn single_n_has_no_convergence_claim() {
        let records = run_sweep(&SweepConfig::new(vec![5000], vec![0.5], 50, 2)).unwrap();
        let est = exponent_estimate(&records).unwrap();
        assert_eq!(est.len(), 1);
        assert_eq!(est[0].points.len(), 1);
        assert_eq!(est[0].converging, None);
        assert!(est[0].points[0].exponent > 0.35 && est[0].points[0].exponent < 0.65);
    }

    #[test]
    fn several_n() {
        let records = run_sweep(&SweepConfig::new(
            vec![2000, 20_000],
            vec![0.5, 0.25],
            40,
            3,
        ))
        .unwrap();
        let est = exponent_estimate(&records).unwrap();
        assert_eq!(est.iter().map(|e| e.c).collect::<Vec<_>>(), vec![0.5, 0.25]);
        assert!(est
            .iter()
            .all(|e| e.points.len() == 2 && e.converging.is_some()));
    }
}
