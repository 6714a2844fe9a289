use crate::error::{Error, Result};
use crate::harness::config::SweepConfig;
use crate::harness::summary::{summarize, SummaryStats};
use crate::harness::sweep::run_sweep;

/// Where the fraction-vs-c curve first exceeds the crossing level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossing {
    /// Linear interpolation between the bracketing cells.
    Interpolated {
        c_star: f64,
        lower_c: f64,
        upper_c: f64,
    },
    /// The smallest `c` on the grid already exceeds the level.
    BelowGrid { c: f64 },
    /// No cell exceeds the level.
    NoCrossing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub c: f64,
    pub mean_fraction: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdCurve {
    pub n: usize,
    pub points: Vec<CurvePoint>,
    pub crossing: Crossing,
}

/// `points` must be sorted by ascending `c`.
pub fn find_crossing(points: &[CurvePoint], level: f64) -> Crossing {
    let Some(j) = points.iter().position(|pt| pt.mean_fraction > level) else {
        return Crossing::NoCrossing;
    };
    if j == 0 {
        return Crossing::BelowGrid { c: points[0].c };
    }
    let (lo, hi) = (points[j - 1], points[j]);
    let w = (level - lo.mean_fraction) / (hi.mean_fraction - lo.mean_fraction);
    Crossing::Interpolated {
        c_star: lo.c + w * (hi.c - lo.c),
        lower_c: lo.c,
        upper_c: hi.c,
    }
}

fn check_level(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "crossing level must lie in (0, 1), got {level}"
        )))
    }
}

/// One curve per `n`, from already-summarised cells.
pub fn threshold_curves(summary: &[SummaryStats], level: f64) -> Result<Vec<ThresholdCurve>> {
    check_level(level)?;
    let mut ns: Vec<usize> = summary.iter().map(|s| s.n).collect();
    ns.dedup();
    let mut seen = Vec::new();
    let mut curves = Vec::new();
    for n in ns {
        if seen.contains(&n) {
            continue;
        }
        seen.push(n);
        let mut points: Vec<CurvePoint> = summary
            .iter()
            .filter(|s| s.n == n)
            .map(|s| CurvePoint {
                c: s.c,
                mean_fraction: s.mean_fraction,
                stderr: s.stderr,
            })
            .collect();
        points.sort_by(|a, b| a.c.total_cmp(&b.c));
        let crossing = find_crossing(&points, level);
        curves.push(ThresholdCurve {
            n,
            points,
            crossing,
        });
    }
    Ok(curves)
}

/// Run the sweep and locate the crossing for every `n` in the grid.
pub fn threshold_scan(config: &SweepConfig, level: f64) -> Result<Vec<ThresholdCurve>> {
    check_level(level)?;
    check_ascending(config)?;
    let records = run_sweep(config)?;
    threshold_curves(&summarize(&records)?, level)
}

pub(crate) fn check_ascending(config: &SweepConfig) -> Result<()> {
    if config.c_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig(
            "c_values must be strictly ascending".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<CurvePoint> {
        v.iter()
            .map(|&(c, f)| CurvePoint {
                c,
                mean_fraction: f,
                stderr: 0.0,
            })
            .collect()
    }

    #[test]
    fn interpolates() {
        let curve = pts(&[(0.5, 0.01), (1.0, 0.2), (1.5, 0.4), (2.0, 0.55)]);
        match find_crossing(&curve, 0.25) {
            Crossing::Interpolated {
                c_star,
                lower_c,
                upper_c,
            } => {
                assert!((c_star - 1.125).abs() < 1e-12);
                assert_eq!((lower_c, upper_c), (1.0, 1.5));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(find_crossing(&curve, 0.99), Crossing::NoCrossing);
        assert_eq!(find_crossing(&curve, 0.005), Crossing::BelowGrid { c: 0.5 });
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = SweepConfig::new(vec![100], vec![2.0, 1.0], 2, 1);
        assert!(threshold_scan(&cfg, 0.25).is_err());
        let cfg = SweepConfig::new(vec![100], vec![1.0, 2.0], 2, 1);
        assert!(threshold_scan(&cfg, 1.0).is_err());
        assert!(threshold_scan(&cfg, 0.0).is_err());
    }

    #[test]
    fn small_scan_is_monotone() {
        let cfg = SweepConfig::new(vec![2000], vec![0.5, 1.0, 1.5, 2.0, 3.0], 200, 31);
        let curves = threshold_scan(&cfg, 0.25).unwrap();
        assert_eq!(curves.len(), 1);
        let pts = &curves[0].points;
        for w in pts.windows(2) {
            let slack = 2.0 * (w[0].stderr + w[1].stderr);
            assert!(w[1].mean_fraction + slack >= w[0].mean_fraction);
        }
        assert!(matches!(curves[0].crossing, Crossing::Interpolated { .. }));
        let curves = threshold_scan(&cfg, 0.99).unwrap();
        assert_eq!(curves[0].crossing, Crossing::NoCrossing);
    }
}
