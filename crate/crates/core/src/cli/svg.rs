//! Fraction-vs-c line plot as a standalone SVG document.

use std::fmt::Write as _;

use crate::analytics::theoretical_fraction;
use crate::harness::SummaryStats;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const OVERLAY_SAMPLES: usize = 64;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

struct Axes {
    c_min: f64,
    c_max: f64,
}

impl Axes {
    fn x(&self, c: f64) -> f64 {
        let span = if self.c_max > self.c_min {
            self.c_max - self.c_min
        } else {
            1.0
        };
        MARGIN + (c - self.c_min) / span * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, fraction: f64) -> f64 {
        MARGIN + (1.0 - fraction) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn polyline(out: &mut String, axes: &Axes, pts: &[(f64, f64)], stroke: &str, extra: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&(c, f)| format!("{:.3},{:.3}", axes.x(c), axes.y(f)))
        .collect();
    let _ = writeln!(
        out,
        r#"  <polyline fill="none" stroke="{stroke}" stroke-width="2"{extra} points="{}"/>"#,
        coords.join(" ")
    );
}

/// Mean reachable fraction against `c`, one polyline per `n`, plus the
/// limiting curve `max(0, 1 - 1/c)` dashed. Output depends only on the input.
pub fn emit_svg_curve(summary: &[SummaryStats]) -> String {
    let mut cs: Vec<f64> = summary.iter().map(|s| s.c).collect();
    cs.sort_by(f64::total_cmp);
    cs.dedup();
    let axes = Axes {
        c_min: cs.first().copied().unwrap_or(0.0),
        c_max: cs.last().copied().unwrap_or(1.0),
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let (x0, x1, y0, y1) = (
        axes.x(axes.c_min),
        axes.x(axes.c_max),
        axes.y(0.0),
        axes.y(1.0),
    );
    let _ = writeln!(
        out,
        r#"  <path d="M{x0:.3},{y1:.3} L{x0:.3},{y0:.3} L{x1:.3},{y0:.3}" fill="none" stroke="black"/>"#
    );
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-size="11" text-anchor="end">{tick}</text>"#,
            x0 - 6.0,
            axes.y(tick) + 4.0
        );
    }
    for &c in &cs {
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-size="11" text-anchor="middle">{c}</text>"#,
            axes.x(c),
            y0 + 16.0
        );
    }
    let _ = writeln!(
        out,
        r#"  <text x="{:.3}" y="{:.3}" font-size="13" text-anchor="middle">c</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        r#"  <text x="14" y="{:.3}" font-size="13" transform="rotate(-90 14 {:.3})" text-anchor="middle">mean fraction reachable</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    let mut ns: Vec<usize> = summary.iter().map(|s| s.n).collect();
    ns.sort_unstable();
    ns.dedup();
    for (k, &n) in ns.iter().enumerate() {
        let mut pts: Vec<(f64, f64)> = summary
            .iter()
            .filter(|s| s.n == n)
            .map(|s| (s.c, s.mean_fraction))
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let colour = PALETTE[k % PALETTE.len()];
        let _ = writeln!(out, r#"  <g data-n="{n}">"#);
        polyline(&mut out, &axes, &pts, colour, "");
        for &(c, f) in &pts {
            let _ = writeln!(
                out,
                r#"    <circle cx="{:.3}" cy="{:.3}" r="3" fill="{colour}"/>"#,
                axes.x(c),
                axes.y(f)
            );
        }
        let _ = writeln!(out, "  </g>");
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-size="11" fill="{colour}">n = {n}</text>"#,
            x1 - 70.0,
            y1 + 14.0 * (k as f64 + 1.0)
        );
    }

    // limiting curve on a uniform grid plus every data c
    let mut overlay_c: Vec<f64> = (0..=OVERLAY_SAMPLES)
        .map(|i| axes.c_min + (axes.c_max - axes.c_min) * i as f64 / OVERLAY_SAMPLES as f64)
        .chain(cs.iter().copied())
        .collect();
    overlay_c.sort_by(f64::total_cmp);
    overlay_c.dedup();
    let overlay: Vec<(f64, f64)> = overlay_c
        .iter()
        .map(|&c| (c, theoretical_fraction(c)))
        .collect();
    polyline(
        &mut out,
        &axes,
        &overlay,
        "black",
        r#" stroke-dasharray="6 4" data-series="limit""#,
    );
    let _ = writeln!(out, "</svg>");
    out
}
