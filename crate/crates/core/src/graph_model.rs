//! The ordered directed random graph: vertices `v_1..v_n`, and for every pair
//! `i < j` the edge `(v_i, v_j)` is present independently with probability `p`.
//!
//! Vertices are 1-based everywhere in the public API. Pairs are linearised
//! row-major, `(1,2), (1,3), .., (1,n), (2,3), ..`, which fixes the map from
//! seed to graph for both samplers.

use std::fmt::Write as _;
use std::io;

use rand::Rng;

use crate::error::{Error, Result};
use crate::seed::{open_unit, SeedSpec};

/// Largest vertex count accepted. Neighbor lists store `u32` targets.
pub const MAX_VERTICES: usize = u32::MAX as usize;

/// Parameters of the random model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n: usize,
    p: f64,
    threshold: Option<(f64, f64)>,
}

impl ModelParams {
    pub fn new(n: usize, p: f64) -> Result<Self> {
        check_n(n)?;
        check_p(p)?;
        Ok(Self {
            n,
            p,
            threshold: None,
        })
    }

    /// Parameterise around the threshold: `p = c ln(n) / n + xi`.
    ///
    /// Out-of-range results are rejected rather than clamped.
    pub fn from_threshold(n: usize, c: f64, xi: f64) -> Result<Self> {
        check_n(n)?;
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParams(format!("c must be positive, got {c}")));
        }
        if !xi.is_finite() {
            return Err(Error::InvalidParams(format!("xi must be finite, got {xi}")));
        }
        let p = threshold_probability(n, c, xi);
        check_p(p).map_err(|_| {
            Error::InvalidParams(format!(
                "c = {c}, xi = {xi} at n = {n} gives p = {p}, outside [0, 1]"
            ))
        })?;
        Ok(Self {
            n,
            p,
            threshold: Some((c, xi)),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `(c, xi)` when the parameters were built with [`ModelParams::from_threshold`].
    pub fn threshold(&self) -> Option<(f64, f64)> {
        self.threshold
    }

    /// Number of candidate pairs, `n(n-1)/2`.
    pub fn pair_count(&self) -> u64 {
        pair_count(self.n)
    }
}

/// `c ln(n) / n + xi`, evaluated exactly as [`ModelParams::from_threshold`] does.
pub fn threshold_probability(n: usize, c: f64, xi: f64) -> f64 {
    let nf = n as f64;
    c * nf.ln() / nf + xi
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::InvalidParams(format!(
            "n = {n} exceeds the supported maximum {MAX_VERTICES}"
        )));
    }
    Ok(())
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

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// A sampled graph in compressed row form. Every edge points from a lower to
/// a higher index and each neighbor list is strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedDigraph {
    n: usize,
    // offsets[i - 1]..offsets[i] indexes the out-neighbors of v_i
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl OrderedDigraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Build from an arbitrary edge list. Edges must satisfy `1 <= i < j <= n`
    /// and appear at most once; order does not matter.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut sorted = edges.to_vec();
        for &(i, j) in &sorted {
            if i == 0 || j > n || i >= j {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) violates 1 <= i < j <= {n}"
                )));
            }
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut builder = RowBuilder::new(n, sorted.len());
        for (i, j) in sorted {
            builder.push(i, j as u32);
        }
        Ok(builder.finish())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Out-neighbors of `v_i` (1-based), ascending.
    pub fn out_neighbors(&self, i: usize) -> &[u32] {
        assert!(
            (1..=self.n).contains(&i),
            "vertex {i} out of range 1..={}",
            self.n
        );
        &self.targets[self.offsets[i - 1]..self.offsets[i]]
    }

    /// All edges in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |i| self.out_neighbors(i).iter().map(move |&j| (i, j as usize)))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (1..=self.n).contains(&i) && self.out_neighbors(i).binary_search(&(j as u32)).is_ok()
    }

    /// Text dump: `n m`, then one `i j` line per edge in lexicographic order.
    pub fn write_dump<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{} {}", self.n, self.edge_count())?;
        for (i, j) in self.edges() {
            writeln!(w, "{i} {j}")?;
        }
        Ok(())
    }

    pub fn to_dump_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.edge_count());
        for (i, j) in self.edges() {
            let _ = writeln!(s, "{i} {j}");
        }
        s
    }
}

/// Appends edges row by row; rows must arrive in nondecreasing source order.
struct RowBuilder {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl RowBuilder {
    fn new(n: usize, capacity: usize) -> Self {
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        Self {
            n,
            offsets,
            targets: Vec::with_capacity(capacity),
        }
    }

    #[inline]
    fn push(&mut self, source: usize, target: u32) {
        // close every row before `source`
        while self.offsets.len() < source {
            self.offsets.push(self.targets.len());
        }
        self.targets.push(target);
    }

    fn finish(mut self) -> OrderedDigraph {
        while self.offsets.len() < self.n + 1 {
            self.offsets.push(self.targets.len());
        }
        OrderedDigraph {
            n: self.n,
            offsets: self.offsets,
            targets: self.targets,
        }
    }
}

/// One Bernoulli(p) coin per pair, in row-major order. `O(n^2)`.
pub fn sample_graph_naive(params: &ModelParams, seed: SeedSpec) -> OrderedDigraph {
    sample_graph_naive_with(params, &mut seed.rng())
}

pub fn sample_graph_naive_with<R: Rng + ?Sized>(
    params: &ModelParams,
    rng: &mut R,
) -> OrderedDigraph {
    let n = params.n();
    let p = params.p();
    let expected = (p * params.pair_count() as f64) as usize;
    let mut builder = RowBuilder::new(n, expected);
    for i in 1..n {
        for j in (i + 1)..=n {
            if rng.random::<f64>() < p {
                builder.push(i, j as u32);
            }
        }
    }
    builder.finish()
}

/// Same law as [`sample_graph_naive`], but jumps between present edges with
/// Geometric(p) gaps over the linearised pair index. `O(n + edges)`.
///
/// For `p` equal to 0 or 1 this delegates to the naive sampler.
pub fn sample_graph_skip(params: &ModelParams, seed: SeedSpec) -> OrderedDigraph {
    sample_graph_skip_with(params, &mut seed.rng())
}

pub fn sample_graph_skip_with<R: Rng + ?Sized>(
    params: &ModelParams,
    rng: &mut R,
) -> OrderedDigraph {
    let p = params.p();
    if p <= 0.0 || p >= 1.0 {
        return sample_graph_naive_with(params, rng);
    }
    let n = params.n();
    let total = params.pair_count();
    let log_miss = (-p).ln_1p();
    let expected = p * total as f64;
    let mut builder = RowBuilder::new(n, (expected + 6.0 * expected.sqrt()) as usize);

    // linear index of the next candidate pair, and the row holding it
    let mut pos: u64 = 0;
    let mut row: usize = 1;
    let mut row_start: u64 = 0;
    let mut row_len: u64 = (n - 1) as u64;
    while pos < total {
        let gap = (open_unit(rng).ln() / log_miss).floor();
        if gap >= (total - pos) as f64 {
            break;
        }
        pos += gap as u64;
        while pos >= row_start + row_len {
            row_start += row_len;
            row_len -= 1;
            row += 1;
        }
        let target = row + 1 + (pos - row_start) as usize;
        builder.push(row, target as u32);
        pos += 1;
    }
    builder.finish()
}
