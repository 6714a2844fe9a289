//! The set reachable from `v_1`, computed three ways:
//!
//! * [`reachable_set`] scans a materialised graph in index order;
//! * [`simulate_process`] runs the sequential infiltration process, where
//!   `v_i` is caught with probability `1 - (1-p)^k` given `k` earlier infected
//!   vertices, without ever drawing edges;
//! * [`sample_x_sequence`] draws the indices of successive reachable vertices
//!   directly, with independent Geometric(`1 - (1-p)^i`) increments.
//!
//! All three have the same law for the reach size. `|R|` counts `v_1`.

use std::io;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph_model::{ModelParams, OrderedDigraph};
use crate::seed::{open_unit, SeedSpec};

/// Geometric parameters above this are treated as certain success.
pub const CERTAIN_CATCH: f64 = 1.0 - 1e-15;

/// `1 - (1-p)^k`, evaluated as `-expm1(k * ln1p(-p))` so it stays accurate
/// when `p` is tiny.
#[inline]
pub fn catch_probability(k: u64, p: f64) -> f64 {
    catch_from_log_miss(k, (-p).ln_1p())
}

#[inline]
pub(crate) fn catch_from_log_miss(k: u64, log_miss: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    -(k as f64 * log_miss).exp_m1()
}

/// Vertices reachable from `v_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachResult {
    n: usize,
    reachable: Vec<bool>,
    x_sequence: Vec<usize>,
}

impl ReachResult {
    fn from_flags(reachable: Vec<bool>) -> Self {
        let x_sequence = reachable
            .iter()
            .enumerate()
            .filter_map(|(i, &r)| r.then_some(i + 1))
            .collect();
        Self {
            n: reachable.len(),
            reachable,
            x_sequence,
        }
    }

    fn from_sequence(n: usize, x_sequence: Vec<usize>) -> Self {
        let mut reachable = vec![false; n];
        for &x in &x_sequence {
            reachable[x - 1] = true;
        }
        Self {
            n,
            reachable,
            x_sequence,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|R|`, including `v_1`.
    pub fn reach_size(&self) -> usize {
        self.x_sequence.len()
    }

    pub fn fraction(&self) -> f64 {
        self.reach_size() as f64 / self.n as f64
    }

    /// Whether `v_i` (1-based) is reachable.
    pub fn is_reachable(&self, i: usize) -> bool {
        self.reachable[i - 1]
    }

    /// Flags indexed from 0, so `flags()[i - 1]` belongs to `v_i`.
    pub fn flags(&self) -> &[bool] {
        &self.reachable
    }

    /// Ascending indices `X_0 = 1, X_1, ..` of the reachable vertices.
    pub fn x_sequence(&self) -> &[usize] {
        &self.x_sequence
    }

    /// Check the structural invariants; used by the harness on every trial.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvariantViolation(msg));
        if self.reachable.len() != self.n || self.n == 0 {
            return fail(format!(
                "flag vector length {} for n = {}",
                self.reachable.len(),
                self.n
            ));
        }
        if self.x_sequence.first() != Some(&1) || !self.reachable[0] {
            return fail("v_1 is not reachable".into());
        }
        if self.x_sequence.windows(2).any(|w| w[0] >= w[1]) {
            return fail("x_sequence not strictly increasing".into());
        }
        if self.x_sequence.last().is_some_and(|&x| x > self.n) {
            return fail("x_sequence entry exceeds n".into());
        }
        let flagged = self.reachable.iter().filter(|&&r| r).count();
        if flagged != self.x_sequence.len() {
            return fail(format!(
                "{flagged} flags but {} sequence entries",
                self.x_sequence.len()
            ));
        }
        Ok(())
    }

    /// Text dump: `n reach_size`, then the space-separated x_sequence.
    pub fn write_dump<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{} {}", self.n, self.reach_size())?;
        let line: Vec<String> = self.x_sequence.iter().map(|x| x.to_string()).collect();
        writeln!(w, "{}", line.join(" "))
    }
}

/// Single forward pass over `v_1..v_n`. Because every edge points to a higher
/// index, all in-edges of `v_i` have been settled by the time it is visited.
pub fn reachable_set(graph: &OrderedDigraph) -> ReachResult {
    let n = graph.n();
    let mut reachable = vec![false; n];
    reachable[0] = true;
    for i in 1..=n {
        if reachable[i - 1] {
            for &j in graph.out_neighbors(i) {
                reachable[j as usize - 1] = true;
            }
        }
    }
    ReachResult::from_flags(reachable)
}

/// Sequential infiltration process with one uniform draw per vertex.
///
/// Because the draw for `v_i` is consumed whether or not it is caught, two
/// runs with the same seed see the same uniforms, and raising `p` can only
/// enlarge the reachable set.
pub fn simulate_process(params: &ModelParams, seed: SeedSpec) -> ReachResult {
    simulate_process_with(params, &mut seed.rng())
}

pub fn simulate_process_with<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> ReachResult {
    let n = params.n();
    let log_miss = (-params.p()).ln_1p();
    let mut reachable = vec![false; n];
    reachable[0] = true;
    let mut infected: u64 = 1;
    let mut catch = catch_from_log_miss(1, log_miss);
    for flag in reachable.iter_mut().skip(1) {
        let u: f64 = rng.random();
        if u < catch {
            *flag = true;
            infected += 1;
            catch = catch_from_log_miss(infected, log_miss);
        }
    }
    ReachResult::from_flags(reachable)
}

/// Increment sampler for the index sequence `X_0 = 1, X_1, X_2, ..`, where
/// `X_i - X_{i-1} ~ Geometric(1 - (1-p)^i)` on `{1, 2, ..}`.
#[derive(Debug, Clone, Copy)]
pub struct IndexSequence {
    log_miss: f64,
}

impl IndexSequence {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::DegenerateProbability(p));
        }
        Ok(Self {
            log_miss: (-p).ln_1p(),
        })
    }

    /// Draw `X_i - X_{i-1}`.
    #[inline]
    pub fn increment<R: Rng + ?Sized>(&self, i: u64, rng: &mut R) -> u64 {
        let log_stay = i as f64 * self.log_miss;
        if -log_stay.exp_m1() > CERTAIN_CATCH {
            return 1;
        }
        // inversion; the miss probability of the i-th geometric is (1-p)^i
        let extra = (open_unit(rng).ln() / log_stay).floor();
        1u64.saturating_add(extra as u64)
    }

    /// `X_0..X_t`. When `limit` is given, generation stops at the first index
    /// exceeding it and that index is not returned.
    pub fn draw<R: Rng + ?Sized>(&self, t_max: u64, limit: Option<u64>, rng: &mut R) -> Vec<u64> {
        let mut xs = vec![1u64];
        let mut x = 1u64;
        for i in 1..=t_max {
            if let Some(lim) = limit {
                if x >= lim {
                    break;
                }
            }
            x = x.saturating_add(self.increment(i, rng));
            if limit.is_some_and(|lim| x > lim) {
                break;
            }
            xs.push(x);
        }
        xs
    }
}

/// `X_t` in the countable-vertex construction (no truncation at `n`).
pub fn sample_xt<R: Rng + ?Sized>(p: f64, t: u64, rng: &mut R) -> Result<u64> {
    let seq = IndexSequence::new(p)?;
    let mut x = 1u64;
    for i in 1..=t {
        x = x.saturating_add(seq.increment(i, rng));
    }
    Ok(x)
}

/// Draw the reachable index sequence directly, truncated at `n` or after
/// `t_max` increments, whichever comes first. Pass `t_max >= n - 1` for the
/// full reachable set.
pub fn sample_x_sequence(params: &ModelParams, seed: SeedSpec, t_max: u64) -> Result<ReachResult> {
    sample_x_sequence_with(params, &mut seed.rng(), t_max)
}

pub fn sample_x_sequence_with<R: Rng + ?Sized>(
    params: &ModelParams,
    rng: &mut R,
    t_max: u64,
) -> Result<ReachResult> {
    let seq = IndexSequence::new(params.p())?;
    let n = params.n();
    let xs = seq.draw(t_max, Some(n as u64), rng);
    Ok(ReachResult::from_sequence(
        n,
        xs.into_iter().map(|x| x as usize).collect(),
    ))
}
