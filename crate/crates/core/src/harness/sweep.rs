use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_model::{sample_graph_skip, ModelParams};
use crate::harness::config::{Cell, Method, SweepConfig};
use crate::infection::{
    reachable_set, sample_x_sequence, simulate_process, IndexSequence, ReachResult,
};
use crate::seed::{mix64, SeedSpec};

/// Outcome of one trial; one row of the records CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub c: f64,
    pub p: f64,
    pub trial: u64,
    /// 64-bit seed of the stream this trial consumed.
    pub seed: u64,
    pub reach_size: usize,
    pub fraction: f64,
}

/// Stream index of a trial: `mix64((cell_ordinal << 32) | trial)`.
///
/// Both coordinates are below `2^32` and `mix64` is a bijection, so distinct
/// `(cell, trial)` pairs never share a stream.
pub fn stream_index(cell_ordinal: u64, trial: u64) -> u64 {
    debug_assert!(cell_ordinal <= u32::MAX as u64 && trial <= u32::MAX as u64);
    mix64((cell_ordinal << 32) | trial)
}

fn run_trial(cell: &Cell, trial: u64, master_seed: u64, method: Method) -> Result<TrialRecord> {
    let spec = SeedSpec::new(master_seed, stream_index(cell.ordinal, trial));
    let params = &cell.params;
    let p = params.p();
    let result: ReachResult = match method {
        Method::Process => simulate_process(params, spec),
        Method::Graph => reachable_set(&sample_graph_skip(params, spec)),
        // the increment law degenerates at p in {0, 1}
        Method::XSequence if p > 0.0 && p < 1.0 => sample_x_sequence(params, spec, cell.n as u64)?,
        Method::XSequence => simulate_process(params, spec),
    };
    result.validate()?;
    let reach_size = result.reach_size();
    if reach_size == 0 || reach_size > cell.n {
        return Err(Error::InvariantViolation(format!(
            "reach size {reach_size} at n = {}",
            cell.n
        )));
    }
    Ok(TrialRecord {
        n: cell.n,
        c: cell.c,
        p,
        trial,
        seed: spec.derived_seed(),
        reach_size,
        fraction: result.fraction(),
    })
}

/// Run every `(cell, trial)` on the global rayon pool.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<TrialRecord>> {
    let cells = config.cells()?;
    execute(config, &cells)
}

/// Run on a dedicated pool of `workers` threads. Output is identical for any
/// worker count.
pub fn run_sweep_with_workers(config: &SweepConfig, workers: usize) -> Result<Vec<TrialRecord>> {
    let cells = config.cells()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| execute(config, &cells))
}

fn execute(config: &SweepConfig, cells: &[Cell]) -> Result<Vec<TrialRecord>> {
    let jobs: Vec<(usize, u64)> = (0..cells.len())
        .flat_map(|c| (0..config.trials).map(move |t| (c, t)))
        .collect();
    // indexed parallel collect keeps (cell, trial) order
    jobs.par_iter()
        .map(|&(c, t)| run_trial(&cells[c], t, config.master_seed, config.method))
        .collect()
}

/// Reach sizes of `trials` independent runs of one method at fixed
/// parameters. Trial `t` uses stream `stream_base + t`.
pub fn sample_reach_sizes(
    params: &ModelParams,
    method: Method,
    trials: u64,
    master_seed: u64,
    stream_base: u64,
) -> Result<Vec<usize>> {
    if method == Method::XSequence {
        IndexSequence::new(params.p())?;
    }
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let spec = SeedSpec::new(master_seed, stream_base.wrapping_add(t));
            let r = match method {
                Method::Process => simulate_process(params, spec),
                Method::Graph => reachable_set(&sample_graph_skip(params, spec)),
                Method::XSequence => sample_x_sequence(params, spec, params.n() as u64)?,
            };
            Ok(r.reach_size())
        })
        .collect()
}

pub fn write_records_csv<W: io::Write>(records: &[TrialRecord], w: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    if records.is_empty() {
        writer.write_record(["n", "c", "p", "trial", "seed", "reach_size", "fraction"])?;
    }
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_records_csv<R: io::Read>(r: R) -> Result<Vec<TrialRecord>> {
    let mut reader = csv::Reader::from_reader(r);
    let header = reader.headers()?.clone();
    if header.iter().collect::<Vec<_>>()
        != ["n", "c", "p", "trial", "seed", "reach_size", "fraction"]
    {
        return Err(Error::InvalidConfig(format!(
            "unexpected records header {header:?}"
        )));
    }
    Ok(reader
        .deserialize()
        .collect::<std::result::Result<_, _>>()?)
}
