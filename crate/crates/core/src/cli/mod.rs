//! The `reachlab` command-line frontend.
//!
//! Exit codes: 0 success, 1 failed oracle check or I/O failure, 2 bad flags
//! or config, 3 internal invariant violation.

mod format;
pub mod oracle;
mod svg;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::analytics::{
    exact_size_distribution, expected_reach_upper, expected_xt_approx, expected_xt_exact,
    expected_xt_series, reach_prob_upper, theoretical_fraction, variance_xt_bound,
    variance_xt_exact,
};
use crate::error::{Error, Result};
use crate::graph_model::{sample_graph_naive, sample_graph_skip, ModelParams};
use crate::harness::{
    read_records_csv, run_sweep_with_workers, summarize, threshold_curves, write_records_csv,
    write_summary_csv, Crossing, Method, SweepConfig,
};
use crate::infection::{reachable_set, sample_x_sequence, simulate_process};
use crate::seed::SeedSpec;

pub use format::sig12;
pub use svg::emit_svg_curve;

/// Environment variable consulted when no seed is given.
pub const SEED_ENV: &str = "REACHLAB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "reachlab",
    version,
    about = "Reachability in ordered directed random graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one graph and dump its edges.
    Sample(SampleArgs),
    /// Compute one reachable set.
    Simulate(SimulateArgs),
    /// Print closed-form quantities and bounds.
    Analytic(AnalyticArgs),
    /// Print the exact law of the reach size as CSV.
    Dist(DistArgs),
    /// Run a Monte Carlo sweep from a JSON config.
    Sweep(SweepArgs),
    /// Locate where the mean fraction first exceeds a level.
    Threshold(ThresholdArgs),
    /// Summarise a records CSV written by `sweep`.
    Summarize(SummarizeArgs),
    /// Run the analytic and sampler self-checks.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub n: usize,
    /// Edge probability.
    #[arg(long, conflicts_with = "c", required_unless_present = "c")]
    pub p: Option<f64>,
    /// Threshold coefficient; p = c ln(n)/n + xi.
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, requires = "c", allow_hyphen_values = true)]
    pub xi: Option<f64>,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        match (self.p, self.c) {
            (Some(p), None) => ModelParams::new(self.n, p),
            (None, Some(c)) => ModelParams::from_threshold(self.n, c, self.xi.unwrap_or(0.0)),
            _ => Err(Error::InvalidParams(
                "give exactly one of --p and --c".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, env = SEED_ENV)]
    pub seed: u64,
    /// Geometric-skip sampler (default).
    #[arg(long, conflicts_with = "naive")]
    pub skip: bool,
    /// One coin per pair.
    #[arg(long)]
    pub naive: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, env = SEED_ENV)]
    pub seed: u64,
    #[arg(long, default_value = "process")]
    pub method: Method,
    /// Print `n reach_size` and the reachable index sequence.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    /// Index-sequence length for the X_t quantities.
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, conflicts_with = "c")]
    pub p: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Records CSV destination.
    #[arg(long)]
    pub out: PathBuf,
    /// Summary CSV destination.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Fraction-vs-c plot destination.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub level: f64,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SummarizeArgs {
    #[arg(long)]
    pub records: PathBuf,
    /// Summary CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Trials per sampler in the equivalence checks.
    #[arg(long, default_value_t = oracle::DEFAULT_TRIALS)]
    pub trials: u64,
    #[arg(long, default_value_t = oracle::DEFAULT_SEED)]
    pub seed: u64,
}

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvariantViolation(_) => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

/// Parse the process arguments and run.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out).and_then(|code| out.flush().map(|_| code).map_err(Error::from)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

pub fn run<W: Write>(cli: Cli, out: &mut W) -> Result<ExitCode> {
    match cli.command {
        Command::Sample(args) => sample(args, out)?,
        Command::Simulate(args) => simulate(args, out)?,
        Command::Analytic(args) => analytic(args, out)?,
        Command::Dist(args) => dist(args, out)?,
        Command::Sweep(args) => sweep(args)?,
        Command::Threshold(args) => threshold(args, out)?,
        Command::Summarize(args) => summarize_file(args, out)?,
        Command::OracleCheck(args) => return oracle_check(args, out),
    }
    Ok(ExitCode::SUCCESS)
}

fn sample<W: Write>(args: SampleArgs, out: &mut W) -> Result<()> {
    let params = args.model.params()?;
    let spec = SeedSpec::new(args.seed, 0);
    let graph = if args.naive {
        sample_graph_naive(&params, spec)
    } else {
        sample_graph_skip(&params, spec)
    };
    graph.write_dump(out)?;
    Ok(())
}

fn simulate<W: Write>(args: SimulateArgs, out: &mut W) -> Result<()> {
    let params = args.model.params()?;
    let spec = SeedSpec::new(args.seed, 0);
    let result = match args.method {
        Method::Process => simulate_process(&params, spec),
        Method::Graph => reachable_set(&sample_graph_skip(&params, spec)),
        Method::XSequence => sample_x_sequence(&params, spec, params.n() as u64)?,
    };
    result.validate()?;
    if args.dump {
        result.write_dump(out)?;
    } else {
        writeln!(out, "quantity, value")?;
        writeln!(out, "n, {}", params.n())?;
        writeln!(out, "p, {}", sig12(params.p()))?;
        writeln!(out, "method, {}", args.method)?;
        writeln!(out, "reach_size, {}", result.reach_size())?;
        writeln!(out, "fraction, {}", sig12(result.fraction()))?;
    }
    Ok(())
}

fn analytic<W: Write>(args: AnalyticArgs, out: &mut W) -> Result<()> {
    let p = match (args.p, args.c, args.n) {
        (Some(p), _, _) => Some(p),
        (None, Some(c), Some(n)) => Some(ModelParams::from_threshold(n as usize, c, 0.0)?.p()),
        _ => None,
    };
    if let Some(p) = p {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParams(format!(
                "p must lie in [0, 1], got {p}"
            )));
        }
    }
    let mut rows: Vec<(String, f64)> = Vec::new();
    if let Some(p) = p {
        rows.push(("p".into(), p));
    }
    if let (Some(t), Some(p)) = (args.t, p) {
        rows.push(("E[X_t] exact".into(), expected_xt_exact(t, p)?));
        rows.push(("E[X_t] series".into(), expected_xt_series(t, p, 1e-10)?));
        if t >= 1 {
            rows.push(("t + ln(t)/p".into(), expected_xt_approx(t, p)));
            rows.push(("Var(X_t) exact".into(), variance_xt_exact(t, p)?));
            rows.push(("sqrt((t/p) E[X_t])".into(), variance_xt_bound(t, p)?));
        }
    }
    if let (Some(n), Some(p)) = (args.n, p) {
        rows.push(("E[X] upper bound".into(), expected_reach_upper(n, p)));
        if n >= 2 {
            rows.push(("P(R_n) upper bound".into(), reach_prob_upper(n, p)));
        }
        let dist = exact_size_distribution(n as usize, p)?;
        rows.push(("E[|R|] exact".into(), dist.mean()));
        rows.push(("E[|R|]/n exact".into(), dist.mean() / n as f64));
    }
    if let Some(c) = args.c {
        if !(c > 0.0) {
            return Err(Error::InvalidParams(format!("c must be positive, got {c}")));
        }
        rows.push(("limit fraction 1-1/c".into(), theoretical_fraction(c)));
    }
    if rows.len() <= usize::from(p.is_some()) {
        return Err(Error::InvalidParams(
            "nothing to compute: give --t with --p, or --n with --p/--c, or --c".into(),
        ));
    }
    writeln!(out, "quantity, value")?;
    for (label, value) in rows {
        writeln!(out, "{label}, {}", sig12(value))?;
    }
    Ok(())
}

fn dist<W: Write>(args: DistArgs, out: &mut W) -> Result<()> {
    let params = args.model.params()?;
    let dist = exact_size_distribution(params.n(), params.p())?;
    writeln!(out, "size,prob")?;
    for (s, q) in dist.probs().iter().enumerate() {
        writeln!(out, "{},{}", s + 1, sig12(*q))?;
    }
    Ok(())
}

fn load_config(path: &PathBuf) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    SweepConfig::from_json(&text, env_seed()?)
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => {
            v.trim().parse().map(Some).map_err(|_| {
                Error::InvalidConfig(format!("{SEED_ENV}={v:?} is not a 64-bit integer"))
            })
        }
        Err(_) => Ok(None),
    }
}

fn workers(requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn sweep(args: SweepArgs) -> Result<()> {
    let config = load_config(&args.config)?;
    let records = run_sweep_with_workers(&config, workers(args.workers))?;
    write_records_csv(&records, create(&args.out)?)?;
    if args.summary.is_some() || args.svg.is_some() {
        let summary = summarize(&records)?;
        if let Some(path) = &args.summary {
            write_summary_csv(&summary, create(path)?)?;
        }
        if let Some(path) = &args.svg {
            std::fs::write(path, emit_svg_curve(&summary))?;
        }
    }
    Ok(())
}

fn threshold<W: Write>(args: ThresholdArgs, out: &mut W) -> Result<()> {
    let config = load_config(&args.config)?;
    if config.c_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig(
            "c_values must be strictly ascending".into(),
        ));
    }
    if !(args.level > 0.0 && args.level < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "--level must lie in (0, 1), got {}",
            args.level
        )));
    }
    let records = run_sweep_with_workers(&config, workers(args.workers))?;
    let summary = summarize(&records)?;
    let curves = threshold_curves(&summary, args.level)?;
    writeln!(out, "n,c,mean_fraction,stderr")?;
    for curve in &curves {
        for pt in &curve.points {
            writeln!(
                out,
                "{},{},{},{}",
                curve.n, pt.c, pt.mean_fraction, pt.stderr
            )?;
        }
    }
    for curve in &curves {
        match curve.crossing {
            Crossing::Interpolated {
                c_star,
                lower_c,
                upper_c,
            } => writeln!(
                out,
                "crossing n={} level={}: c* = {} (between c = {lower_c} and c = {upper_c})",
                curve.n,
                args.level,
                sig12(c_star)
            )?,
            Crossing::BelowGrid { c } => writeln!(
                out,
                "crossing n={} level={}: below grid (already above at c = {c})",
                curve.n, args.level
            )?,
            Crossing::NoCrossing => writeln!(
                out,
                "crossing n={} level={}: no crossing",
                curve.n, args.level
            )?,
        }
    }
    if let Some(path) = &args.svg {
        std::fs::write(path, emit_svg_curve(&summary))?;
    }
    Ok(())
}

fn summarize_file<W: Write>(args: SummarizeArgs, out: &mut W) -> Result<()> {
    let records = read_records_csv(File::open(&args.records)?)?;
    let summary = summarize(&records)?;
    match &args.out {
        Some(path) => write_summary_csv(&summary, create(path)?)?,
        None => write_summary_csv(&summary, &mut *out)?,
    }
    if let Some(path) = &args.svg {
        std::fs::write(path, emit_svg_curve(&summary))?;
    }
    Ok(())
}

fn oracle_check<W: Write>(args: OracleArgs, out: &mut W) -> Result<ExitCode> {
    let outcomes = oracle::run_all(args.trials, args.seed)?;
    let mut all = true;
    for o in &outcomes {
        all &= o.passed;
        writeln!(
            out,
            "{} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        )?;
    }
    Ok(if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
