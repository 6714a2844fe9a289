//! Monte Carlo experiments over `(n, c)` grids with `p = c ln(n)/n + xi`.

mod config;
mod exponent;
pub mod stats;
mod summary;
mod sweep;
mod threshold;

pub use config::{Cell, Method, SweepConfig, XiMode};
pub use exponent::{exponent_estimate, ExponentEstimate, ExponentPoint};
pub use summary::{summarize, write_summary_csv, SummaryStats};
pub use sweep::{
    read_records_csv, run_sweep, run_sweep_with_workers, sample_reach_sizes, stream_index,
    write_records_csv, TrialRecord,
};
pub use threshold::{
    find_crossing, threshold_curves, threshold_scan, Crossing, CurvePoint, ThresholdCurve,
};
