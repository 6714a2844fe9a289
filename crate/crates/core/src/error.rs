use std::io;

/// Errors produced by the samplers, oracles and the experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("edge probability {0} is degenerate for this operation (need 0 < p < 1)")]
    DegenerateProbability(f64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("n = {n} exceeds the enumeration limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid sweep config: {0}")]
    InvalidConfig(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
