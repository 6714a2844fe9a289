//! Reachability from `v_1` in the ordered directed random graph, where each
//! edge `(v_i, v_j)` with `i < j` is present independently with probability
//! `p`.
//!
//! * [`graph_model`]: model parameters and two graph samplers.
//! * [`infection`]: three routes to the reachable set.
//! * [`analytics`]: closed forms, bounds, and exact distribution oracles.
//! * [`harness`]: seeded Monte Carlo sweeps over `(n, c)` grids.
//! * [`cli`]: the `reachlab` command-line frontend.
//!
//! Reach sizes always count `v_1` itself.

pub mod analytics;
pub mod cli;
pub mod error;
pub mod graph_model;
pub mod harness;
pub mod infection;
pub mod seed;

pub use error::{Error, Result};
pub use graph_model::{ModelParams, OrderedDigraph};
pub use infection::ReachResult;
pub use seed::SeedSpec;
