use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_model::ModelParams;

/// Which reachability route a sweep uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// The sequential infiltration process, `O(n)` per trial.
    #[default]
    Process,
    /// Skip-sampled graph plus forward scan, `O(n + edges)`.
    Graph,
    /// Direct geometric-increment draw of the reachable index sequence.
    XSequence,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Process => "process",
            Method::Graph => "graph",
            Method::XSequence => "xsequence",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "process" => Ok(Method::Process),
            "graph" => Ok(Method::Graph),
            "xsequence" => Ok(Method::XSequence),
            other => Err(Error::InvalidConfig(format!(
                "unknown method {other:?} (expected process, graph or xsequence)"
            ))),
        }
    }
}

/// Perturbation `xi` added to `c ln(n)/n`.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum XiMode {
    #[default]
    Zero,
    /// One value per entry of `c_values`.
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub c_values: Vec<f64>,
    pub xi: XiMode,
    pub trials: u64,
    pub master_seed: u64,
    pub method: Method,
}

/// A resolved grid cell. Ordinals enumerate `n_values` outer, `c_values` inner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub ordinal: u64,
    pub n: usize,
    pub c: f64,
    pub xi: f64,
    pub params: ModelParams,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n_values: Vec<usize>,
    c_values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi_values: Option<Vec<f64>>,
    trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    master_seed: Option<u64>,
    #[serde(default)]
    method: Method,
}

impl SweepConfig {
    pub fn new(n_values: Vec<usize>, c_values: Vec<f64>, trials: u64, master_seed: u64) -> Self {
        Self {
            n_values,
            c_values,
            xi: XiMode::Zero,
            trials,
            master_seed,
            method: Method::Process,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_xi(mut self, xi: Vec<f64>) -> Self {
        self.xi = XiMode::Explicit(xi);
        self
    }

    /// Parse the JSON config format. `master_seed` may be omitted when a
    /// fallback is supplied.
    pub fn from_json(text: &str, fallback_seed: Option<u64>) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let master_seed = file.master_seed.or(fallback_seed).ok_or_else(|| {
            Error::InvalidConfig("master_seed missing and no fallback seed set".into())
        })?;
        let config = Self {
            n_values: file.n_values,
            c_values: file.c_values,
            xi: file.xi_values.map_or(XiMode::Zero, XiMode::Explicit),
            trials: file.trials,
            master_seed,
            method: file.method,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        let file = ConfigFile {
            n_values: self.n_values.clone(),
            c_values: self.c_values.clone(),
            xi_values: match &self.xi {
                XiMode::Zero => None,
                XiMode::Explicit(v) => Some(v.clone()),
            },
            trials: self.trials,
            master_seed: Some(self.master_seed),
            method: self.method,
        };
        serde_json::to_string_pretty(&file).expect("config serialises")
    }

    fn xi_at(&self, c_index: usize) -> f64 {
        match &self.xi {
            XiMode::Zero => 0.0,
            XiMode::Explicit(v) => v[c_index],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_values.is_empty() || self.c_values.is_empty() {
            return bad("n_values and c_values must be nonempty".into());
        }
        if self.trials == 0 || self.trials > u32::MAX as u64 {
            return bad(format!(
                "trials must lie in 1..={}, got {}",
                u32::MAX,
                self.trials
            ));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n < 2) {
            return bad(format!("every n must be at least 2, got {n}"));
        }
        if let Some(&c) = self.c_values.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return bad(format!("every c must be positive, got {c}"));
        }
        if let XiMode::Explicit(xi) = &self.xi {
            if xi.len() != self.c_values.len() {
                return bad(format!(
                    "xi_values has {} entries but c_values has {}",
                    xi.len(),
                    self.c_values.len()
                ));
            }
        }
        if (self.n_values.len() as u64) * (self.c_values.len() as u64) > u32::MAX as u64 {
            return bad("grid too large".into());
        }
        for &n in &self.n_values {
            for (j, &c) in self.c_values.iter().enumerate() {
                ModelParams::from_threshold(n, c, self.xi_at(j))
                    .map_err(|e| Error::InvalidConfig(e.to_string()))?;
            }
        }
        Ok(())
    }

    pub fn cells(&self) -> Result<Vec<Cell>> {
        self.validate()?;
        let mut cells = Vec::with_capacity(self.n_values.len() * self.c_values.len());
        for &n in &self.n_values {
            for (j, &c) in self.c_values.iter().enumerate() {
                let xi = self.xi_at(j);
                cells.push(Cell {
                    ordinal: cells.len() as u64,
                    n,
                    c,
                    xi,
                    params: ModelParams::from_threshold(n, c, xi)?,
                });
            }
        }
        Ok(cells)
    }
}
