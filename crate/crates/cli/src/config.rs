//! Experiment configuration: a recipe's defaults, optionally overridden by a
//! TOML file and then by command-line flags.
//!
//! File schema (every key optional; unknown keys are rejected):
//!
//! ```toml
//! name = "my-sweep"
//! kind = "capacity"          # capacity | selection | search-cost
//! methods = ["optimize", "improved_cpp"]
//! n = [16, 32, 64]           # RIS elements
//! k = [4]                    # configuration-set size
//! m = [20]                   # candidate grid size (selection kinds)
//! r = 1000                   # replicates per sweep point
//! seed = 1
//! v_db = -140.0              # |v_n|, magnitude dB: 10^(x/20)
//! h0_db = [-140.0]           # |h0|, magnitude dB
//! h0_phase = 0.0             # radians
//! beta_min = [0.2]
//! phi = 1.3508848410436112   # radians
//! kappa = [1.6]
//! bandwidth_hz = 1e6
//! snr_db = 100.0             # P/(B·N0), power dB: 10^(x/10)
//! exhaustive_cap = 10000000  # largest K^N searched exhaustively
//! mcsb_budget = 10000000000  # largest C(M,K)·R·N·K for MCSB
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use risopt_core::optimize::DEFAULT_EXHAUSTIVE_CAP;
use risopt_core::select::DEFAULT_MCSB_BUDGET;
use risopt_core::{CouplingParams, LinkParams};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// Magnitude dB to linear: `10^(x/20)`.
pub fn magnitude_from_db(db: f64) -> f64 {
    10f64.powf(db / 20.0)
}

/// Power-ratio dB to linear: `10^(x/10)`.
pub fn power_from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Method {
    Optimize,
    Exhaustive,
    Cpp,
    ImprovedCpp,
    Imb,
    ImbSsc,
    Mcsb,
    EvenlySpaced,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Self::Optimize,
        Self::Exhaustive,
        Self::Cpp,
        Self::ImprovedCpp,
        Self::Imb,
        Self::ImbSsc,
        Self::Mcsb,
        Self::EvenlySpaced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Optimize => "optimize",
            Self::Exhaustive => "exhaustive",
            Self::Cpp => "cpp",
            Self::ImprovedCpp => "improved_cpp",
            Self::Imb => "imb",
            Self::ImbSsc => "imb_ssc",
            Self::Mcsb => "mcsb",
            Self::EvenlySpaced => "evenly_spaced",
        }
    }

    /// Methods that pick per-element reflection coefficients.
    pub fn is_optimizer(self) -> bool {
        matches!(
            self,
            Self::Optimize | Self::Exhaustive | Self::Cpp | Self::ImprovedCpp
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown method `{s}`")))
    }
}

/// What an experiment measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Capacity of per-element optimizers on a fixed evenly spaced set.
    Capacity,
    /// Capacity (optimized per draw) of the set each selection method picks.
    Selection,
    /// Options examined, best integral and wall-clock time of IMB searches.
    SearchCost,
}

/// A fully specified experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub kind: Kind,
    pub methods: Vec<Method>,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub m: Vec<usize>,
    pub replicates: usize,
    pub seed: u64,
    pub v_db: f64,
    pub h0_db: Vec<f64>,
    pub h0_phase: f64,
    pub beta_min: Vec<f64>,
    pub phi: f64,
    pub kappa: Vec<f64>,
    pub bandwidth_hz: f64,
    pub snr_db: f64,
    pub exhaustive_cap: u128,
    pub mcsb_budget: u128,
}

impl Default for ExperimentConfig {
    /// The simulation parameters of the reference setup: K = 4, M = 20,
    /// |v_n| = |h₀| = −140 dB, ∠h₀ = 0, B = 1 MHz, P/(B·N₀) = 100 dB,
    /// β_min = 0.2, φ = 0.43π, κ = 1.6, R = 1000.
    fn default() -> Self {
        let practical = CouplingParams::practical();
        Self {
            name: "custom".into(),
            kind: Kind::Capacity,
            methods: vec![Method::Optimize],
            n: vec![64],
            k: vec![4],
            m: vec![20],
            replicates: 1000,
            seed: 1,
            v_db: -140.0,
            h0_db: vec![-140.0],
            h0_phase: 0.0,
            beta_min: vec![practical.beta_min()],
            phi: practical.phi(),
            kappa: vec![practical.kappa()],
            bandwidth_hz: 1e6,
            snr_db: 100.0,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            mcsb_budget: DEFAULT_MCSB_BUDGET,
        }
    }
}

/// Optional overrides as read from a config file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub name: Option<String>,
    pub kind: Option<Kind>,
    pub methods: Option<Vec<Method>>,
    pub n: Option<Vec<usize>>,
    pub k: Option<Vec<usize>>,
    pub m: Option<Vec<usize>>,
    pub r: Option<usize>,
    pub seed: Option<u64>,
    pub v_db: Option<f64>,
    pub h0_db: Option<Vec<f64>>,
    pub h0_phase: Option<f64>,
    pub beta_min: Option<Vec<f64>>,
    pub phi: Option<f64>,
    pub kappa: Option<Vec<f64>>,
    pub bandwidth_hz: Option<f64>,
    pub snr_db: Option<f64>,
    pub exhaustive_cap: Option<u64>,
    pub mcsb_budget: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.into(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| CliError::ParseConfig {
            path: path.into(),
            source: Box::new(source),
        })
    }

    pub fn apply(self, cfg: &mut ExperimentConfig) {
        macro_rules! set {
            ($($field:ident => $target:ident),* $(,)?) => {
                $(if let Some(v) = self.$field { cfg.$target = v.into(); })*
            };
        }
        set!(
            name => name, kind => kind, methods => methods, n => n, k => k, m => m,
            r => replicates, seed => seed, v_db => v_db, h0_db => h0_db, h0_phase => h0_phase,
            beta_min => beta_min, phi => phi, kappa => kappa, bandwidth_hz => bandwidth_hz,
            snr_db => snr_db, exhaustive_cap => exhaustive_cap, mcsb_budget => mcsb_budget,
        );
    }
}

/// One combination of the swept parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub h0_db: f64,
    pub beta_min: f64,
    pub kappa: f64,
    pub k: usize,
    /// `None` for experiments without a candidate grid.
    pub m: Option<usize>,
    /// `None` for experiments without channel draws.
    pub n: Option<usize>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains([',', '"', '\n']) {
            return Err(invalid(
                "name must be non-empty and contain no commas, quotes or newlines",
            ));
        }
        if self.methods.is_empty() {
            return Err(invalid("method list is empty"));
        }
        let mut seen = self.methods.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.methods.len() {
            return Err(invalid("method list has duplicates"));
        }
        for &method in &self.methods {
            let ok = match self.kind {
                Kind::Capacity => method.is_optimizer(),
                Kind::Selection => !method.is_optimizer(),
                Kind::SearchCost => matches!(method, Method::Imb | Method::ImbSsc),
            };
            if !ok {
                return Err(invalid(format!(
                    "method `{method}` does not apply to a {:?} experiment",
                    self.kind
                )));
            }
        }
        let sweeps: [(&str, bool); 6] = [
            ("n", self.n.is_empty()),
            ("k", self.k.is_empty()),
            ("m", self.m.is_empty()),
            ("h0_db", self.h0_db.is_empty()),
            ("beta_min", self.beta_min.is_empty()),
            ("kappa", self.kappa.is_empty()),
        ];
        if let Some((axis, _)) = sweeps.iter().find(|(_, empty)| *empty) {
            return Err(invalid(format!("sweep `{axis}` is empty")));
        }
        if self.n.contains(&0) || self.k.contains(&0) {
            return Err(invalid("n and k must be at least 1"));
        }
        if self.kind != Kind::Capacity {
            if let Some(&m) = self.m.iter().find(|&&m| m < 2) {
                return Err(invalid(format!("m = {m} is below 2")));
            }
            let (kmax, mmin) = (self.k.iter().max().unwrap(), self.m.iter().min().unwrap());
            if kmax > mmin {
                return Err(invalid(format!("k = {kmax} exceeds m = {mmin}")));
            }
        }
        if self.replicates == 0 {
            return Err(invalid("r must be at least 1"));
        }
        let finite = [
            self.v_db,
            self.h0_phase,
            self.phi,
            self.bandwidth_hz,
            self.snr_db,
        ];
        if !finite.iter().chain(&self.h0_db).all(|x| x.is_finite()) {
            return Err(invalid("dB values, phases and bandwidth must be finite"));
        }
        for &beta_min in &self.beta_min {
            for &kappa in &self.kappa {
                CouplingParams::new(beta_min, self.phi, kappa)?;
            }
        }
        self.link()?;
        Ok(())
    }

    pub fn coupling(&self, point: &SweepPoint) -> Result<CouplingParams> {
        Ok(CouplingParams::new(point.beta_min, self.phi, point.kappa)?)
    }

    pub fn link(&self) -> Result<LinkParams> {
        Ok(LinkParams::new(
            self.bandwidth_hz,
            power_from_db(self.snr_db),
        )?)
    }

    pub fn v_magnitude(&self) -> f64 {
        magnitude_from_db(self.v_db)
    }

    /// Sweep points in output order: `h0_db`, `beta_min`, `kappa`, `k`, `m`,
    /// `n`, outermost first.
    pub fn sweep(&self) -> Vec<SweepPoint> {
        let m: Vec<Option<usize>> = match self.kind {
            Kind::Capacity => vec![None],
            _ => self.m.iter().copied().map(Some).collect(),
        };
        let n: Vec<Option<usize>> = match self.kind {
            Kind::SearchCost => vec![None],
            _ => self.n.iter().copied().map(Some).collect(),
        };
        let mut points = Vec::new();
        for &h0_db in &self.h0_db {
            for &beta_min in &self.beta_min {
                for &kappa in &self.kappa {
                    for &k in &self.k {
                        for &m in &m {
                            for &n in &n {
                                points.push(SweepPoint {
                                    h0_db,
                                    beta_min,
                                    kappa,
                                    k,
                                    m,
                                    n,
                                });
                            }
                        }
                    }
                }
            }
        }
        points
    }

    /// The `experiment` column: the name, plus every swept axis that has no
    /// column of its own.
    pub fn label(&self, point: &SweepPoint) -> String {
        let mut label = self.name.clone();
        let axes = [
            ("h0_db", &self.h0_db, point.h0_db),
            ("beta_min", &self.beta_min, point.beta_min),
            ("kappa", &self.kappa, point.kappa),
        ];
        for (axis, values, value) in axes {
            if values.len() > 1 {
                label.push_str(&format!("/{axis}={value}"));
            }
        }
        label
    }
}
