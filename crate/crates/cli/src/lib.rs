//! Experiment runner for `risopt-core`: configuration files, named figure
//! recipes, seeded Monte Carlo sweeps and CSV output.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod recipes;

pub use config::{ConfigFile, ExperimentConfig, Kind, Method};
pub use error::{CliError, Result};
pub use experiment::{run_experiment, Metric, Replicate, ResultRow, Value};
