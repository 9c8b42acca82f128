//! File formats, report writing and the experiment runner behind the
//! `zalpha` command-line tool.

pub mod config;
pub mod formats;
pub mod report;
pub mod run;

pub use config::{Cli, Command, ConfigError, ExperimentConfig, OutputFormat};
pub use run::{run, run_at, RunError, RunSummary};
