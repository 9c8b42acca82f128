//! Command-line flags and the validated experiment configuration.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use zalpha_core::{Alpha, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Quasi-triangle constant of the Z_alpha quasi-norm.
    Qtriangle,
    /// Quasi-linearity constant of the centralizer.
    Qlinear,
    /// Diagonal multiplier constant.
    Multiplier,
    /// Norms of the odd/even splitting and its inverse.
    Unorm,
    /// Derive a direct-sum isomorphism witness from an axiom file.
    Pelczynski,
    /// Verify factorization certificates (a file, or random closure rounds).
    Certify,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Qtriangle => "qtriangle",
            Command::Qlinear => "qlinear",
            Command::Multiplier => "multiplier",
            Command::Unorm => "unorm",
            Command::Pelczynski => "pelczynski",
            Command::Certify => "certify",
        }
    }

    fn is_estimator(self) -> bool {
        matches!(
            self,
            Command::Qtriangle | Command::Qlinear | Command::Multiplier | Command::Unorm
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Seeded estimators and witness derivation for finite sections of Z_alpha.
#[derive(Debug, Parser)]
#[command(name = "zalpha", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Twist parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Comma-separated section lengths.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated subset of gaussian, flat, spike, geometric-decay.
    #[arg(long, value_delimiter = ',')]
    pub families: Option<Vec<String>>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Report path; the witness sidecar is written next to it.
    #[arg(long)]
    pub out: PathBuf,
    /// Expansion budget (pelczynski only).
    #[arg(long)]
    pub budget: Option<usize>,
    /// Axiom file (pelczynski only); defaults to the built-in decomposition instance.
    #[arg(long)]
    pub axioms: Option<PathBuf>,
    /// Certificate to verify (certify only).
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Error, PartialEq)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn reject(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

pub const DEFAULT_ALPHA: f64 = 1.0;
pub const DEFAULT_DIMS: [usize; 1] = [16];
pub const DEFAULT_TRIALS: u64 = 1000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_BUDGET: usize = 10_000;

/// A fully validated run description.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub alpha: Alpha,
    pub dims: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub families: Vec<Family>,
    pub format: OutputFormat,
    pub out: PathBuf,
    pub budget: usize,
    pub axioms: Option<PathBuf>,
    pub input: Option<PathBuf>,
}

impl Cli {
    pub fn into_config(self) -> Result<ExperimentConfig, ConfigError> {
        let command = self.command;
        let name = command.as_str();
        if self.budget.is_some() && command != Command::Pelczynski {
            return Err(reject(format!(
                "--budget applies only to pelczynski, not {name}"
            )));
        }
        if self.axioms.is_some() && command != Command::Pelczynski {
            return Err(reject(format!(
                "--axioms applies only to pelczynski, not {name}"
            )));
        }
        if self.input.is_some() && command != Command::Certify {
            return Err(reject(format!(
                "--input applies only to certify, not {name}"
            )));
        }
        if self.families.is_some() && !command.is_estimator() {
            return Err(reject(format!("--families does not apply to {name}")));
        }
        if command == Command::Pelczynski {
            let numeric = [
                ("--alpha", self.alpha.is_some()),
                ("--dims", self.dims.is_some()),
                ("--trials", self.trials.is_some()),
                ("--seed", self.seed.is_some()),
            ];
            if let Some((flag, _)) = numeric.iter().find(|(_, set)| *set) {
                return Err(reject(format!("{flag} does not apply to pelczynski")));
            }
            if self.format == Some(OutputFormat::Csv) {
                return Err(reject(
                    "pelczynski writes a JSON witness; --format csv is invalid",
                ));
            }
        }
        if command == Command::Certify && self.input.is_some() {
            if let Some((flag, _)) = [
                ("--alpha", self.alpha.is_some()),
                ("--dims", self.dims.is_some()),
                ("--trials", self.trials.is_some()),
                ("--seed", self.seed.is_some()),
            ]
            .iter()
            .find(|(_, set)| *set)
            {
                return Err(reject(format!("{flag} does not apply to certify --input")));
            }
        }

        let alpha = Alpha::new(self.alpha.unwrap_or(DEFAULT_ALPHA))
            .map_err(|_| reject("--alpha must be finite"))?;
        let dims = self.dims.unwrap_or_else(|| DEFAULT_DIMS.to_vec());
        if dims.is_empty() {
            return Err(reject("--dims must list at least one dimension"));
        }
        if dims.contains(&0) {
            return Err(reject("--dims entries must be positive"));
        }
        if command == Command::Unorm {
            if let Some(d) = dims.iter().find(|d| *d % 2 != 0) {
                return Err(reject(format!("unorm needs even dimensions, got {d}")));
            }
        }
        let trials = self.trials.unwrap_or(DEFAULT_TRIALS);
        if trials == 0 {
            return Err(reject("--trials must be at least 1"));
        }
        let families = match self.families {
            None => Family::ALL.to_vec(),
            Some(names) => {
                let mut families = Vec::new();
                for n in &names {
                    let f: Family = n.parse().map_err(|e| reject(format!("{e}")))?;
                    if !families.contains(&f) {
                        families.push(f);
                    }
                }
                if families.is_empty() {
                    return Err(reject("--families must name at least one family"));
                }
                families.sort();
                families
            }
        };
        let budget = self.budget.unwrap_or(DEFAULT_BUDGET);
        if budget == 0 {
            return Err(reject("--budget must be at least 1"));
        }
        let format = self.format.unwrap_or(match command {
            Command::Pelczynski => OutputFormat::Json,
            _ => OutputFormat::Csv,
        });
        Ok(ExperimentConfig {
            command,
            alpha,
            dims,
            trials,
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            families,
            format,
            out: self.out,
            budget,
            axioms: self.axioms,
            input: self.input,
        })
    }
}
