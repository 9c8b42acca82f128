//! Executes an [`ExperimentConfig`] and writes its report files.

use std::path::{Path, PathBuf};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use zalpha_core::cartesian::{multiplier_constant_estimate, u_norm_estimate};
use zalpha_core::centralizer::quasilinearity_estimate;
use zalpha_core::ideal::{
    compose_certificate, conjugate_certificate, random_certificate, random_operator,
    sum_certificate, FactorizationCertificate, VERIFY_TOLERANCE,
};
use zalpha_core::pelczynski::{check_witness, derive};
use zalpha_core::zspace::quasi_triangle_estimate;
use zalpha_core::{ConstantReport, EstimatorConfig};

use crate::config::{Command, ExperimentConfig, OutputFormat};
use crate::formats::{
    certificate_from_json, witness_to_json, write_atomic, AxiomFile, FormatError,
};
use crate::report::{
    rows_to_csv, rows_to_json, sidecar_key, sidecar_to_json, sort_rows, ReportRow, Sidecar,
    SidecarEntry,
};

/// Residual bound for certificates after a closure round.
pub const CLOSURE_TOLERANCE: f64 = 1e-8;

pub const CLOSURE_RESIDUAL: &str = "closure_residual";
pub const CERTIFICATE_RESIDUAL: &str = "certificate_residual";

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Config(String),
    #[error("derivation failed: {0}")]
    Derivation(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Derivation(_) | RunError::Verification(_) => 3,
            RunError::Format(_) => 1,
        }
    }
}

/// What a successful run wrote.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub report: PathBuf,
    pub sidecar: Option<PathBuf>,
    pub rows: Vec<ReportRow>,
}

/// Runs with the current UTC time as the report timestamp.
pub fn run(config: &ExperimentConfig) -> Result<RunSummary, RunError> {
    let now = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    run_at(config, &now)
}

/// Runs with a fixed timestamp; identical inputs give identical bytes.
pub fn run_at(config: &ExperimentConfig, timestamp: &str) -> Result<RunSummary, RunError> {
    match config.command {
        Command::Pelczynski => run_pelczynski(config),
        Command::Certify => run_certify(config, timestamp),
        _ => run_estimators(config, timestamp),
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".witnesses.json");
    out.with_file_name(name)
}

fn estimator_config(config: &ExperimentConfig, dim: usize) -> Result<EstimatorConfig, RunError> {
    EstimatorConfig::new(dim, config.alpha, config.trials, config.seed)
        .and_then(|c| c.with_families(config.families.clone()))
        .map_err(|e| RunError::Config(e.to_string()))
}

fn estimate(config: &ExperimentConfig, dim: usize) -> Result<Vec<ConstantReport>, RunError> {
    let est = estimator_config(config, dim)?;
    let reports = match config.command {
        Command::Qtriangle => vec![quasi_triangle_estimate(&est)],
        Command::Qlinear => vec![quasilinearity_estimate(&est)],
        Command::Multiplier => vec![multiplier_constant_estimate(&est)],
        Command::Unorm => match u_norm_estimate(&est) {
            Ok(u) => vec![Ok(u.forward), Ok(u.inverse)],
            Err(e) => vec![Err(e)],
        },
        Command::Pelczynski | Command::Certify => unreachable!("not an estimator"),
    };
    reports
        .into_iter()
        .map(|r| r.map_err(|e| RunError::Config(e.to_string())))
        .collect()
}

struct Output {
    rows: Vec<ReportRow>,
    sidecar: Sidecar,
}

impl Output {
    fn new() -> Self {
        Self {
            rows: Vec::new(),
            sidecar: Sidecar::new(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        config: &ExperimentConfig,
        sidecar_name: &str,
        timestamp: &str,
        constant_name: &str,
        alpha: f64,
        dim: usize,
        trials: u64,
        estimate: f64,
        entry: SidecarEntry,
    ) {
        let key = sidecar_key(constant_name, dim);
        let family_set = match config.command {
            Command::Certify | Command::Pelczynski => String::new(),
            _ => config
                .families
                .iter()
                .map(|f| f.as_str())
                .collect::<Vec<_>>()
                .join(";"),
        };
        self.rows.push(ReportRow {
            command: config.command.as_str().to_string(),
            alpha,
            dim,
            trials,
            seed: config.seed,
            family_set,
            constant_name: constant_name.to_string(),
            estimate,
            witness_ref: format!("{sidecar_name}#{key}"),
            timestamp: timestamp.to_string(),
        });
        self.sidecar.insert(key, entry);
    }

    fn write(mut self, config: &ExperimentConfig) -> Result<RunSummary, RunError> {
        sort_rows(&mut self.rows);
        let body = match config.format {
            OutputFormat::Csv => rows_to_csv(&self.rows)?,
            OutputFormat::Json => rows_to_json(&self.rows),
        };
        let sidecar = sidecar_path(&config.out);
        write_atomic(&sidecar, sidecar_to_json(&self.sidecar).as_bytes())?;
        write_atomic(&config.out, body.as_bytes())?;
        Ok(RunSummary {
            report: config.out.clone(),
            sidecar: Some(sidecar),
            rows: self.rows,
        })
    }
}

fn sidecar_name(config: &ExperimentConfig) -> String {
    sidecar_path(&config.out)
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn run_estimators(config: &ExperimentConfig, timestamp: &str) -> Result<RunSummary, RunError> {
    let name = sidecar_name(config);
    let mut out = Output::new();
    for &dim in &config.dims {
        for report in estimate(config, dim)? {
            out.push(
                config,
                &name,
                timestamp,
                &report.constant_name.clone(),
                report.alpha.value(),
                dim,
                report.trials,
                report.estimate,
                SidecarEntry::Constant { report },
            );
        }
    }
    out.write(config)
}

/// One closure round: `conj(R ∘ (c₁ + c₂) ∘ S)` for random factors on `C^dim`.
pub fn closure_round(
    config: &ExperimentConfig,
    dim: usize,
    trial: u64,
) -> FactorizationCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(((dim as u64) << 32) ^ trial);
    let c1 = random_certificate(dim, dim, dim, config.alpha, rng.next_u64());
    let c2 = random_certificate(dim, dim, dim.div_ceil(2), config.alpha, rng.next_u64());
    let r = random_operator(&mut rng, dim, dim);
    let s = random_operator(&mut rng, dim, dim);
    let summed = sum_certificate(&c1, &c2).expect("shapes agree");
    conjugate_certificate(&compose_certificate(&r, &summed, &s).expect("shapes agree"))
}

fn run_certify(config: &ExperimentConfig, timestamp: &str) -> Result<RunSummary, RunError> {
    let name = sidecar_name(config);
    let mut out = Output::new();
    let (threshold, failures) = if let Some(input) = &config.input {
        let text = std::fs::read_to_string(input).map_err(FormatError::from)?;
        let certificate = certificate_from_json(&text)
            .map_err(|e| RunError::Config(format!("{}: {e}", input.display())))?;
        let residual = certificate.residual().expect("shapes checked on load");
        let failed = residual > VERIFY_TOLERANCE;
        out.push(
            config,
            &name,
            timestamp,
            CERTIFICATE_RESIDUAL,
            certificate.alpha.value(),
            certificate.zdim,
            1,
            residual,
            SidecarEntry::Certificate {
                certificate,
                residual,
            },
        );
        (VERIFY_TOLERANCE, usize::from(failed))
    } else {
        let mut failures = 0;
        for &dim in &config.dims {
            let mut worst: Option<(f64, FactorizationCertificate)> = None;
            for trial in 0..config.trials {
                let c = closure_round(config, dim, trial);
                let residual = c.residual().expect("shapes agree");
                if residual > CLOSURE_TOLERANCE {
                    failures += 1;
                }
                if worst.as_ref().is_none_or(|(r, _)| residual > *r) {
                    worst = Some((residual, c));
                }
            }
            let (residual, certificate) = worst.expect("trials >= 1");
            out.push(
                config,
                &name,
                timestamp,
                CLOSURE_RESIDUAL,
                config.alpha.value(),
                dim,
                config.trials,
                residual,
                SidecarEntry::Certificate {
                    certificate,
                    residual,
                },
            );
        }
        (CLOSURE_TOLERANCE, failures)
    };
    let summary = out.write(config)?;
    if failures > 0 {
        return Err(RunError::Verification(format!(
            "{failures} certificate(s) exceed residual {threshold:e}; see {}",
            summary.report.display()
        )));
    }
    Ok(summary)
}

fn run_pelczynski(config: &ExperimentConfig) -> Result<RunSummary, RunError> {
    let file = match &config.axioms {
        None => AxiomFile::decomposition(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(FormatError::from)?;
            AxiomFile::from_json(&text)
                .map_err(|e| RunError::Config(format!("{}: {e}", path.display())))?
        }
    };
    let (source, target) = &file.goal;
    let witness = derive(&file.axioms, (source, target), config.budget)
        .map_err(|f| RunError::Derivation(f.to_string()))?;
    let proved = check_witness(&witness, &file.axioms)
        .map_err(|e| RunError::Derivation(format!("derived witness fails to check: {e}")))?;
    if proved != file.goal {
        return Err(RunError::Derivation(
            "derived witness proves a different goal".into(),
        ));
    }
    let mut body = witness_to_json(&witness);
    body.push('\n');
    write_atomic(&config.out, body.as_bytes())?;
    Ok(RunSummary {
        report: config.out.clone(),
        sidecar: None,
        rows: Vec::new(),
    })
}
