//! Report rows (CSV or JSON) and the witness sidecar they point into.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use zalpha_core::ideal::FactorizationCertificate;
use zalpha_core::ConstantReport;

use crate::formats::FormatError;

/// One row per `(dim, constant)`. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub command: String,
    pub alpha: f64,
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    /// Families joined with `;`, empty when the command samples no vectors.
    pub family_set: String,
    pub constant_name: String,
    pub estimate: f64,
    /// `<sidecar file name>#<key>`.
    pub witness_ref: String,
    /// The only field that differs between identical runs.
    pub timestamp: String,
}

pub const CSV_COLUMNS: [&str; 10] = [
    "command",
    "alpha",
    "dim",
    "trials",
    "seed",
    "family_set",
    "constant_name",
    "estimate",
    "witness_ref",
    "timestamp",
];

/// Orders rows by `(dim, constant_name)`.
pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| (a.dim, &a.constant_name).cmp(&(b.dim, &b.constant_name)));
}

pub fn rows_to_csv(rows: &[ReportRow]) -> Result<String, FormatError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        writer.write_record(CSV_COLUMNS).map_err(csv_io)?;
    }
    for row in rows {
        writer.serialize(row).map_err(csv_io)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| FormatError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn rows_from_csv(s: &str) -> Result<Vec<ReportRow>, FormatError> {
    let mut reader = csv::Reader::from_reader(s.as_bytes());
    reader
        .deserialize()
        .collect::<Result<Vec<ReportRow>, _>>()
        .map_err(csv_io)
}

pub fn rows_to_json(rows: &[ReportRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

fn csv_io(e: csv::Error) -> FormatError {
    FormatError::Io(std::io::Error::other(e))
}

/// What a row's `witness_ref` resolves to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SidecarEntry {
    /// An estimator report including its argmax inputs.
    Constant { report: ConstantReport },
    /// The certificate with the largest verification residual.
    Certificate {
        certificate: FactorizationCertificate,
        residual: f64,
    },
}

impl SidecarEntry {
    /// The row estimate replayed from the stored inputs.
    pub fn recompute(&self) -> Result<Option<f64>, zalpha_core::Error> {
        match self {
            SidecarEntry::Constant { report } => report.recompute(),
            SidecarEntry::Certificate { certificate, .. } => certificate.residual().map(Some),
        }
    }
}

pub type Sidecar = BTreeMap<String, SidecarEntry>;

pub fn sidecar_key(constant_name: &str, dim: usize) -> String {
    format!("{constant_name}@{dim}")
}

pub fn sidecar_to_json(sidecar: &Sidecar) -> String {
    let mut s = serde_json::to_string_pretty(sidecar).expect("sidecar serializes");
    s.push('\n');
    s
}

pub fn sidecar_from_json(s: &str) -> Result<Sidecar, FormatError> {
    Ok(serde_json::from_str(s)?)
}
