//! JSON documents exchanged with other tools: factorization certificates,
//! isomorphism witnesses and axiom files.
//!
//! Matrices are arrays of rows, each row an array of `[re, im]` pairs.
//! Expressions are nested `["atom", name]` / `["sum", left, right]` arrays and
//! witness nodes carry a `"kind"` tag. Floats are written in shortest
//! round-trip form and parsed exactly, so finite values survive a round trip
//! bit for bit.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use zalpha_core::ideal::FactorizationCertificate;
use zalpha_core::pelczynski::{AxiomSet, IsoWitness, SpaceExpr};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid certificate: {0}")]
    Certificate(#[from] zalpha_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub fn certificate_to_json(c: &FactorizationCertificate) -> String {
    serde_json::to_string(c).expect("certificates serialize")
}

/// Parses a certificate and checks its shapes.
pub fn certificate_from_json(s: &str) -> Result<FactorizationCertificate, FormatError> {
    let c: FactorizationCertificate = serde_json::from_str(s)?;
    c.check_shapes()?;
    Ok(c)
}

pub fn witness_to_json(w: &IsoWitness) -> String {
    serde_json::to_string(w).expect("witnesses serialize")
}

pub fn witness_from_json(s: &str) -> Result<IsoWitness, FormatError> {
    Ok(serde_json::from_str(s)?)
}

/// An axiom set together with the isomorphism to derive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomFile {
    pub axioms: AxiomSet,
    pub goal: (SpaceExpr, SpaceExpr),
}

impl AxiomFile {
    /// `X⊕X ≅ X`, `Y⊕Y ≅ Y`, `X ≅ Y⊕F`, `Y ≅ X⊕E` with goal `X ≅ Y`.
    pub fn decomposition() -> Self {
        Self {
            axioms: zalpha_core::pelczynski::decomposition_axioms(),
            goal: (SpaceExpr::atom("X"), SpaceExpr::atom("Y")),
        }
    }

    pub fn from_json(s: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("axiom files serialize")
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
