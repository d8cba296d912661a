//! JSON diagram documents.

use std::collections::BTreeMap;
use std::path::Path;

use bratteli::diagram::{FiniteRankDiagram, Matrix, StationaryDiagram};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Stationary,
    FiniteRank,
}

/// On-disk form of a diagram. Matrices are row-major: row `v` of a level
/// matrix lists the edges from vertex `v` one level down to each vertex of
/// the level above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    pub schema_version: u32,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefix: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

/// A loaded, validated diagram.
#[derive(Clone, Debug)]
pub enum Loaded {
    Stationary(StationaryDiagram),
    FiniteRank(FiniteRankDiagram),
}

impl DiagramDocument {
    pub fn stationary(d: &StationaryDiagram, metadata: BTreeMap<String, String>) -> Self {
        DiagramDocument {
            schema_version: SCHEMA_VERSION,
            kind: Kind::Stationary,
            matrix: Some(d.f().clone()),
            prefix: None,
            period: None,
            metadata,
        }
    }

    pub fn finite_rank(d: &FiniteRankDiagram, metadata: BTreeMap<String, String>) -> Self {
        DiagramDocument {
            schema_version: SCHEMA_VERSION,
            kind: Kind::FiniteRank,
            matrix: None,
            prefix: Some(d.prefix().to_vec()),
            period: Some(d.period().to_vec()),
            metadata,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: DiagramDocument = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "field `schema_version`: unsupported version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Canonical text: pretty JSON with a trailing newline.
    pub fn to_canonical(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn diagram(&self) -> Result<Loaded, CliError> {
        let field_err = |f: &str, e: bratteli::Error| CliError::Input(format!("field `{f}`: {e}"));
        match self.kind {
            Kind::Stationary => {
                if self.prefix.is_some() || self.period.is_some() {
                    return Err(CliError::Input("stationary documents take `matrix` only".into()));
                }
                let m = self.matrix.clone().ok_or_else(|| CliError::Input("missing field `matrix`".into()))?;
                Ok(Loaded::Stationary(StationaryDiagram::new(m).map_err(|e| field_err("matrix", e))?))
            }
            Kind::FiniteRank => {
                if self.matrix.is_some() {
                    return Err(CliError::Input("finite_rank documents take `prefix` and `period`".into()));
                }
                let period = self.period.clone().ok_or_else(|| CliError::Input("missing field `period`".into()))?;
                let prefix = self.prefix.clone().unwrap_or_default();
                Ok(Loaded::FiniteRank(FiniteRankDiagram::new(prefix, period).map_err(|e| field_err("period", e))?))
            }
        }
    }
}
