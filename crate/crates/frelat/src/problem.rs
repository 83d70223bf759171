//! JSON problem files.
//!
//! Values are integer numerators over `granularity`; σ is 1-based, one entry
//! per unknown. For `orientation: "primal"` the coefficients are `rows ×
//! unknowns`; for `"dual"` they are `unknowns × columns`. The right-hand side
//! is always `rows × columns`.

use std::path::Path;
use std::sync::Arc;

use frelat_core::dual::DualFreInstance;
use frelat_core::{
    AdjointTriple, BuiltinTriple, Frame, FreInstance, GranularLattice, Matrix, OperatorTables,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Primal,
    Dual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TripleSpec {
    Builtin(String),
    Table {
        name: String,
        conj: Vec<Vec<u32>>,
        left: Vec<Vec<u32>>,
        right: Vec<Vec<u32>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub granularity: u32,
    pub triples: Vec<TripleSpec>,
    #[serde(default)]
    pub orientation: Orientation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unknowns: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<String>>,
    pub coefficients: Vec<Vec<u32>>,
    pub sigma: Vec<usize>,
    pub rhs: Vec<Vec<u32>>,
}

/// A parsed and validated system.
#[derive(Debug, Clone)]
pub enum Problem {
    Primal(FreInstance),
    Dual(DualFreInstance),
}

impl Problem {
    pub fn frame(&self) -> &Arc<Frame> {
        match self {
            Problem::Primal(p) => p.frame(),
            Problem::Dual(d) => d.frame(),
        }
    }
}

fn names(given: &Option<Vec<String>>, prefix: &str, count: usize, what: &str) -> Result<Vec<String>, CliError> {
    match given {
        Some(list) if list.len() != count => Err(CliError::Input(format!(
            "{what}: {} names given for {count} entries",
            list.len()
        ))),
        Some(list) => {
            let mut seen = std::collections::BTreeSet::new();
            if let Some(dup) = list.iter().find(|n| !seen.insert(n.as_str())) {
                return Err(CliError::Input(format!("{what}: duplicate name {dup}")));
            }
            Ok(list.clone())
        }
        None => Ok((1..=count).map(|i| format!("{prefix}{i}")).collect()),
    }
}

fn matrix(n: u32, rows: &[Vec<u32>], what: &str) -> Result<Matrix, CliError> {
    Matrix::from_rows(n, rows).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    /// Builds and verifies the frame: every triple must be adjoint.
    pub fn frame(&self) -> Result<Frame, CliError> {
        let n = self.granularity;
        let triples = self
            .triples
            .iter()
            .map(|spec| match spec {
                TripleSpec::Builtin(name) => AdjointTriple::by_name(name, n),
                TripleSpec::Table { name, conj, left, right } => AdjointTriple::from_tables(
                    name,
                    n,
                    OperatorTables {
                        conj: conj.clone(),
                        left: left.clone(),
                        right: right.clone(),
                    },
                ),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if triples.is_empty() {
            return Err(CliError::Input("at least one triple is required".into()));
        }
        Ok(Frame::new(GranularLattice::new(n)?, triples)?)
    }

    pub fn to_problem(&self) -> Result<Problem, CliError> {
        let frame = Arc::new(self.frame()?);
        let n = self.granularity;
        if let Some(&zero) = self.sigma.iter().find(|&&s| s == 0) {
            return Err(CliError::Input(format!("sigma entries are 1-based, found {zero}")));
        }
        let sigma: Vec<usize> = self.sigma.iter().map(|s| s - 1).collect();
        let coefficients = matrix(n, &self.coefficients, "coefficients")?;
        let rhs = matrix(n, &self.rhs, "rhs")?;
        let columns_count = rhs.cols();
        match self.orientation {
            Orientation::Primal => {
                let rows = names(&self.rows, "u", coefficients.rows(), "rows")?;
                let unknowns = names(&self.unknowns, "v", coefficients.cols(), "unknowns")?;
                let columns = names(&self.columns, "w", columns_count, "columns")?;
                Ok(Problem::Primal(FreInstance::new(
                    frame,
                    rows,
                    unknowns,
                    columns,
                    coefficients,
                    sigma,
                    rhs,
                )?))
            }
            Orientation::Dual => {
                let rows = names(&self.rows, "u", rhs.rows(), "rows")?;
                let unknowns = names(&self.unknowns, "v", coefficients.rows(), "unknowns")?;
                let columns = names(&self.columns, "w", coefficients.cols(), "columns")?;
                Ok(Problem::Dual(DualFreInstance::new(
                    frame,
                    rows,
                    unknowns,
                    columns,
                    coefficients,
                    sigma,
                    rhs,
                )?))
            }
        }
    }

    fn triple_specs(frame: &Frame) -> Vec<TripleSpec> {
        frame
            .triples()
            .iter()
            .map(|t| match t.builtin_kind() {
                Some(kind) => TripleSpec::Builtin(kind.name().to_string()),
                None => {
                    let tables = t.to_tables();
                    TripleSpec::Table {
                        name: t.name().to_string(),
                        conj: tables.conj,
                        left: tables.left,
                        right: tables.right,
                    }
                }
            })
            .collect()
    }

    pub fn from_problem(problem: &Problem) -> Self {
        match problem {
            Problem::Primal(p) => Self {
                granularity: p.granularity(),
                triples: Self::triple_specs(p.frame()),
                orientation: Orientation::Primal,
                rows: Some(p.rows().to_vec()),
                unknowns: Some(p.unknowns().to_vec()),
                columns: Some(p.columns().to_vec()),
                coefficients: p.coefficients().to_rows(),
                sigma: p.sigma().iter().map(|s| s + 1).collect(),
                rhs: p.rhs().to_rows(),
            },
            Problem::Dual(d) => Self {
                granularity: d.granularity(),
                triples: Self::triple_specs(d.frame()),
                orientation: Orientation::Dual,
                rows: Some(d.rows().to_vec()),
                unknowns: Some(d.unknowns().to_vec()),
                columns: Some(d.columns().to_vec()),
                coefficients: d.coefficients().to_rows(),
                sigma: d.sigma().iter().map(|s| s + 1).collect(),
                rhs: d.rhs().to_rows(),
            },
        }
    }
}

/// Display name of a built-in triple.
pub fn builtin_names() -> Vec<&'static str> {
    BuiltinTriple::ALL.iter().map(|k| k.name()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "granularity": 4,
        "triples": ["godel", {"name": "min-table",
            "conj": [[0,0,0,0,0],[0,1,1,1,1],[0,1,2,2,2],[0,1,2,3,3],[0,1,2,3,4]],
            "left": [[4,0,0,0,0],[4,4,1,1,1],[4,4,4,2,2],[4,4,4,4,3],[4,4,4,4,4]],
            "right": [[4,0,0,0,0],[4,4,1,1,1],[4,4,4,2,2],[4,4,4,4,3],[4,4,4,4,4]]}],
        "coefficients": [[4, 1], [2, 3]],
        "sigma": [1, 2],
        "rhs": [[2], [2]]
    }"#;

    #[test]
    fn round_trip_is_identity() {
        let file = ProblemFile::from_json(SMALL).unwrap();
        let again = ProblemFile::from_json(&file.to_json()).unwrap();
        assert_eq!(file, again);
        let problem = file.to_problem().unwrap();
        let rebuilt = ProblemFile::from_problem(&problem);
        assert_eq!(rebuilt.rows, Some(vec!["u1".to_string(), "u2".to_string()]));
        assert_eq!(rebuilt.triples[0], TripleSpec::Builtin("godel".into()));
        assert!(matches!(rebuilt.triples[1], TripleSpec::Table { .. }));
        let reparsed = ProblemFile::from_json(&rebuilt.to_json()).unwrap();
        assert_eq!(reparsed, rebuilt);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let mut file = ProblemFile::from_json(SMALL).unwrap();
        file.sigma = vec![0, 1];
        assert!(matches!(file.to_problem(), Err(CliError::Input(_))));
        file.sigma = vec![1, 3];
        assert!(matches!(file.to_problem(), Err(CliError::Invalid(_))));
        file.sigma = vec![1, 1];
        file.rhs = vec![vec![5], vec![0]];
        assert!(file.to_problem().is_err());
        file.rhs = vec![vec![1], vec![0]];
        file.rows = Some(vec!["a".into(), "a".into()]);
        assert!(matches!(file.to_problem(), Err(CliError::Input(_))));
        assert!(ProblemFile::from_json("{\"granularity\": 4}").is_err());
    }
}
