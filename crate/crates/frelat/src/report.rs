//! Machine-readable views of library results. Vectors are numerators.

use frelat_core::approx::Diagnosis;
use frelat_core::solutions::Layout;
use frelat_core::{ColumnSolutions, InteriorGap, SolutionSet};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct PartJson {
    pub max_solution: Vec<u32>,
    pub predecessors: Vec<Vec<u32>>,
    pub minimal_solutions: Vec<Vec<u32>>,
    pub count: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<u32>>>,
}

impl From<&ColumnSolutions> for PartJson {
    fn from(part: &ColumnSolutions) -> Self {
        Self {
            max_solution: part.max_solution.levels().to_vec(),
            predecessors: part
                .excluded_predecessors
                .iter()
                .map(|p| p.levels().to_vec())
                .collect(),
            minimal_solutions: part
                .minimal_solutions()
                .into_iter()
                .map(|m| m.into_levels())
                .collect(),
            count: part.count,
            solutions: part
                .enumerated
                .as_ref()
                .map(|list| list.iter().map(|s| s.levels().to_vec()).collect()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolutionSetJson {
    pub granularity: u32,
    /// `columns` for `R ⊙ X = T`, `rows` for `X ⊙ S = T`.
    pub layout: &'static str,
    pub parts: Vec<PartJson>,
    pub count: u128,
}

impl From<&SolutionSet> for SolutionSetJson {
    fn from(set: &SolutionSet) -> Self {
        Self {
            granularity: set.granularity,
            layout: match set.layout {
                Layout::Columns => "columns",
                Layout::Rows => "rows",
            },
            parts: set.parts.iter().map(PartJson::from).collect(),
            count: set.count(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GapJson {
    pub part: usize,
    /// `[index, rhs, interior]` triples.
    pub entries: Vec<(usize, u32, u32)>,
}

pub fn gaps(list: &[InteriorGap]) -> Vec<GapJson> {
    list.iter()
        .map(|g| GapJson {
            part: g.column,
            entries: g.entries.clone(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct DeviationJson {
    pub row: String,
    pub column: String,
    pub old: u32,
    pub new: u32,
    pub steps: u32,
    pub notable: bool,
}

#[derive(Debug, Serialize)]
pub struct RepairJson {
    pub reduct: Vec<String>,
    pub deviations: Vec<DeviationJson>,
}

#[derive(Debug, Serialize)]
pub struct DiagnosisJson {
    pub solvable: bool,
    pub threshold: u32,
    pub repairs: Vec<RepairJson>,
    pub infeasible_reducts: Vec<Vec<String>>,
    pub narrative: String,
}

impl From<&Diagnosis> for DiagnosisJson {
    fn from(d: &Diagnosis) -> Self {
        let names = |rows: &[usize]| rows.iter().map(|&r| d.row_names[r].clone()).collect();
        Self {
            solvable: d.solvable,
            threshold: d.threshold,
            repairs: d
                .repairs
                .iter()
                .map(|r| RepairJson {
                    reduct: names(&r.reduct),
                    deviations: r
                        .deviations
                        .iter()
                        .map(|x| DeviationJson {
                            row: d.row_names[x.row].clone(),
                            column: d.column_names[x.column].clone(),
                            old: x.old,
                            new: x.new,
                            steps: x.steps,
                            notable: x.notable,
                        })
                        .collect(),
                })
                .collect(),
            infeasible_reducts: d.infeasible_reducts.iter().map(|r| names(r)).collect(),
            narrative: d.to_string(),
        }
    }
}
