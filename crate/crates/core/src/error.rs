use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::AdjunctionWitness;

/// Pointwise disagreement between a right-hand side column and its interior.
///
/// Carried by unsolvability errors so callers can see which equations break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorGap {
    /// Index of the right-hand side column (primal) or row (dual).
    pub column: usize,
    /// `(equation index, rhs numerator, interior numerator)` for every entry
    /// where the two differ.
    pub entries: Vec<(usize, u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    ZeroGranularity,
    OutOfRange {
        numerator: u32,
        granularity: u32,
    },
    GranularityMismatch {
        expected: u32,
        found: u32,
    },
    UnknownTriple(String),
    NotAdjoint {
        name: String,
        witness: AdjunctionWitness,
    },
    TableShape {
        name: String,
        expected: usize,
    },
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    SigmaOutOfRange {
        index: usize,
        triples: usize,
    },
    EmptySubset,
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    NotAnExtent,
    Inconsistent {
        subset: Vec<usize>,
    },
    NotAReduct {
        subset: Vec<usize>,
    },
    Infeasible {
        subset: Vec<usize>,
    },
    Unsolvable(Vec<InteriorGap>),
    BudgetExceeded {
        candidates: u128,
        budget: u128,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroGranularity => write!(f, "granularity must be at least 1"),
            Error::OutOfRange {
                numerator,
                granularity,
            } => write!(
                f,
                "numerator {numerator} is outside [0, {granularity}] for granularity {granularity}"
            ),
            Error::GranularityMismatch { expected, found } => {
                write!(f, "granularity mismatch: expected {expected}, found {found}")
            }
            Error::UnknownTriple(name) => write!(f, "unknown adjoint triple `{name}`"),
            Error::NotAdjoint { name, witness } => {
                write!(f, "triple `{name}` violates adjunction at {witness}")
            }
            Error::TableShape { name, expected } => write!(
                f,
                "operator tables of triple `{name}` must be {expected}x{expected}"
            ),
            Error::DimensionMismatch {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected dimension {expected}, found {found}"),
            Error::SigmaOutOfRange { index, triples } => write!(
                f,
                "triple index {index} does not address one of the {triples} triples"
            ),
            Error::EmptySubset => write!(f, "subset must be non-empty"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for {len} elements")
            }
            Error::NotAnExtent => write!(f, "fuzzy set is not an extent of the lattice"),
            Error::Inconsistent { subset } => {
                write!(f, "subset {subset:?} is not a consistent set")
            }
            Error::NotAReduct { subset } => write!(f, "subset {subset:?} is not a reduct"),
            Error::Infeasible { subset } => {
                write!(f, "reduct {subset:?} does not yield a solvable reduction")
            }
            Error::Unsolvable(gaps) => {
                write!(f, "equation is unsolvable")?;
                for gap in gaps {
                    write!(f, "; column {}:", gap.column)?;
                    for (row, rhs, interior) in &gap.entries {
                        write!(f, " row {row} rhs {rhs} interior {interior}")?;
                    }
                }
                Ok(())
            }
            Error::BudgetExceeded { candidates, budget } => write!(
                f,
                "search space of {candidates} candidates exceeds budget {budget}"
            ),
        }
    }
}

impl core::error::Error for Error {}
