//! Exact multi-adjoint fuzzy relation equations on granular chains.
//!
//! Values live in `[0,1]_n = {0, 1/n, …, 1}` and are handled as integer
//! numerators throughout. Equations `R ⊙σ X = T` are solved, reduced and
//! approximated through the property-oriented concept lattice of the
//! associated context; equations `X ⊙σ S = T` go through the object-oriented
//! one (see [`dual`]).
//!
//! ```
//! use std::sync::Arc;
//! use frelat_core::{BuiltinTriple, Frame, FreInstance, Matrix};
//!
//! let frame = Arc::new(Frame::with_builtins(4, &[BuiltinTriple::Godel]).unwrap());
//! let r = Matrix::from_rows(4, &[vec![4, 1], vec![2, 3]]).unwrap();
//! let t = Matrix::from_rows(4, &[vec![2], vec![2]]).unwrap();
//! let fre = FreInstance::anonymous(frame, r, vec![0, 0], t).unwrap();
//! assert!(fre.is_solvable());
//! assert_eq!(fre.max_solution().unwrap().to_rows(), vec![vec![2], vec![2]]);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod approx;
pub mod closure;
pub mod context;
pub mod dual;
pub mod error;
pub mod fre;
pub mod relation;
pub mod solutions;

pub use algebra::{
    verify_adjoint_triple, AdjointTriple, AdjunctionReport, AdjunctionWitness, BuiltinTriple,
    Frame, GranularLattice, GranularValue, OperatorTables,
};
pub use approx::{
    approximate_by_reduct, diagnose, find_feasible_reducts, is_feasible_reduct,
    pessimistic_approximation, ApproximationResult, Diagnosis,
};
pub use closure::{ClosedSetEnumerator, ExhaustiveScan, GaloisConnection, NextClosure};
pub use context::{
    build_concept_lattice, enumerate_reducts, is_consistent, Concept, ConceptLattice, Context,
    Orientation, Sigma,
};
pub use dual::DualFreInstance;
pub use error::{Error, InteriorGap, Result};
pub use fre::{inf_compose, sup_compose, FreInstance};
pub use relation::{FuzzySet, Matrix};
pub use solutions::{ColumnSolutions, SolutionSet};
