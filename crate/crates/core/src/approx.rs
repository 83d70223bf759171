//! Repairing unsolvable systems.
//!
//! A reduct `Y` of the associated context is *feasible* when the system
//! restricted to the rows in `Y` is solvable. Its repaired right-hand side
//! keeps every row in `Y` and recomputes the others as
//! `T*_w = ((T_Y)_w^{↓N_Y})^{↑π}`. The pessimistic alternative replaces every
//! column by its interior `T_w^{↓N↑π}`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::closure::GaloisConnection;
use crate::context::{enumerate_reducts, is_consistent, normalize_subset};
use crate::error::{Error, InteriorGap, Result};
use crate::fre::FreInstance;
use crate::relation::Matrix;
use crate::solutions::SolutionSet;

/// Deviations larger than this many granular steps count as notable.
pub const DEFAULT_NOTABLE_STEPS: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationResult {
    pub reduct: Vec<usize>,
    pub t_star: Matrix,
    /// `(row, column, old numerator, new numerator)` for every changed entry.
    pub modified_rows: Vec<(usize, usize, u32, u32)>,
    pub solution_summary: SolutionSet,
}

impl ApproximationResult {
    /// The rows kept as given.
    pub fn preserved_rows(&self) -> &[usize] {
        &self.reduct
    }
}

fn is_reduct(fre: &FreInstance, keep: &[usize]) -> Result<bool> {
    let ctx = fre.associated_context();
    if !is_consistent(ctx, keep)? {
        return Ok(false);
    }
    if keep.len() == 1 {
        return Ok(true);
    }
    for drop in 0..keep.len() {
        let smaller: Vec<usize> = keep
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, &x)| x)
            .collect();
        if is_consistent(ctx, &smaller)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the rows in `keep`, a reduct of the associated context, form a
/// solvable subsystem.
pub fn is_feasible_reduct(fre: &FreInstance, keep: &[usize]) -> Result<bool> {
    let keep = normalize_subset(keep, fre.rows().len())?;
    if !is_reduct(fre, &keep)? {
        return Err(Error::NotAReduct { subset: keep });
    }
    Ok(fre.reduce(&keep, false)?.is_solvable())
}

/// Every feasible reduct, in lexicographic order. For a solvable system this
/// is every reduct.
pub fn find_feasible_reducts(fre: &FreInstance) -> Vec<Vec<usize>> {
    enumerate_reducts(fre.associated_context())
        .into_iter()
        .filter(|keep| {
            fre.reduce(keep, false)
                .map(|r| r.is_solvable())
                .unwrap_or(false)
        })
        .collect()
}

/// Experimental: feasibility for an arbitrary consistent set.
pub fn is_feasible_consistent_set(fre: &FreInstance, keep: &[usize]) -> Result<bool> {
    let keep = normalize_subset(keep, fre.rows().len())?;
    if !is_consistent(fre.associated_context(), &keep)? {
        return Err(Error::Inconsistent { subset: keep });
    }
    Ok(fre.reduce(&keep, false)?.is_solvable())
}

/// Builds `T*` from the rows in `keep`; no feasibility check.
pub(crate) fn repaired_rhs(fre: &FreInstance, keep: &[usize]) -> Result<Matrix> {
    let ctx = fre.associated_context();
    let restricted = ctx.restrict(keep)?;
    let rhs = fre.rhs().select_rows(keep)?;
    let columns: Vec<_> = (0..rhs.cols())
        .map(|w| {
            let closed = restricted.backward(rhs.column(w).levels());
            crate::relation::FuzzySet::from_levels(fre.granularity(), ctx.forward(&closed))
        })
        .collect::<Result<_>>()?;
    Matrix::from_columns(fre.granularity(), fre.rows().len(), &columns)
}

/// Repairs the right-hand side outside the feasible reduct `keep`.
pub fn approximate_by_reduct(fre: &FreInstance, keep: &[usize]) -> Result<ApproximationResult> {
    let keep = normalize_subset(keep, fre.rows().len())?;
    if !is_feasible_reduct(fre, &keep)? {
        return Err(Error::Infeasible { subset: keep });
    }
    let t_star = repaired_rhs(fre, &keep)?;
    let rhs = fre.rhs();
    let mut modified_rows = Vec::new();
    for u in 0..rhs.rows() {
        for w in 0..rhs.cols() {
            let (old, new) = (rhs.level(u, w), t_star.level(u, w));
            if old != new {
                debug_assert!(!keep.contains(&u), "kept row {u} changed");
                modified_rows.push((u, w, old, new));
            }
        }
    }
    let approximated = fre.with_rhs(t_star.clone())?;
    let solution_summary = approximated.enumerate_solutions(false)?;
    Ok(ApproximationResult {
        reduct: keep,
        t_star,
        modified_rows,
        solution_summary,
    })
}

/// Columnwise interior of the right-hand side: always solvable and never
/// above `T`.
pub fn pessimistic_approximation(fre: &FreInstance) -> Matrix {
    fre.interior()
}

/// One right-hand side entry changed by a repair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub row: usize,
    pub column: usize,
    pub old: u32,
    pub new: u32,
    pub steps: u32,
    pub notable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductRepair {
    pub reduct: Vec<usize>,
    pub deviations: Vec<Deviation>,
}

impl ReductRepair {
    /// The deviation with the most granular steps, if any.
    pub fn largest(&self) -> Option<&Deviation> {
        self.deviations.iter().max_by_key(|d| d.steps)
    }
}

/// What can be said about an unsolvable system in terms of its reducts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnosis {
    pub granularity: u32,
    pub row_names: Vec<String>,
    pub column_names: Vec<String>,
    pub threshold: u32,
    pub solvable: bool,
    pub gaps: Vec<InteriorGap>,
    pub repairs: Vec<ReductRepair>,
    /// Reducts whose subsystem stays unsolvable whatever the other rows say.
    pub infeasible_reducts: Vec<Vec<usize>>,
}

pub fn diagnose(fre: &FreInstance) -> Diagnosis {
    diagnose_with_threshold(fre, DEFAULT_NOTABLE_STEPS)
}

pub fn diagnose_with_threshold(fre: &FreInstance, threshold: u32) -> Diagnosis {
    let solvable = fre.is_solvable();
    let mut repairs = Vec::new();
    let mut infeasible_reducts = Vec::new();
    if !solvable {
        for keep in enumerate_reducts(fre.associated_context()) {
            let feasible = fre
                .reduce(&keep, false)
                .map(|r| r.is_solvable())
                .unwrap_or(false);
            if !feasible {
                infeasible_reducts.push(keep);
                continue;
            }
            let t_star = repaired_rhs(fre, &keep).expect("reduct rows are valid");
            let rhs = fre.rhs();
            let mut deviations = Vec::new();
            for u in 0..rhs.rows() {
                for w in 0..rhs.cols() {
                    let (old, new) = (rhs.level(u, w), t_star.level(u, w));
                    if old != new {
                        let steps = old.abs_diff(new);
                        deviations.push(Deviation {
                            row: u,
                            column: w,
                            old,
                            new,
                            steps,
                            notable: steps > threshold,
                        });
                    }
                }
            }
            repairs.push(ReductRepair {
                reduct: keep,
                deviations,
            });
        }
    }
    Diagnosis {
        granularity: fre.granularity(),
        row_names: fre.rows().to_vec(),
        column_names: fre.columns().to_vec(),
        threshold,
        solvable,
        gaps: fre.interior_gaps(),
        repairs,
        infeasible_reducts,
    }
}

impl Diagnosis {
    fn names(&self, rows: &[usize]) -> String {
        let mut out = String::from("{");
        for (i, &r) in rows.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&self.row_names[r]);
        }
        out.push('}');
        out
    }

    fn value(&self, k: u32) -> crate::algebra::GranularValue {
        crate::algebra::GranularValue::new(k, self.granularity).expect("numerator in range")
    }
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.solvable {
            return writeln!(f, "The system is solvable: no incoherence detected.");
        }
        writeln!(f, "The system is unsolvable.")?;
        if self.repairs.is_empty() {
            writeln!(f, "No feasible reduct exists, so no reduct-based repair is available.")?;
        }
        for repair in &self.repairs {
            writeln!(
                f,
                "Feasible reduct {}: these equations are kept unchanged.",
                self.names(&repair.reduct)
            )?;
            for d in &repair.deviations {
                let quality = if d.notable {
                    "notably inaccurate"
                } else {
                    "slightly imprecise"
                };
                let unit = if d.steps == 1 { "step" } else { "steps" };
                writeln!(
                    f,
                    "  {} [{}]: {} -> {} ({} {unit}); measurement looks {quality}",
                    self.row_names[d.row],
                    self.column_names[d.column],
                    self.value(d.old),
                    self.value(d.new),
                    d.steps,
                )?;
            }
        }
        for keep in &self.infeasible_reducts {
            writeln!(
                f,
                "Reduct {}: its subsystem is unsolvable on its own; no change to the remaining right-hand side entries can fix that.",
                self.names(keep)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BuiltinTriple, Frame};
    use alloc::sync::Arc;
    use alloc::vec;

    fn godel(n: u32) -> Arc<Frame> {
        Arc::new(Frame::with_builtins(n, &[BuiltinTriple::Godel]).unwrap())
    }

    #[test]
    fn contradictory_duplicate_rows_have_no_repair() {
        // identical rows with different right-hand sides: each row alone is
        // a reduct and is solvable on its own
        let r = Matrix::from_rows(2, &[vec![1], vec![1]]).unwrap();
        let t = Matrix::from_rows(2, &[vec![1], vec![0]]).unwrap();
        let fre = FreInstance::anonymous(godel(2), r, vec![0], t).unwrap();
        let reducts = enumerate_reducts(fre.associated_context());
        assert_eq!(reducts, vec![vec![0], vec![1]]);
        assert_eq!(find_feasible_reducts(&fre), reducts);
    }

    #[test]
    fn no_feasible_reduct() {
        // every equation reads 0 & x = positive, which nothing satisfies
        let r = Matrix::from_rows(2, &[vec![0], vec![0]]).unwrap();
        let t = Matrix::from_rows(2, &[vec![2], vec![1]]).unwrap();
        let fre = FreInstance::anonymous(godel(2), r, vec![0], t).unwrap();
        assert!(!fre.is_solvable());
        assert_eq!(enumerate_reducts(fre.associated_context()), vec![vec![0], vec![1]]);
        assert!(find_feasible_reducts(&fre).is_empty());
        let report = diagnose(&fre);
        assert!(report.repairs.is_empty());
        assert_eq!(report.infeasible_reducts, vec![vec![0], vec![1]]);
        assert!(alloc::format!("{report}").contains("no reduct-based repair"));
        assert!(matches!(
            approximate_by_reduct(&fre, &[0]),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn solvable_system_is_left_alone() {
        let r = Matrix::from_rows(3, &[vec![3, 1], vec![2, 3]]).unwrap();
        let x = Matrix::from_rows(3, &[vec![2], vec![1]]).unwrap();
        let frame = godel(3);
        let t = crate::fre::sup_compose(&frame, &r, &x, &[0, 0]).unwrap();
        let fre = FreInstance::anonymous(frame, r, vec![0, 0], t.clone()).unwrap();
        assert_eq!(pessimistic_approximation(&fre), t);
        for keep in enumerate_reducts(fre.associated_context()) {
            assert!(is_feasible_reduct(&fre, &keep).unwrap());
            let result = approximate_by_reduct(&fre, &keep).unwrap();
            assert_eq!(result.t_star, t);
            assert!(result.modified_rows.is_empty());
        }
        let report = diagnose(&fre);
        assert!(alloc::format!("{report}").contains("no incoherence"));
    }

    #[test]
    fn non_reduct_rejected() {
        let r = Matrix::from_rows(3, &[vec![3, 1], vec![2, 3]]).unwrap();
        let t = Matrix::from_rows(3, &[vec![1], vec![1]]).unwrap();
        let fre = FreInstance::anonymous(godel(3), r, vec![0, 0], t).unwrap();
        let reducts = enumerate_reducts(fre.associated_context());
        for keep in [vec![0], vec![1], vec![0, 1]] {
            let result = is_feasible_reduct(&fre, &keep);
            if reducts.contains(&keep) {
                assert!(result.is_ok());
            } else {
                assert_eq!(result, Err(Error::NotAReduct { subset: keep }));
            }
        }
    }
}
