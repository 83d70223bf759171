//! Systems `X ⊙σ S = T` with the unknown on the left.
//!
//! `X` is `U × V`, `S` is `V × W` and `T` is `U × W`; σ assigns a triple to
//! every `v ∈ V`. Each row `u` is an independent system in the unknown
//! `X_u ∈ L^V`. The relevant context is `(V, W, S, σ)` with the
//! object-oriented connection
//!
//! ```text
//! f^{↓π}(w) = ⋁_v f(v) &_σ(v) S(v,w)
//! g^{↑N}(v) = ⋀_w g(w) ↙_σ(v) S(v,w)
//! ```
//!
//! The unknown sits in the first argument of the conjunctor, so the left
//! residuum appears here where the primal side uses the right one. Closed
//! sets on `L^V` are the intents; reduction removes objects (columns `W`)
//! while keeping the intent set.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Frame;
use crate::closure::{box_size, for_each_below, ClosedSetEnumerator, GaloisConnection, NextClosure};
use crate::context::{
    for_each_combination, minimal_consistent_subsets, normalize_subset, ConceptLattice, Orientation,
};
use crate::error::{Error, InteriorGap, Result};
use crate::fre::numbered;
use crate::relation::{FuzzySet, Matrix};
use crate::solutions::{ColumnSolutions, Layout, SolutionSet};

/// `T(u,w) = ⋁_v X(u,v) &_σ(v) S(v,w)`.
pub fn dual_compose(frame: &Frame, x: &Matrix, s: &Matrix, sigma: &[usize]) -> Result<Matrix> {
    if x.granularity() != frame.granularity() || s.granularity() != frame.granularity() {
        return Err(Error::GranularityMismatch {
            expected: frame.granularity(),
            found: if x.granularity() != frame.granularity() {
                x.granularity()
            } else {
                s.granularity()
            },
        });
    }
    if x.cols() != s.rows() {
        return Err(Error::DimensionMismatch {
            what: "unknown columns vs coefficient rows",
            expected: s.rows(),
            found: x.cols(),
        });
    }
    check_sigma(frame, sigma, s.rows())?;
    let triples = frame.triples();
    let mut levels = Vec::with_capacity(x.rows() * s.cols());
    for u in 0..x.rows() {
        for w in 0..s.cols() {
            let value = (0..s.rows())
                .map(|v| triples[sigma[v]].conj_level(x.level(u, v), s.level(v, w)))
                .max()
                .unwrap_or(0);
            levels.push(value);
        }
    }
    Matrix::from_levels(frame.granularity(), x.rows(), s.cols(), levels)
}

fn check_sigma(frame: &Frame, sigma: &[usize], expected: usize) -> Result<()> {
    if sigma.len() != expected {
        return Err(Error::DimensionMismatch {
            what: "sigma entries vs coefficient rows",
            expected,
            found: sigma.len(),
        });
    }
    if let Some(&index) = sigma.iter().find(|&&i| i >= frame.triples().len()) {
        return Err(Error::SigmaOutOfRange {
            index,
            triples: frame.triples().len(),
        });
    }
    Ok(())
}

/// The context `(V, W, S, σ)` read through the object-oriented connection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualContext {
    frame: Arc<Frame>,
    attributes: Vec<String>,
    objects: Vec<String>,
    relation: Matrix,
    sigma: Vec<usize>,
}

impl DualContext {
    pub fn new(
        frame: Arc<Frame>,
        attributes: Vec<String>,
        objects: Vec<String>,
        relation: Matrix,
        sigma: Vec<usize>,
    ) -> Result<Self> {
        if attributes.is_empty() || objects.is_empty() {
            return Err(Error::EmptySubset);
        }
        if relation.granularity() != frame.granularity() {
            return Err(Error::GranularityMismatch {
                expected: frame.granularity(),
                found: relation.granularity(),
            });
        }
        if relation.rows() != attributes.len() || relation.cols() != objects.len() {
            return Err(Error::DimensionMismatch {
                what: "coefficient shape",
                expected: attributes.len() * objects.len(),
                found: relation.rows() * relation.cols(),
            });
        }
        check_sigma(&frame, &sigma, attributes.len())?;
        Ok(Self {
            frame,
            attributes,
            objects,
            relation,
            sigma,
        })
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn relation(&self) -> &Matrix {
        &self.relation
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Keeps the objects (columns) in `keep`.
    pub fn restrict_objects(&self, keep: &[usize]) -> Result<DualContext> {
        let keep = normalize_subset(keep, self.objects.len())?;
        Ok(DualContext {
            frame: self.frame.clone(),
            attributes: self.attributes.clone(),
            objects: keep.iter().map(|&w| self.objects[w].clone()).collect(),
            relation: self.relation.select_cols(&keep)?,
            sigma: self.sigma.clone(),
        })
    }

    /// `f^{↓π}` over objects.
    pub fn down_pi(&self, f: &FuzzySet) -> Result<FuzzySet> {
        self.check(f, self.attributes.len())?;
        Ok(FuzzySet::from_levels_unchecked(
            self.frame.granularity(),
            self.forward(f.levels()),
        ))
    }

    /// `g^{↑N}` over attributes.
    pub fn up_n(&self, g: &FuzzySet) -> Result<FuzzySet> {
        self.check(g, self.objects.len())?;
        Ok(FuzzySet::from_levels_unchecked(
            self.frame.granularity(),
            self.backward(g.levels()),
        ))
    }

    fn check(&self, set: &FuzzySet, expected: usize) -> Result<()> {
        if set.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "fuzzy set length",
                expected,
                found: set.len(),
            });
        }
        if set.granularity() != self.frame.granularity() {
            return Err(Error::GranularityMismatch {
                expected: self.frame.granularity(),
                found: set.granularity(),
            });
        }
        Ok(())
    }
}

impl GaloisConnection for DualContext {
    fn granularity(&self) -> u32 {
        self.frame.granularity()
    }

    fn source_len(&self) -> usize {
        self.attributes.len()
    }

    fn target_len(&self) -> usize {
        self.objects.len()
    }

    fn forward(&self, source: &[u32]) -> Vec<u32> {
        let triples = self.frame.triples();
        (0..self.objects.len())
            .map(|w| {
                source
                    .iter()
                    .enumerate()
                    .map(|(v, &x)| triples[self.sigma[v]].conj_level(x, self.relation.level(v, w)))
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    fn backward(&self, target: &[u32]) -> Vec<u32> {
        let triples = self.frame.triples();
        let top = self.frame.granularity();
        (0..self.attributes.len())
            .map(|v| {
                target
                    .iter()
                    .enumerate()
                    .map(|(w, &z)| triples[self.sigma[v]].left_level(z, self.relation.level(v, w)))
                    .min()
                    .unwrap_or(top)
            })
            .collect()
    }
}

/// The object-oriented concept lattice; intents are the generated side.
pub fn build_dual_lattice(ctx: &DualContext) -> ConceptLattice {
    build_dual_lattice_with(ctx, &NextClosure)
}

pub fn build_dual_lattice_with(
    ctx: &DualContext,
    enumerator: &dyn ClosedSetEnumerator,
) -> ConceptLattice {
    ConceptLattice::from_connection(ctx, enumerator, Orientation::ObjectOriented)
}

fn intents(ctx: &DualContext) -> BTreeSet<Vec<u32>> {
    crate::context::closed_set(ctx)
}

/// Whether keeping the objects in `keep` preserves the intent set.
pub fn dual_is_consistent(ctx: &DualContext, keep: &[usize]) -> Result<bool> {
    let full = intents(ctx);
    consistent_against(ctx, &full, keep)
}

fn consistent_against(ctx: &DualContext, full: &BTreeSet<Vec<u32>>, keep: &[usize]) -> Result<bool> {
    let restricted = intents(&ctx.restrict_objects(keep)?);
    Ok(restricted == *full)
}

/// All minimal object subsets preserving the intent set, sorted
/// lexicographically.
pub fn dual_enumerate_reducts(ctx: &DualContext) -> Vec<Vec<usize>> {
    let full = intents(ctx);
    minimal_consistent_subsets(ctx.objects().len(), |keep| {
        consistent_against(ctx, &full, keep).unwrap_or(false)
    })
}

/// All object subsets preserving the intent set, by size then
/// lexicographically.
pub fn dual_consistent_sets(ctx: &DualContext) -> Vec<Vec<usize>> {
    let full = intents(ctx);
    let mut out = Vec::new();
    for size in 1..=ctx.objects().len() {
        for_each_combination(ctx.objects().len(), size, |keep| {
            if consistent_against(ctx, &full, keep).unwrap_or(false) {
                out.push(keep.to_vec());
            }
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualFreInstance {
    context: DualContext,
    rows: Vec<String>,
    rhs: Matrix,
}

impl DualFreInstance {
    pub fn new(
        frame: Arc<Frame>,
        rows: Vec<String>,
        unknowns: Vec<String>,
        columns: Vec<String>,
        coefficients: Matrix,
        sigma: Vec<usize>,
        rhs: Matrix,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptySubset);
        }
        if rhs.granularity() != frame.granularity() {
            return Err(Error::GranularityMismatch {
                expected: frame.granularity(),
                found: rhs.granularity(),
            });
        }
        if rhs.rows() != rows.len() || rhs.cols() != columns.len() {
            return Err(Error::DimensionMismatch {
                what: "rhs shape",
                expected: rows.len() * columns.len(),
                found: rhs.rows() * rhs.cols(),
            });
        }
        let context = DualContext::new(frame, unknowns, columns, coefficients, sigma)?;
        Ok(Self { context, rows, rhs })
    }

    /// Instance with generated names `u1..`, `v1..`, `w1..`.
    pub fn anonymous(
        frame: Arc<Frame>,
        coefficients: Matrix,
        sigma: Vec<usize>,
        rhs: Matrix,
    ) -> Result<Self> {
        let rows = numbered("u", rhs.rows());
        let unknowns = numbered("v", coefficients.rows());
        let columns = numbered("w", coefficients.cols());
        Self::new(frame, rows, unknowns, columns, coefficients, sigma, rhs)
    }

    pub fn context(&self) -> &DualContext {
        &self.context
    }

    pub fn frame(&self) -> &Arc<Frame> {
        self.context.frame()
    }

    pub fn granularity(&self) -> u32 {
        self.context.frame().granularity()
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn unknowns(&self) -> &[String] {
        self.context.attributes()
    }

    pub fn columns(&self) -> &[String] {
        self.context.objects()
    }

    pub fn coefficients(&self) -> &Matrix {
        self.context.relation()
    }

    pub fn sigma(&self) -> &[usize] {
        self.context.sigma()
    }

    pub fn rhs(&self) -> &Matrix {
        &self.rhs
    }

    pub fn with_rhs(&self, rhs: Matrix) -> Result<Self> {
        Self::new(
            self.frame().clone(),
            self.rows.clone(),
            self.unknowns().to_vec(),
            self.columns().to_vec(),
            self.coefficients().clone(),
            self.sigma().to_vec(),
            rhs,
        )
    }

    pub fn column_indices<S: AsRef<str>>(&self, names: &[S]) -> Option<Vec<usize>> {
        let mut out = names
            .iter()
            .map(|n| self.columns().iter().position(|c| c == n.as_ref()))
            .collect::<Option<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    /// `X ⊙σ S`.
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        dual_compose(self.frame(), x, self.coefficients(), self.sigma())
    }

    pub fn is_solution(&self, x: &Matrix) -> Result<bool> {
        if x.rows() != self.rhs.rows() {
            return Err(Error::DimensionMismatch {
                what: "unknown rows vs rhs rows",
                expected: self.rhs.rows(),
                found: x.rows(),
            });
        }
        Ok(self.apply(x)? == self.rhs)
    }

    /// Rowwise `T_u^{↑N↓π}`.
    pub fn interior(&self) -> Matrix {
        let rows: Vec<Vec<u32>> = (0..self.rhs.rows())
            .map(|u| self.context.interior(self.rhs.row_levels(u)))
            .collect();
        Matrix::from_rows(self.granularity(), &rows).expect("interior rows share shape")
    }

    /// Entries where `T` differs from its interior; `column` holds the row
    /// index `u`.
    pub fn interior_gaps(&self) -> Vec<InteriorGap> {
        let interior = self.interior();
        (0..self.rhs.rows())
            .filter_map(|u| {
                let entries: Vec<_> = (0..self.rhs.cols())
                    .filter(|&w| self.rhs.level(u, w) != interior.level(u, w))
                    .map(|w| (w, self.rhs.level(u, w), interior.level(u, w)))
                    .collect();
                (!entries.is_empty()).then_some(InteriorGap { column: u, entries })
            })
            .collect()
    }

    pub fn is_solvable(&self) -> bool {
        (0..self.rhs.rows()).all(|u| {
            let t = self.rhs.row_levels(u);
            self.context.interior(t) == t
        })
    }

    fn require_solvable(&self) -> Result<()> {
        let gaps = self.interior_gaps();
        if gaps.is_empty() {
            Ok(())
        } else {
            Err(Error::Unsolvable(gaps))
        }
    }

    /// Rowwise `T_u^{↑N}`, the greatest solution.
    pub fn max_solution(&self) -> Result<Matrix> {
        self.require_solvable()?;
        let rows: Vec<Vec<u32>> = (0..self.rhs.rows())
            .map(|u| self.context.backward(self.rhs.row_levels(u)))
            .collect();
        Matrix::from_rows(self.granularity(), &rows)
    }

    pub fn solutions(&self, materialize: bool) -> Result<SolutionSet> {
        self.require_solvable()?;
        let parts: Vec<ColumnSolutions> = (0..self.rhs.rows())
            .map(|u| ColumnSolutions::describe(&self.context, self.rhs.row_levels(u), materialize))
            .collect();
        Ok(SolutionSet {
            granularity: self.granularity(),
            layout: Layout::Rows,
            parts,
        })
    }

    /// Keeps the columns in `keep` of both `S` and `T`.
    pub fn reduce(&self, keep: &[usize]) -> Result<DualFreInstance> {
        let keep = normalize_subset(keep, self.columns().len())?;
        Ok(DualFreInstance {
            context: self.context.restrict_objects(&keep)?,
            rows: self.rows.clone(),
            rhs: self.rhs.select_cols(&keep)?,
        })
    }

    /// Every `X` with `X ⊙σ S = T`, by exhaustive search.
    pub fn brute_force_solutions(&self, budget: u128) -> Result<Vec<Matrix>> {
        let n = self.granularity();
        let (rows, cols) = (self.rhs.rows(), self.unknowns().len());
        let bounds = vec![n; rows * cols];
        let candidates = box_size(&bounds);
        if candidates > budget {
            return Err(Error::BudgetExceeded { candidates, budget });
        }
        let mut out = Vec::new();
        for_each_below(&bounds, |levels| {
            let x = Matrix::from_levels(n, rows, cols, levels.to_vec()).expect("candidate in range");
            if self.apply(&x).expect("candidate shape matches") == self.rhs {
                out.push(x);
            }
        });
        Ok(out)
    }

    fn is_reduct(&self, keep: &[usize]) -> Result<bool> {
        let full = intents(&self.context);
        if !consistent_against(&self.context, &full, keep)? {
            return Ok(false);
        }
        for drop in 0..keep.len() {
            let smaller: Vec<usize> = keep
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &x)| x)
                .collect();
            if !smaller.is_empty() && consistent_against(&self.context, &full, &smaller)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the column subset `keep`, a reduct of the dual context, gives
    /// a solvable subsystem.
    pub fn is_feasible_reduct(&self, keep: &[usize]) -> Result<bool> {
        let keep = normalize_subset(keep, self.columns().len())?;
        if !self.is_reduct(&keep)? {
            return Err(Error::NotAReduct { subset: keep });
        }
        Ok(self.reduce(&keep)?.is_solvable())
    }

    pub fn find_feasible_reducts(&self) -> Vec<Vec<usize>> {
        dual_enumerate_reducts(&self.context)
            .into_iter()
            .filter(|keep| self.reduce(keep).map(|r| r.is_solvable()).unwrap_or(false))
            .collect()
    }

    /// Repairs the columns outside a feasible reduct:
    /// `T*_u = ((T_Y)_u^{↑N_Y})^{↓π}`.
    pub fn approximate(&self, keep: &[usize]) -> Result<DualApproximation> {
        let keep = normalize_subset(keep, self.columns().len())?;
        if !self.is_feasible_reduct(&keep)? {
            return Err(Error::Infeasible { subset: keep });
        }
        let restricted = self.context.restrict_objects(&keep)?;
        let reduced_rhs = self.rhs.select_cols(&keep)?;
        let rows: Vec<Vec<u32>> = (0..self.rhs.rows())
            .map(|u| self.context.forward(&restricted.backward(reduced_rhs.row_levels(u))))
            .collect();
        let t_star = Matrix::from_rows(self.granularity(), &rows)?;
        let mut modified = Vec::new();
        for u in 0..self.rhs.rows() {
            for w in 0..self.rhs.cols() {
                let (old, new) = (self.rhs.level(u, w), t_star.level(u, w));
                if old != new {
                    modified.push((u, w, old, new));
                }
            }
        }
        let solution_summary = self.with_rhs(t_star.clone())?.solutions(false)?;
        Ok(DualApproximation {
            reduct: keep,
            t_star,
            modified_entries: modified,
            solution_summary,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualApproximation {
    /// Columns kept as given.
    pub reduct: Vec<usize>,
    pub t_star: Matrix,
    /// `(row, column, old numerator, new numerator)` for every changed entry.
    pub modified_entries: Vec<(usize, usize, u32, u32)>,
    pub solution_summary: SolutionSet,
}

pub fn dual_reduce(fre: &DualFreInstance, keep: &[usize]) -> Result<DualFreInstance> {
    fre.reduce(keep)
}

pub fn dual_is_solvable(fre: &DualFreInstance) -> bool {
    fre.is_solvable()
}

pub fn dual_max_solution(fre: &DualFreInstance) -> Result<Matrix> {
    fre.max_solution()
}

pub fn dual_solutions(fre: &DualFreInstance, materialize: bool) -> Result<SolutionSet> {
    fre.solutions(materialize)
}

pub fn dual_approximate(fre: &DualFreInstance, keep: &[usize]) -> Result<DualApproximation> {
    fre.approximate(keep)
}
