//! Systems `R ⊙σ X = T` with sup-&σ composition.
//!
//! `R` is `U × V`, the unknown `X` is `V × W` and `T` is `U × W`. Each
//! right-hand side column is an independent system whose associated context
//! is `(U, V, R, σ)`: rows act as attributes and unknowns as objects.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::Frame;
use crate::closure::{box_size, for_each_below, GaloisConnection};
use crate::context::{is_consistent, Context, Sigma};
use crate::error::{Error, InteriorGap, Result};
use crate::relation::Matrix;
use crate::solutions::{ColumnSolutions, Layout, SolutionSet};

/// `T(u,w) = ⋁_v R(u,v) &_σ(v) X(v,w)`.
pub fn sup_compose(frame: &Frame, r: &Matrix, x: &Matrix, sigma: &[usize]) -> Result<Matrix> {
    check_compose(frame, r, sigma)?;
    same_granularity(frame, x)?;
    if x.rows() != r.cols() {
        return Err(Error::DimensionMismatch {
            what: "unknown rows vs coefficient columns",
            expected: r.cols(),
            found: x.rows(),
        });
    }
    let triples = frame.triples();
    let mut levels = Vec::with_capacity(r.rows() * x.cols());
    for u in 0..r.rows() {
        for w in 0..x.cols() {
            let value = (0..r.cols())
                .map(|v| triples[sigma[v]].conj_level(r.level(u, v), x.level(v, w)))
                .max()
                .unwrap_or(0);
            levels.push(value);
        }
    }
    Matrix::from_levels(frame.granularity(), r.rows(), x.cols(), levels)
}

/// `X(v,w) = ⋀_u T(u,w) ↖_σ(v) R(u,v)`.
pub fn inf_compose(frame: &Frame, t: &Matrix, r: &Matrix, sigma: &[usize]) -> Result<Matrix> {
    check_compose(frame, r, sigma)?;
    same_granularity(frame, t)?;
    if t.rows() != r.rows() {
        return Err(Error::DimensionMismatch {
            what: "rhs rows vs coefficient rows",
            expected: r.rows(),
            found: t.rows(),
        });
    }
    let triples = frame.triples();
    let top = frame.granularity();
    let mut levels = Vec::with_capacity(r.cols() * t.cols());
    for v in 0..r.cols() {
        for w in 0..t.cols() {
            let value = (0..r.rows())
                .map(|u| triples[sigma[v]].right_level(t.level(u, w), r.level(u, v)))
                .min()
                .unwrap_or(top);
            levels.push(value);
        }
    }
    Matrix::from_levels(frame.granularity(), r.cols(), t.cols(), levels)
}

fn check_compose(frame: &Frame, r: &Matrix, sigma: &[usize]) -> Result<()> {
    same_granularity(frame, r)?;
    if sigma.len() != r.cols() {
        return Err(Error::DimensionMismatch {
            what: "sigma entries vs coefficient columns",
            expected: r.cols(),
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

fn same_granularity(frame: &Frame, m: &Matrix) -> Result<()> {
    if m.granularity() != frame.granularity() {
        return Err(Error::GranularityMismatch {
            expected: frame.granularity(),
            found: m.granularity(),
        });
    }
    Ok(())
}

pub(crate) fn numbered(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| alloc::format!("{prefix}{i}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreInstance {
    context: Context,
    sigma: Vec<usize>,
    columns: Vec<String>,
    rhs: Matrix,
}

impl FreInstance {
    pub fn new(
        frame: Arc<Frame>,
        rows: Vec<String>,
        unknowns: Vec<String>,
        columns: Vec<String>,
        coefficients: Matrix,
        sigma: Vec<usize>,
        rhs: Matrix,
    ) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptySubset);
        }
        if rhs.rows() != coefficients.rows() || rhs.cols() != columns.len() {
            return Err(Error::DimensionMismatch {
                what: "rhs shape",
                expected: coefficients.rows() * columns.len(),
                found: rhs.rows() * rhs.cols(),
            });
        }
        same_granularity(&frame, &rhs)?;
        let context = Context::new(
            frame,
            rows,
            unknowns,
            coefficients,
            Sigma::PerObject(sigma.clone()),
        )?;
        Ok(Self {
            context,
            sigma,
            columns,
            rhs,
        })
    }

    /// Instance with generated names `u1..`, `v1..`, `w1..`.
    pub fn anonymous(
        frame: Arc<Frame>,
        coefficients: Matrix,
        sigma: Vec<usize>,
        rhs: Matrix,
    ) -> Result<Self> {
        let rows = numbered("u", coefficients.rows());
        let unknowns = numbered("v", coefficients.cols());
        let columns = numbered("w", rhs.cols());
        Self::new(frame, rows, unknowns, columns, coefficients, sigma, rhs)
    }

    pub fn frame(&self) -> &Arc<Frame> {
        self.context.frame()
    }

    pub fn granularity(&self) -> u32 {
        self.context.granularity()
    }

    pub fn rows(&self) -> &[String] {
        self.context.attributes()
    }

    pub fn unknowns(&self) -> &[String] {
        self.context.objects()
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn coefficients(&self) -> &Matrix {
        self.context.relation()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn rhs(&self) -> &Matrix {
        &self.rhs
    }

    /// The context `(U, V, R, σ)` with σ replicated across rows.
    pub fn associated_context(&self) -> &Context {
        &self.context
    }

    /// Same system with another right-hand side of identical shape.
    pub fn with_rhs(&self, rhs: Matrix) -> Result<Self> {
        if rhs.rows() != self.rhs.rows() || rhs.cols() != self.rhs.cols() {
            return Err(Error::DimensionMismatch {
                what: "rhs shape",
                expected: self.rhs.rows() * self.rhs.cols(),
                found: rhs.rows() * rhs.cols(),
            });
        }
        same_granularity(self.frame(), &rhs)?;
        Ok(Self {
            rhs,
            ..self.clone()
        })
    }

    pub fn row_indices<S: AsRef<str>>(&self, names: &[S]) -> Option<Vec<usize>> {
        self.context.attribute_indices(names)
    }

    /// `R ⊙σ X`.
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        sup_compose(self.frame(), self.coefficients(), x, &self.sigma)
    }

    pub fn is_solution(&self, x: &Matrix) -> Result<bool> {
        if x.cols() != self.rhs.cols() {
            return Err(Error::DimensionMismatch {
                what: "unknown columns vs rhs columns",
                expected: self.rhs.cols(),
                found: x.cols(),
            });
        }
        Ok(self.apply(x)? == self.rhs)
    }

    /// Columnwise `T_w^{↓N↑π}`.
    pub fn interior(&self) -> Matrix {
        let columns: Vec<_> = (0..self.rhs.cols())
            .map(|w| {
                self.context
                    .attribute_interior(&self.rhs.column(w))
                    .expect("rhs column matches the context")
            })
            .collect();
        Matrix::from_columns(self.granularity(), self.rhs.rows(), &columns)
            .expect("interior columns share shape")
    }

    /// Entries where `T` differs from its interior, per column.
    pub fn interior_gaps(&self) -> Vec<InteriorGap> {
        let interior = self.interior();
        (0..self.rhs.cols())
            .filter_map(|w| {
                let entries: Vec<_> = (0..self.rhs.rows())
                    .filter(|&u| self.rhs.level(u, w) != interior.level(u, w))
                    .map(|u| (u, self.rhs.level(u, w), interior.level(u, w)))
                    .collect();
                (!entries.is_empty()).then_some(InteriorGap { column: w, entries })
            })
            .collect()
    }

    pub fn is_solvable(&self) -> bool {
        (0..self.rhs.cols()).all(|w| {
            let t = self.rhs.column(w);
            self.context.interior(t.levels()) == t.levels()
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

    /// `T ◁σ R`, the greatest solution.
    pub fn max_solution(&self) -> Result<Matrix> {
        self.require_solvable()?;
        inf_compose(self.frame(), &self.rhs, self.coefficients(), &self.sigma)
    }

    /// Per column: the maximum, the excluded predecessors and the count;
    /// with `materialize`, also every solution column.
    pub fn enumerate_solutions(&self, materialize: bool) -> Result<SolutionSet> {
        self.require_solvable()?;
        let parts: Vec<ColumnSolutions> = (0..self.rhs.cols())
            .map(|w| ColumnSolutions::describe(&self.context, self.rhs.column(w).levels(), materialize))
            .collect();
        Ok(SolutionSet {
            granularity: self.granularity(),
            layout: Layout::Columns,
            parts,
        })
    }

    /// The system restricted to the rows in `keep`. With
    /// `enforce_consistency`, `keep` must be a consistent set of the
    /// associated context.
    pub fn reduce(&self, keep: &[usize], enforce_consistency: bool) -> Result<FreInstance> {
        let context = self.context.restrict(keep)?;
        if enforce_consistency && !is_consistent(&self.context, keep)? {
            return Err(Error::Inconsistent {
                subset: crate::context::normalize_subset(keep, self.rows().len())?,
            });
        }
        let kept = crate::context::normalize_subset(keep, self.rows().len())?;
        Ok(FreInstance {
            context,
            sigma: self.sigma.clone(),
            columns: self.columns.clone(),
            rhs: self.rhs.select_rows(&kept)?,
        })
    }

    /// Every `X` with `R ⊙σ X = T`, by exhaustive search over all
    /// `(n+1)^{|V|·|W|}` candidate matrices. Independent of the lattice
    /// machinery; intended as a reference.
    pub fn brute_force_solutions(&self, budget: u128) -> Result<Vec<Matrix>> {
        let n = self.granularity();
        let cells = self.unknowns().len() * self.rhs.cols();
        let bounds = alloc::vec![n; cells];
        let candidates = box_size(&bounds);
        if candidates > budget {
            return Err(Error::BudgetExceeded { candidates, budget });
        }
        let mut out = Vec::new();
        for_each_below(&bounds, |levels| {
            let x = Matrix::from_levels(n, self.unknowns().len(), self.rhs.cols(), levels.to_vec())
                .expect("candidate within range");
            if self.apply(&x).expect("candidate shape matches") == self.rhs {
                out.push(x);
            }
        });
        Ok(out)
    }
}
