//! Solution sets described by a maximum and the predecessors it excludes.
//!
//! For one right-hand side `t` of a solvable system with connection
//! `forward ⊣ backward`, the solutions are exactly the vectors below
//! `e = backward(t)` that are not below any lower cover of `e` in the lattice
//! of closed sets. The set is up-closed inside the box `(e]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::closure::{box_size, for_each_below, lower_covers, GaloisConnection};
use crate::relation::{leq, FuzzySet, Matrix};

/// Above this many predecessors the count falls back to a box scan instead
/// of inclusion–exclusion.
const INCLUSION_EXCLUSION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSolutions {
    pub max_solution: FuzzySet,
    pub excluded_predecessors: Vec<FuzzySet>,
    pub count: u128,
    pub enumerated: Option<Vec<FuzzySet>>,
}

impl ColumnSolutions {
    /// Describes the solutions of `forward(x) = t`, assuming `t` is open
    /// (`forward(backward(t)) = t`).
    pub(crate) fn describe(conn: &dyn GaloisConnection, target: &[u32], materialize: bool) -> Self {
        let n = conn.granularity();
        let max = conn.backward(target);
        debug_assert_eq!(conn.forward(&max), target);
        let preds = lower_covers(conn, &max);
        let enumerated = materialize.then(|| {
            let mut out = Vec::new();
            for_each_below(&max, |x| {
                if !preds.iter().any(|p| leq(x, p)) {
                    out.push(FuzzySet::from_levels_unchecked(n, x.to_vec()));
                }
            });
            out
        });
        let count = match &enumerated {
            Some(list) => list.len() as u128,
            None => count_outside_downsets(&max, &preds),
        };
        Self {
            max_solution: FuzzySet::from_levels_unchecked(n, max),
            excluded_predecessors: preds
                .into_iter()
                .map(|p| FuzzySet::from_levels_unchecked(n, p))
                .collect(),
            count,
            enumerated,
        }
    }

    /// Whether `x` lies in the described set.
    pub fn contains(&self, x: &FuzzySet) -> bool {
        x.is_subset_of(&self.max_solution)
            && !self.excluded_predecessors.iter().any(|p| x.is_subset_of(p))
    }

    /// The minimal solutions. A minimal solution picks, for every excluded
    /// predecessor `p`, a coordinate where it exceeds `p`; the candidates are
    /// the pointwise maxima of such picks, reduced to their minimal elements.
    pub fn minimal_solutions(&self) -> Vec<FuzzySet> {
        let n = self.max_solution.granularity();
        let max = self.max_solution.levels();
        let mut candidates: Vec<Vec<u32>> = vec![vec![0; max.len()]];
        for p in &self.excluded_predecessors {
            let p = p.levels();
            let mut next = Vec::new();
            for c in &candidates {
                if !leq(c, p) {
                    next.push(c.clone());
                    continue;
                }
                for i in (0..max.len()).filter(|&i| p[i] < max[i]) {
                    let mut raised = c.clone();
                    raised[i] = raised[i].max(p[i] + 1);
                    next.push(raised);
                }
            }
            next.sort();
            next.dedup();
            candidates = minimal_elements(next);
        }
        candidates
            .into_iter()
            .map(|c| FuzzySet::from_levels_unchecked(n, c))
            .collect()
    }
}

fn minimal_elements(items: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    items
        .iter()
        .filter(|x| !items.iter().any(|y| y != *x && leq(y, x)))
        .cloned()
        .collect()
}

/// `|(max] \ ⋃ (p]|` for `p ≤ max`.
fn count_outside_downsets(max: &[u32], preds: &[Vec<u32>]) -> u128 {
    if preds.len() > INCLUSION_EXCLUSION_LIMIT {
        let mut count = 0u128;
        for_each_below(max, |x| {
            if !preds.iter().any(|p| leq(x, p)) {
                count += 1;
            }
        });
        return count;
    }
    // (p₁] ∩ (p₂] = (p₁ ∧ p₂], so alternate over subsets of predecessors
    let mut inside: i128 = 0;
    for mask in 1u32..(1u32 << preds.len()) {
        let mut meet = max.to_vec();
        for (i, p) in preds.iter().enumerate() {
            if mask & (1 << i) != 0 {
                meet.iter_mut().zip(p).for_each(|(m, &v)| *m = (*m).min(v));
            }
        }
        let size = box_size(&meet) as i128;
        if mask.count_ones() % 2 == 1 {
            inside += size;
        } else {
            inside -= size;
        }
    }
    box_size(max) - inside as u128
}

/// How per-system solution vectors are laid out in the unknown matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Each solution vector is a column of `X` (`R ⊙σ X = T`).
    Columns,
    /// Each solution vector is a row of `X` (`X ⊙σ S = T`).
    Rows,
}

/// Solutions of a whole system: independent per right-hand side vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub granularity: u32,
    pub layout: Layout,
    pub parts: Vec<ColumnSolutions>,
}

impl SolutionSet {
    /// Number of solution matrices, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.parts
            .iter()
            .fold(1u128, |acc, p| acc.saturating_mul(p.count))
    }

    /// The maximum solution as a matrix.
    pub fn max_solution(&self) -> Matrix {
        self.assemble(self.parts.iter().map(|p| &p.max_solution))
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        let vectors: Vec<FuzzySet> = match self.layout {
            Layout::Columns => (0..x.cols()).map(|c| x.column(c)).collect(),
            Layout::Rows => (0..x.rows()).map(|r| x.row(r)).collect(),
        };
        vectors.len() == self.parts.len()
            && self.parts.iter().zip(&vectors).all(|(p, v)| p.contains(v))
    }

    /// Every solution matrix, in lexicographic order of the per-part picks,
    /// when enumeration was materialized.
    pub fn matrices(&self) -> Option<Vec<Matrix>> {
        let lists: Vec<&Vec<FuzzySet>> = self
            .parts
            .iter()
            .map(|p| p.enumerated.as_ref())
            .collect::<Option<_>>()?;
        let mut out = Vec::new();
        if lists.iter().any(|l| l.is_empty()) {
            return Some(out);
        }
        let mut pick = vec![0usize; lists.len()];
        loop {
            out.push(self.assemble(pick.iter().zip(&lists).map(|(&i, l)| &l[i])));
            let mut k = pick.len();
            loop {
                if k == 0 {
                    return Some(out);
                }
                k -= 1;
                if pick[k] + 1 < lists[k].len() {
                    pick[k] += 1;
                    break;
                }
                pick[k] = 0;
            }
        }
    }

    fn assemble<'a>(&self, vectors: impl Iterator<Item = &'a FuzzySet>) -> Matrix {
        let vectors: Vec<FuzzySet> = vectors.cloned().collect();
        let len = vectors.first().map_or(0, FuzzySet::len);
        let by_columns = Matrix::from_columns(self.granularity, len, &vectors)
            .expect("solution vectors share length and granularity");
        match self.layout {
            Layout::Columns => by_columns,
            Layout::Rows => by_columns.transpose(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusion_exclusion_matches_scan() {
        let max = [3, 2, 4];
        let preds = vec![vec![3, 1, 4], vec![2, 2, 4], vec![3, 2, 1]];
        let mut scanned = 0u128;
        for_each_below(&max, |x| {
            if !preds.iter().any(|p| leq(x, p)) {
                scanned += 1;
            }
        });
        assert_eq!(count_outside_downsets(&max, &preds), scanned);
        assert_eq!(count_outside_downsets(&max, &[]), 60);
    }

    #[test]
    fn minimal_solutions_by_hitting_sets() {
        let col = ColumnSolutions {
            max_solution: FuzzySet::from_levels(4, vec![3, 2, 4]).unwrap(),
            excluded_predecessors: vec![
                FuzzySet::from_levels(4, vec![3, 1, 4]).unwrap(),
                FuzzySet::from_levels(4, vec![2, 2, 4]).unwrap(),
            ],
            count: 0,
            enumerated: None,
        };
        let mut by_scan = Vec::new();
        for_each_below(col.max_solution.levels(), |x| {
            let x = FuzzySet::from_levels(4, x.to_vec()).unwrap();
            let is_min = col.contains(&x)
                && (0..x.len()).all(|i| {
                    let mut lower = x.levels().to_vec();
                    lower[i] == 0 || {
                        lower[i] -= 1;
                        !col.contains(&FuzzySet::from_levels(4, lower).unwrap())
                    }
                });
            if is_min {
                by_scan.push(x);
            }
        });
        assert_eq!(col.minimal_solutions(), by_scan);
        assert_eq!(by_scan, vec![FuzzySet::from_levels(4, vec![3, 2, 0]).unwrap()]);
    }
}
