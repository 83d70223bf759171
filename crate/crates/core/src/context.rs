//! Multi-adjoint contexts and their property-oriented concept lattices.
//!
//! For a context `(A, B, R, σ)` the possibility and necessity operators are
//!
//! ```text
//! g↑π(a) = ⋁ { R(a,b) &_σ(a,b) g(b) | b ∈ B }
//! f↓N(b) = ⋀ { f(a) ↖_σ(a,b) R(a,b) | a ∈ A }
//! ```
//!
//! and form an isotone Galois connection. Extents (fixpoints of `↓N∘↑π` on
//! `L^B`) and intents (fixpoints of `↑π∘↓N` on `L^A`) are in order-preserving
//! bijection, so the lattice is stored once, indexed by extents.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::Frame;
use crate::closure::{ClosedSetEnumerator, ClosedSetLattice, GaloisConnection, NextClosure};
use crate::error::{Error, Result};
use crate::relation::{FuzzySet, Matrix};

/// Assignment of a triple index to each attribute/object pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sigma {
    /// One index per object, replicated across attributes.
    PerObject(Vec<usize>),
    /// One index per attribute, replicated across objects.
    PerAttribute(Vec<usize>),
    /// Row-major `|A| × |B|` indices.
    PerCell(Vec<usize>),
}

impl Sigma {
    fn index(&self, a: usize, b: usize, objects: usize) -> usize {
        match self {
            Sigma::PerObject(v) => v[b],
            Sigma::PerAttribute(v) => v[a],
            Sigma::PerCell(v) => v[a * objects + b],
        }
    }

    fn indices(&self) -> &[usize] {
        match self {
            Sigma::PerObject(v) | Sigma::PerAttribute(v) | Sigma::PerCell(v) => v,
        }
    }

    fn expected_len(&self, attributes: usize, objects: usize) -> usize {
        match self {
            Sigma::PerObject(_) => objects,
            Sigma::PerAttribute(_) => attributes,
            Sigma::PerCell(_) => attributes * objects,
        }
    }

    fn restrict_attributes(&self, keep: &[usize], objects: usize) -> Sigma {
        match self {
            Sigma::PerObject(v) => Sigma::PerObject(v.clone()),
            Sigma::PerAttribute(v) => Sigma::PerAttribute(keep.iter().map(|&a| v[a]).collect()),
            Sigma::PerCell(v) => Sigma::PerCell(
                keep.iter()
                    .flat_map(|&a| v[a * objects..(a + 1) * objects].iter().copied())
                    .collect(),
            ),
        }
    }

    fn restrict_objects(&self, keep: &[usize], objects: usize) -> Sigma {
        match self {
            Sigma::PerObject(v) => Sigma::PerObject(keep.iter().map(|&b| v[b]).collect()),
            Sigma::PerAttribute(v) => Sigma::PerAttribute(v.clone()),
            Sigma::PerCell(v) => {
                let rows = v.len() / objects.max(1);
                Sigma::PerCell(
                    (0..rows)
                        .flat_map(|a| keep.iter().map(move |&b| v[a * objects + b]))
                        .collect(),
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    frame: Arc<Frame>,
    attributes: Vec<String>,
    objects: Vec<String>,
    relation: Matrix,
    sigma: Sigma,
}

impl Context {
    pub fn new(
        frame: Arc<Frame>,
        attributes: Vec<String>,
        objects: Vec<String>,
        relation: Matrix,
        sigma: Sigma,
    ) -> Result<Self> {
        if attributes.is_empty() || objects.is_empty() {
            return Err(Error::EmptySubset);
        }
        if relation.rows() != attributes.len() {
            return Err(Error::DimensionMismatch {
                what: "relation rows vs attributes",
                expected: attributes.len(),
                found: relation.rows(),
            });
        }
        if relation.cols() != objects.len() {
            return Err(Error::DimensionMismatch {
                what: "relation columns vs objects",
                expected: objects.len(),
                found: relation.cols(),
            });
        }
        if relation.granularity() != frame.granularity() {
            return Err(Error::GranularityMismatch {
                expected: frame.granularity(),
                found: relation.granularity(),
            });
        }
        let expected = sigma.expected_len(attributes.len(), objects.len());
        if sigma.indices().len() != expected {
            return Err(Error::DimensionMismatch {
                what: "sigma entries",
                expected,
                found: sigma.indices().len(),
            });
        }
        if let Some(&index) = sigma.indices().iter().find(|&&i| i >= frame.triples().len()) {
            return Err(Error::SigmaOutOfRange {
                index,
                triples: frame.triples().len(),
            });
        }
        Ok(Self {
            frame,
            attributes,
            objects,
            relation,
            sigma,
        })
    }

    /// Context with generated names `a1..`, `b1..`.
    pub fn anonymous(frame: Arc<Frame>, relation: Matrix, sigma: Sigma) -> Result<Self> {
        let attributes = numbered("a", relation.rows());
        let objects = numbered("b", relation.cols());
        Self::new(frame, attributes, objects, relation, sigma)
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

    pub fn sigma(&self) -> &Sigma {
        &self.sigma
    }

    pub fn sigma_at(&self, attribute: usize, object: usize) -> usize {
        self.sigma.index(attribute, object, self.objects.len())
    }

    pub fn granularity(&self) -> u32 {
        self.frame.granularity()
    }

    /// Resolves attribute names to sorted indices.
    pub fn attribute_indices<S: AsRef<str>>(&self, names: &[S]) -> Option<Vec<usize>> {
        resolve(&self.attributes, names)
    }

    pub fn object_indices<S: AsRef<str>>(&self, names: &[S]) -> Option<Vec<usize>> {
        resolve(&self.objects, names)
    }

    fn check(&self, set: &FuzzySet, expected: usize, what: &'static str) -> Result<()> {
        if set.len() != expected {
            return Err(Error::DimensionMismatch {
                what,
                expected,
                found: set.len(),
            });
        }
        if set.granularity() != self.granularity() {
            return Err(Error::GranularityMismatch {
                expected: self.granularity(),
                found: set.granularity(),
            });
        }
        Ok(())
    }

    pub(crate) fn possibility_levels(&self, g: &[u32]) -> Vec<u32> {
        let triples = self.frame.triples();
        (0..self.attributes.len())
            .map(|a| {
                let row = self.relation.row_levels(a);
                row.iter()
                    .zip(g)
                    .enumerate()
                    .map(|(b, (&r, &x))| triples[self.sigma_at(a, b)].conj_level(r, x))
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    pub(crate) fn necessity_levels(&self, f: &[u32]) -> Vec<u32> {
        let triples = self.frame.triples();
        let top = self.granularity();
        (0..self.objects.len())
            .map(|b| {
                f.iter()
                    .enumerate()
                    .map(|(a, &z)| {
                        triples[self.sigma_at(a, b)].right_level(z, self.relation.level(a, b))
                    })
                    .min()
                    .unwrap_or(top)
            })
            .collect()
    }

    /// `g↑π`, a fuzzy set of attributes.
    pub fn possibility(&self, g: &FuzzySet) -> Result<FuzzySet> {
        self.check(g, self.objects.len(), "object set length")?;
        Ok(FuzzySet::from_levels_unchecked(
            self.granularity(),
            self.possibility_levels(g.levels()),
        ))
    }

    /// `f↓N`, a fuzzy set of objects.
    pub fn necessity(&self, f: &FuzzySet) -> Result<FuzzySet> {
        self.check(f, self.attributes.len(), "attribute set length")?;
        Ok(FuzzySet::from_levels_unchecked(
            self.granularity(),
            self.necessity_levels(f.levels()),
        ))
    }

    /// `g↑π↓N`.
    pub fn object_closure(&self, g: &FuzzySet) -> Result<FuzzySet> {
        self.necessity(&self.possibility(g)?)
    }

    /// `f↓N↑π`.
    pub fn attribute_interior(&self, f: &FuzzySet) -> Result<FuzzySet> {
        self.possibility(&self.necessity(f)?)
    }

    /// The context on the attribute subset `keep` (sorted, in input order).
    pub fn restrict(&self, keep: &[usize]) -> Result<Context> {
        let keep = normalize_subset(keep, self.attributes.len())?;
        Ok(Context {
            frame: self.frame.clone(),
            attributes: keep.iter().map(|&a| self.attributes[a].clone()).collect(),
            objects: self.objects.clone(),
            relation: self.relation.select_rows(&keep)?,
            sigma: self.sigma.restrict_attributes(&keep, self.objects.len()),
        })
    }

    /// The context on the object subset `keep`.
    pub fn restrict_objects(&self, keep: &[usize]) -> Result<Context> {
        let keep = normalize_subset(keep, self.objects.len())?;
        Ok(Context {
            frame: self.frame.clone(),
            attributes: self.attributes.clone(),
            objects: keep.iter().map(|&b| self.objects[b].clone()).collect(),
            relation: self.relation.select_cols(&keep)?,
            sigma: self.sigma.restrict_objects(&keep, self.objects.len()),
        })
    }
}

impl GaloisConnection for Context {
    fn granularity(&self) -> u32 {
        Context::granularity(self)
    }

    fn source_len(&self) -> usize {
        self.objects.len()
    }

    fn target_len(&self) -> usize {
        self.attributes.len()
    }

    fn forward(&self, source: &[u32]) -> Vec<u32> {
        self.possibility_levels(source)
    }

    fn backward(&self, target: &[u32]) -> Vec<u32> {
        self.necessity_levels(target)
    }
}

fn numbered(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| alloc::format!("{prefix}{i}")).collect()
}

fn resolve<S: AsRef<str>>(names: &[String], wanted: &[S]) -> Option<Vec<usize>> {
    let mut out = wanted
        .iter()
        .map(|w| names.iter().position(|n| n == w.as_ref()))
        .collect::<Option<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Some(out)
}

pub(crate) fn normalize_subset(keep: &[usize], len: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&index) = keep.iter().find(|&&i| i >= len) {
        return Err(Error::IndexOutOfRange { index, len });
    }
    Ok(keep)
}

/// A fixpoint pair `(extent, intent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: FuzzySet,
    pub intent: FuzzySet,
}

/// Which side of the connection the lattice was generated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Extents over objects are the closed sets (`↓N∘↑π`).
    PropertyOriented,
    /// Intents over attributes are the closed sets (`↑N∘↓π`).
    ObjectOriented,
}

/// A complete lattice of concepts with its Hasse diagram.
///
/// Concepts are stored in lexicographic order of the generating side's
/// numerator vectors, so the bottom comes first and the top last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    orientation: Orientation,
    concepts: Vec<Concept>,
    covers: Vec<(usize, usize)>,
    by_extent: BTreeMap<Vec<u32>, usize>,
    by_intent: BTreeMap<Vec<u32>, usize>,
}

impl ConceptLattice {
    /// Builds the lattice of closed source sets of `conn`. `split` turns a
    /// closed source set into the `(extent, intent)` pair.
    pub(crate) fn from_connection(
        conn: &dyn GaloisConnection,
        enumerator: &dyn ClosedSetEnumerator,
        orientation: Orientation,
    ) -> Self {
        let inner = ClosedSetLattice::build(conn, enumerator);
        let n = conn.granularity();
        let concepts: Vec<Concept> = inner
            .elements()
            .iter()
            .map(|closed| {
                let image = FuzzySet::from_levels_unchecked(n, conn.forward(closed));
                let closed = FuzzySet::from_levels_unchecked(n, closed.clone());
                match orientation {
                    Orientation::PropertyOriented => Concept {
                        extent: closed,
                        intent: image,
                    },
                    Orientation::ObjectOriented => Concept {
                        extent: image,
                        intent: closed,
                    },
                }
            })
            .collect();
        let by_extent = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.levels().to_vec(), i))
            .collect();
        let by_intent = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.intent.levels().to_vec(), i))
            .collect();
        Self {
            orientation,
            concepts,
            covers: inner.covers().to_vec(),
            by_extent,
            by_intent,
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// `(lower, upper)` index pairs: the transitive reduction of the order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn extents(&self) -> impl Iterator<Item = &FuzzySet> {
        self.concepts.iter().map(|c| &c.extent)
    }

    pub fn intents(&self) -> impl Iterator<Item = &FuzzySet> {
        self.concepts.iter().map(|c| &c.intent)
    }

    pub fn position_of_extent(&self, extent: &FuzzySet) -> Option<usize> {
        self.by_extent.get(extent.levels()).copied()
    }

    pub fn position_of_intent(&self, intent: &FuzzySet) -> Option<usize> {
        self.by_intent.get(intent.levels()).copied()
    }

    /// `c_i ≤ c_j` in the concept order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.concepts[i].extent.is_subset_of(&self.concepts[j].extent)
            && self.concepts[i].intent.is_subset_of(&self.concepts[j].intent)
    }

    /// Extents directly below `extent`.
    pub fn predecessors(&self, extent: &FuzzySet) -> Result<Vec<FuzzySet>> {
        let position = self.position_of_extent(extent).ok_or(Error::NotAnExtent)?;
        Ok(self
            .covers
            .iter()
            .filter(|&&(_, upper)| upper == position)
            .map(|&(lower, _)| self.concepts[lower].extent.clone())
            .collect())
    }

    /// Intents directly below `intent`.
    pub fn predecessors_by_intent(&self, intent: &FuzzySet) -> Result<Vec<FuzzySet>> {
        let position = self.position_of_intent(intent).ok_or(Error::NotAnExtent)?;
        Ok(self
            .covers
            .iter()
            .filter(|&&(_, upper)| upper == position)
            .map(|&(lower, _)| self.concepts[lower].intent.clone())
            .collect())
    }

    /// Index of the greatest lower bound of two concepts.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.bound(i, j, |k, x| self.leq(k, x), true)
    }

    /// Index of the least upper bound of two concepts.
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.bound(i, j, |k, x| self.leq(x, k), false)
    }

    fn bound(&self, i: usize, j: usize, rel: impl Fn(usize, usize) -> bool, greatest: bool) -> usize {
        let candidates: Vec<usize> = (0..self.len()).filter(|&k| rel(k, i) && rel(k, j)).collect();
        // a complete lattice always has exactly one extremal candidate
        let pick = candidates.iter().copied().find(|&k| {
            candidates
                .iter()
                .all(|&other| if greatest { self.leq(other, k) } else { self.leq(k, other) })
        });
        pick.expect("concept lattice is complete")
    }
}

/// The property-oriented concept lattice, generated with [`NextClosure`].
pub fn build_concept_lattice(ctx: &Context) -> ConceptLattice {
    build_concept_lattice_with(ctx, &NextClosure)
}

pub fn build_concept_lattice_with(
    ctx: &Context,
    enumerator: &dyn ClosedSetEnumerator,
) -> ConceptLattice {
    ConceptLattice::from_connection(ctx, enumerator, Orientation::PropertyOriented)
}

/// Comparison between the extents of a context and of a restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub subset: Vec<usize>,
    /// Extents of the full context that the restriction loses.
    pub missing: Vec<FuzzySet>,
    /// Extents of the restriction absent from the full context. Always
    /// empty: a restricted extent is the full necessity of the same intent
    /// padded with top values.
    pub extra: Vec<FuzzySet>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub(crate) fn closed_set(conn: &dyn GaloisConnection) -> BTreeSet<Vec<u32>> {
    NextClosure.closed_sets(conn).into_iter().collect()
}

fn compare_closed_sets(
    n: u32,
    subset: Vec<usize>,
    full: &BTreeSet<Vec<u32>>,
    restricted: &BTreeSet<Vec<u32>>,
) -> ConsistencyReport {
    let to_sets = |it: alloc::collections::btree_set::Difference<'_, Vec<u32>>| {
        it.map(|v| FuzzySet::from_levels_unchecked(n, v.clone()))
            .collect::<Vec<_>>()
    };
    let report = ConsistencyReport {
        subset,
        missing: to_sets(full.difference(restricted)),
        extra: to_sets(restricted.difference(full)),
    };
    debug_assert!(report.extra.is_empty(), "restricted lattice produced a foreign closed set");
    report
}

/// Extent comparison for the attribute subset `keep`.
pub fn consistency_report(ctx: &Context, keep: &[usize]) -> Result<ConsistencyReport> {
    let full = closed_set(ctx);
    consistency_against(ctx, &full, keep)
}

pub(crate) fn consistency_against(
    ctx: &Context,
    full: &BTreeSet<Vec<u32>>,
    keep: &[usize],
) -> Result<ConsistencyReport> {
    let keep = normalize_subset(keep, ctx.attributes().len())?;
    let restricted_ctx = ctx.restrict(&keep)?;
    // every full extent must be closed in the restricted context
    let quick = full
        .iter()
        .all(|g| restricted_ctx.closure(g) == *g);
    let restricted = closed_set(&restricted_ctx);
    let report = compare_closed_sets(ctx.granularity(), keep, full, &restricted);
    debug_assert_eq!(quick, report.missing.is_empty());
    Ok(report)
}

/// Whether the attribute subset `keep` preserves the extent lattice.
pub fn is_consistent(ctx: &Context, keep: &[usize]) -> Result<bool> {
    Ok(consistency_report(ctx, keep)?.is_consistent())
}

/// All minimal consistent attribute subsets, sorted lexicographically by
/// index.
pub fn enumerate_reducts(ctx: &Context) -> Vec<Vec<usize>> {
    let full = closed_set(ctx);
    minimal_consistent_subsets(ctx.attributes().len(), |keep| {
        consistency_against(ctx, &full, keep)
            .map(|r| r.is_consistent())
            .unwrap_or(false)
    })
}

/// All consistent attribute subsets (not only minimal ones), ordered by
/// size then lexicographically.
pub fn enumerate_consistent_sets(ctx: &Context) -> Vec<Vec<usize>> {
    let full = closed_set(ctx);
    let mut out = Vec::new();
    for size in 1..=ctx.attributes().len() {
        for_each_combination(ctx.attributes().len(), size, |subset| {
            if consistency_against(ctx, &full, subset)
                .map(|r| r.is_consistent())
                .unwrap_or(false)
            {
                out.push(subset.to_vec());
            }
        });
    }
    out
}

/// Breadth-first search for the minimal subsets of `0..universe` accepted
/// by a monotone predicate. Supersets of found subsets are skipped; each hit
/// is re-checked for minimality by dropping one element at a time.
pub(crate) fn minimal_consistent_subsets(
    universe: usize,
    mut consistent: impl FnMut(&[usize]) -> bool,
) -> Vec<Vec<usize>> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 1..=universe {
        let mut layer = Vec::new();
        for_each_combination(universe, size, |subset| {
            if found.iter().any(|r| r.iter().all(|x| subset.contains(x))) {
                return;
            }
            if consistent(subset) {
                layer.push(subset.to_vec());
            }
        });
        for subset in layer {
            let minimal = subset.len() == 1
                || (0..subset.len()).all(|drop| {
                    let smaller: Vec<usize> = subset
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &x)| x)
                        .collect();
                    !consistent(&smaller)
                });
            debug_assert!(minimal, "consistency is not monotone for {subset:?}");
            if minimal {
                found.push(subset);
            }
        }
    }
    found.sort();
    found
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinTriple;
    use crate::closure::ExhaustiveScan;
    use alloc::vec;

    fn godel_ctx(n: u32, rows: &[Vec<u32>]) -> Context {
        let frame = Arc::new(Frame::with_builtins(n, &[BuiltinTriple::Godel]).unwrap());
        let relation = Matrix::from_rows(n, rows).unwrap();
        let cols = relation.cols();
        Context::anonymous(frame, relation, Sigma::PerObject(vec![0; cols])).unwrap()
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let mut none = 0;
        for_each_combination(2, 3, |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn one_by_one_context() {
        let ctx = godel_ctx(4, &[vec![2]]);
        let lattice = build_concept_lattice(&ctx);
        // Gödel closure on a single cell r=2 keeps g below 2 and sends
        // everything else to top
        let extents: Vec<_> = lattice.extents().map(|e| e.levels()[0]).collect();
        assert_eq!(extents, vec![0, 1, 4]);
        let top = FuzzySet::from_levels(4, vec![4]).unwrap();
        assert!(lattice.position_of_extent(&ctx.object_closure(&top).unwrap()).is_some());
    }

    #[test]
    fn restrict_composes() {
        let ctx = godel_ctx(3, &[vec![1, 2], vec![3, 0], vec![2, 2]]);
        let once = ctx.restrict(&[0, 2]).unwrap().restrict(&[1]).unwrap();
        let direct = ctx.restrict(&[2]).unwrap();
        assert_eq!(once, direct);
        assert_eq!(ctx.restrict(&[0, 1, 2]).unwrap(), ctx);
        assert_eq!(ctx.restrict(&[]), Err(Error::EmptySubset));
        assert!(matches!(ctx.restrict(&[5]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn duplicate_rows_never_share_a_reduct() {
        let ctx = godel_ctx(3, &[vec![1, 2], vec![3, 0], vec![1, 2]]);
        for reduct in enumerate_reducts(&ctx) {
            assert!(!(reduct.contains(&0) && reduct.contains(&2)), "{reduct:?}");
        }
    }

    #[test]
    fn predecessor_of_bottom_is_empty() {
        let ctx = godel_ctx(2, &[vec![1, 2], vec![2, 0]]);
        let lattice = build_concept_lattice(&ctx);
        let bottom = lattice.concepts()[0].extent.clone();
        assert!(lattice.predecessors(&bottom).unwrap().is_empty());
        let stranger = FuzzySet::from_levels(2, vec![0, 0]).unwrap();
        if lattice.position_of_extent(&stranger).is_none() {
            assert_eq!(lattice.predecessors(&stranger), Err(Error::NotAnExtent));
        }
    }

    #[test]
    fn strategies_agree() {
        let ctx = godel_ctx(3, &[vec![1, 2, 0], vec![3, 0, 2], vec![2, 2, 1]]);
        assert_eq!(
            build_concept_lattice_with(&ctx, &ExhaustiveScan),
            build_concept_lattice_with(&ctx, &NextClosure)
        );
    }

    #[test]
    fn index_mismatch_rejected() {
        let ctx = godel_ctx(3, &[vec![1, 2]]);
        let wrong = FuzzySet::from_levels(3, vec![1]).unwrap();
        assert!(matches!(ctx.possibility(&wrong), Err(Error::DimensionMismatch { .. })));
        let other = FuzzySet::from_levels(4, vec![1, 1]).unwrap();
        assert!(matches!(ctx.possibility(&other), Err(Error::GranularityMismatch { .. })));
    }

    #[test]
    fn per_cell_sigma_restriction() {
        let frame = Arc::new(
            Frame::with_builtins(4, &[BuiltinTriple::Godel, BuiltinTriple::SquareLeft]).unwrap(),
        );
        let relation = Matrix::from_rows(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let ctx = Context::anonymous(frame, relation, Sigma::PerCell(vec![0, 1, 1, 0])).unwrap();
        let sub = ctx.restrict(&[1]).unwrap();
        assert_eq!(sub.sigma(), &Sigma::PerCell(vec![1, 0]));
        let cols = ctx.restrict_objects(&[1]).unwrap();
        assert_eq!(cols.sigma(), &Sigma::PerCell(vec![1, 0]));
    }
}
