//! Isotone Galois connections between `[0,1]_n`-valued fuzzy sets, their
//! closed-set lattices, and neighbour computations.
//!
//! Both the property-oriented connection of a context and the
//! object-oriented one used for the dual equations are instances of
//! [`GaloisConnection`]. The lattice of closed sets on the source side is
//! what the equation solvers walk.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::relation::leq;

/// An isotone Galois connection `forward ⊣ backward` between `L^S` (the
/// source, where the unknowns live) and `L^T` (the target, where the
/// right-hand sides live):
///
/// `s ≤ backward(t)  ⇔  forward(s) ≤ t`.
///
/// Vectors are numerators on the shared granularity.
pub trait GaloisConnection {
    fn granularity(&self) -> u32;
    fn source_len(&self) -> usize;
    fn target_len(&self) -> usize;
    fn forward(&self, source: &[u32]) -> Vec<u32>;
    fn backward(&self, target: &[u32]) -> Vec<u32>;

    /// `backward ∘ forward`: inflationary, idempotent, isotone on `L^S`.
    fn closure(&self, source: &[u32]) -> Vec<u32> {
        self.backward(&self.forward(source))
    }

    /// `forward ∘ backward`: deflationary, idempotent, isotone on `L^T`.
    fn interior(&self, target: &[u32]) -> Vec<u32> {
        self.forward(&self.backward(target))
    }
}

/// A way of listing every closed set of a connection's source side.
pub trait ClosedSetEnumerator {
    /// All closed sets, each exactly once, in lexicographic order of their
    /// numerator vectors (a linear extension of the pointwise order).
    fn closed_sets(&self, conn: &dyn GaloisConnection) -> Vec<Vec<u32>>;
}

/// Closes every one of the `(n+1)^|S|` source vectors. Only practical for
/// tiny inputs; kept as an independent reference for [`NextClosure`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ExhaustiveScan;

impl ClosedSetEnumerator for ExhaustiveScan {
    fn closed_sets(&self, conn: &dyn GaloisConnection) -> Vec<Vec<u32>> {
        let n = conn.granularity();
        let bounds = vec![n; conn.source_len()];
        let mut seen = BTreeSet::new();
        for_each_below(&bounds, |candidate| {
            seen.insert(conn.closure(candidate));
        });
        seen.into_iter().collect()
    }
}

/// Ganter's NextClosure generalized to chain-valued sets: closed sets are
/// generated in lectic order, one closure evaluation per tested step.
#[derive(Debug, Clone, Copy, Default)]
pub struct NextClosure;

impl NextClosure {
    /// The lectically next closed set after `current`, if any.
    pub fn next(conn: &dyn GaloisConnection, current: &[u32]) -> Option<Vec<u32>> {
        let n = conn.granularity();
        let mut probe = vec![0; current.len()];
        for i in (0..current.len()).rev() {
            for level in current[i] + 1..=n {
                probe[..i].copy_from_slice(&current[..i]);
                probe[i] = level;
                probe[i + 1..].iter_mut().for_each(|x| *x = 0);
                let closed = conn.closure(&probe);
                if closed[..i] == current[..i] {
                    return Some(closed);
                }
            }
        }
        None
    }
}

impl ClosedSetEnumerator for NextClosure {
    fn closed_sets(&self, conn: &dyn GaloisConnection) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut current = conn.closure(&vec![0; conn.source_len()]);
        loop {
            let next = Self::next(conn, &current);
            out.push(current);
            match next {
                Some(next) => current = next,
                None => break,
            }
        }
        out
    }
}

/// Closed sets directly above `closed`. Every upper cover is the closure of
/// `closed` raised by one step in some coordinate, so the covers are the
/// minimal distinct such closures.
pub fn upper_covers(conn: &dyn GaloisConnection, closed: &[u32]) -> Vec<Vec<u32>> {
    let n = conn.granularity();
    let mut candidates = BTreeSet::new();
    let mut probe = closed.to_vec();
    for i in 0..closed.len() {
        if closed[i] < n {
            probe[i] += 1;
            candidates.insert(conn.closure(&probe));
            probe[i] -= 1;
        }
    }
    extremal(candidates.into_iter().collect(), leq)
}

/// Closed sets directly below `closed`. Lowering one coordinate of the
/// matching target-side open set by one step and mapping back with
/// `backward` produces every lower cover; the covers are the maximal
/// distinct results.
pub fn lower_covers(conn: &dyn GaloisConnection, closed: &[u32]) -> Vec<Vec<u32>> {
    let mut open = conn.forward(closed);
    let mut candidates = BTreeSet::new();
    for i in 0..open.len() {
        if open[i] > 0 {
            open[i] -= 1;
            candidates.insert(conn.backward(&open));
            open[i] += 1;
        }
    }
    extremal(candidates.into_iter().collect(), |a, b| leq(b, a))
}

/// Elements of `items` not strictly above another element under `below`.
fn extremal(items: Vec<Vec<u32>>, below: impl Fn(&[u32], &[u32]) -> bool) -> Vec<Vec<u32>> {
    items
        .iter()
        .filter(|x| !items.iter().any(|y| y != *x && below(y, x)))
        .cloned()
        .collect()
}

/// The closed sets of a connection with their cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSetLattice {
    elements: Vec<Vec<u32>>,
    covers: Vec<(usize, usize)>,
    index: BTreeMap<Vec<u32>, usize>,
}

impl ClosedSetLattice {
    pub fn build(conn: &dyn GaloisConnection, enumerator: &dyn ClosedSetEnumerator) -> Self {
        let mut elements = enumerator.closed_sets(conn);
        elements.sort();
        elements.dedup();
        let index: BTreeMap<Vec<u32>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut covers = Vec::new();
        for (lower, element) in elements.iter().enumerate() {
            for up in upper_covers(conn, element) {
                let upper = index[&up];
                covers.push((lower, upper));
            }
        }
        covers.sort_unstable();
        Self {
            elements,
            covers,
            index,
        }
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(lower, upper)` index pairs of the Hasse diagram.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn position(&self, element: &[u32]) -> Option<usize> {
        self.index.get(element).copied()
    }

    pub fn lower_covers_of(&self, position: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers
            .iter()
            .filter(move |&&(_, upper)| upper == position)
            .map(|&(lower, _)| lower)
    }

    pub fn upper_covers_of(&self, position: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers
            .iter()
            .filter(move |&&(lower, _)| lower == position)
            .map(|&(_, upper)| upper)
    }
}

/// Calls `f` on every vector `x` with `0 ≤ x ≤ bounds`, in lexicographic
/// order.
pub fn for_each_below(bounds: &[u32], mut f: impl FnMut(&[u32])) {
    let mut x = vec![0u32; bounds.len()];
    loop {
        f(&x);
        let mut i = x.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
}

/// Number of vectors below `bounds`, saturating.
pub fn box_size(bounds: &[u32]) -> u128 {
    bounds
        .iter()
        .fold(1u128, |acc, &b| acc.saturating_mul(u128::from(b) + 1))
}
