//! Exact truth values on the regular partition `[0,1]_n` and adjoint triples
//! over that chain.
//!
//! Every value is stored as a numerator over a shared granularity, so the
//! ceilings and floors in the built-in operators are evaluated exactly with
//! integer arithmetic. No floating point is involved anywhere in the crate.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::str::FromStr;

use crate::error::{Error, Result};

/// An element `k/n` of the chain `[0,1]_n`.
#[derive(Debug, Clone, Copy)]
pub struct GranularValue {
    numerator: u32,
    granularity: u32,
}

impl GranularValue {
    pub fn new(numerator: u32, granularity: u32) -> Result<Self> {
        if granularity == 0 {
            return Err(Error::ZeroGranularity);
        }
        if numerator > granularity {
            return Err(Error::OutOfRange {
                numerator,
                granularity,
            });
        }
        Ok(Self {
            numerator,
            granularity,
        })
    }

    pub(crate) const fn from_level(numerator: u32, granularity: u32) -> Self {
        Self {
            numerator,
            granularity,
        }
    }

    pub fn bottom(granularity: u32) -> Result<Self> {
        Self::new(0, granularity)
    }

    pub fn top(granularity: u32) -> Result<Self> {
        Self::new(granularity, granularity)
    }

    pub const fn numerator(self) -> u32 {
        self.numerator
    }

    pub const fn granularity(self) -> u32 {
        self.granularity
    }

    /// The value as a reduced fraction `(p, q)`.
    pub fn to_rational(self) -> (u32, u32) {
        let g = gcd(self.numerator, self.granularity);
        (self.numerator / g, self.granularity / g)
    }

    /// Rebuilds a value of granularity `n` from a fraction. Fails if `p/q`
    /// is not a point of `[0,1]_n`.
    pub fn from_rational(p: u32, q: u32, granularity: u32) -> Result<Self> {
        if q == 0 || granularity == 0 {
            return Err(Error::ZeroGranularity);
        }
        let scaled = u64::from(p) * u64::from(granularity);
        if scaled % u64::from(q) != 0 {
            return Err(Error::GranularityMismatch {
                expected: granularity,
                found: q,
            });
        }
        let k = u32::try_from(scaled / u64::from(q)).map_err(|_| Error::OutOfRange {
            numerator: u32::MAX,
            granularity,
        })?;
        Self::new(k, granularity)
    }

    pub fn meet(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn join(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    fn cross(self, other: Self) -> (u64, u64) {
        (
            u64::from(self.numerator) * u64::from(other.granularity),
            u64::from(other.numerator) * u64::from(self.granularity),
        )
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl PartialEq for GranularValue {
    fn eq(&self, other: &Self) -> bool {
        let (l, r) = self.cross(*other);
        l == r
    }
}

impl Eq for GranularValue {}

impl PartialOrd for GranularValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GranularValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let (l, r) = self.cross(*other);
        l.cmp(&r)
    }
}

impl Hash for GranularValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.to_rational().hash(state);
    }
}

impl fmt::Display for GranularValue {
    /// Decimal rendering. Exact whenever the reduced denominator has only
    /// the prime factors 2 and 5, otherwise rounded to six places.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.to_rational();
        if p == 0 {
            return write!(f, "0");
        }
        if p == q {
            return write!(f, "1");
        }
        let mut rest = q;
        while rest % 2 == 0 {
            rest /= 2;
        }
        while rest % 5 == 0 {
            rest /= 5;
        }
        let mut digits = String::new();
        let mut rem = u64::from(p) * 10;
        let q = u64::from(q);
        let limit = if rest == 1 { usize::MAX } else { 6 };
        while rem != 0 && digits.len() < limit {
            digits.push(char::from(b'0' + (rem / q) as u8));
            rem = (rem % q) * 10;
        }
        write!(f, "0.{digits}")
    }
}

/// The chain `[0,1]_n` with `n + 1` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GranularLattice {
    granularity: u32,
}

impl GranularLattice {
    pub fn new(granularity: u32) -> Result<Self> {
        if granularity == 0 {
            return Err(Error::ZeroGranularity);
        }
        Ok(Self { granularity })
    }

    pub const fn granularity(&self) -> u32 {
        self.granularity
    }

    pub fn bottom(&self) -> GranularValue {
        GranularValue::from_level(0, self.granularity)
    }

    pub fn top(&self) -> GranularValue {
        GranularValue::from_level(self.granularity, self.granularity)
    }

    pub fn value(&self, numerator: u32) -> Result<GranularValue> {
        GranularValue::new(numerator, self.granularity)
    }

    pub fn len(&self) -> usize {
        self.granularity as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> impl Iterator<Item = GranularValue> + '_ {
        (0..=self.granularity).map(move |k| GranularValue::from_level(k, self.granularity))
    }

    pub fn contains(&self, value: GranularValue) -> bool {
        value.granularity == self.granularity
    }
}

/// The built-in triples available by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinTriple {
    /// `x & y = ⌈n·x²·y⌉/n`.
    SquareLeft,
    /// `x & y = ⌈n·x·y²⌉/n`.
    SquareRight,
    /// `x & y = min(x, y)` with the Gödel implication as both residua.
    Godel,
}

impl BuiltinTriple {
    pub const ALL: [BuiltinTriple; 3] = [Self::SquareLeft, Self::SquareRight, Self::Godel];

    pub fn name(self) -> &'static str {
        match self {
            Self::SquareLeft => "sq-left",
            Self::SquareRight => "sq-right",
            Self::Godel => "godel",
        }
    }
}

impl FromStr for BuiltinTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sq-left" => Ok(Self::SquareLeft),
            "sq-right" => Ok(Self::SquareRight),
            "godel" => Ok(Self::Godel),
            other => Err(Error::UnknownTriple(other.to_string())),
        }
    }
}

impl fmt::Display for BuiltinTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Explicit operator tables, indexed by numerators: `conj[x][y]`,
/// `left[z][y]` (the value of `z ↙ y`) and `right[z][x]` (`z ↖ x`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTables {
    pub conj: Vec<Vec<u32>>,
    pub left: Vec<Vec<u32>>,
    pub right: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TripleKind {
    Builtin(BuiltinTriple),
    Table(Box<OperatorTables>),
}

/// A conjunctor `&` together with its residua `↙` and `↖` on `[0,1]_n`.
///
/// In `R ⊙σ X` the coefficient is the conjunctor's first argument; in
/// `X ⊙σ S` the unknown is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointTriple {
    name: String,
    granularity: u32,
    kind: TripleKind,
}

impl AdjointTriple {
    pub fn builtin(kind: BuiltinTriple, granularity: u32) -> Result<Self> {
        if granularity == 0 {
            return Err(Error::ZeroGranularity);
        }
        Ok(Self {
            name: kind.name().to_string(),
            granularity,
            kind: TripleKind::Builtin(kind),
        })
    }

    /// Looks up a built-in triple by its name.
    pub fn by_name(name: &str, granularity: u32) -> Result<Self> {
        Self::builtin(name.parse()?, granularity)
    }

    /// Builds a triple from explicit tables and rejects it unless the
    /// adjunction holds on the whole chain.
    pub fn from_tables(name: &str, granularity: u32, tables: OperatorTables) -> Result<Self> {
        let triple = Self::from_tables_unchecked(name, granularity, tables)?;
        let lattice = GranularLattice::new(granularity)?;
        match verify_adjoint_triple(&triple, &lattice) {
            AdjunctionReport::Holds => Ok(triple),
            AdjunctionReport::Violated(witness) => Err(Error::NotAdjoint {
                name: triple.name,
                witness,
            }),
        }
    }

    /// Builds a triple from tables checking only their shape and range.
    /// Use [`verify_adjoint_triple`] before relying on it.
    pub fn from_tables_unchecked(
        name: &str,
        granularity: u32,
        tables: OperatorTables,
    ) -> Result<Self> {
        if granularity == 0 {
            return Err(Error::ZeroGranularity);
        }
        let side = granularity as usize + 1;
        for table in [&tables.conj, &tables.left, &tables.right] {
            if table.len() != side || table.iter().any(|row| row.len() != side) {
                return Err(Error::TableShape {
                    name: name.to_string(),
                    expected: side,
                });
            }
            if let Some(&bad) = table.iter().flatten().find(|&&v| v > granularity) {
                return Err(Error::OutOfRange {
                    numerator: bad,
                    granularity,
                });
            }
        }
        Ok(Self {
            name: name.to_string(),
            granularity,
            kind: TripleKind::Table(Box::new(tables)),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn granularity(&self) -> u32 {
        self.granularity
    }

    pub fn builtin_kind(&self) -> Option<BuiltinTriple> {
        match self.kind {
            TripleKind::Builtin(kind) => Some(kind),
            TripleKind::Table(_) => None,
        }
    }

    pub fn tables(&self) -> Option<&OperatorTables> {
        match &self.kind {
            TripleKind::Table(tables) => Some(tables),
            TripleKind::Builtin(_) => None,
        }
    }

    /// Materializes all three operators as tables.
    pub fn to_tables(&self) -> OperatorTables {
        let n = self.granularity;
        let build = |op: &dyn Fn(u32, u32) -> u32| {
            (0..=n)
                .map(|a| (0..=n).map(|b| op(a, b)).collect())
                .collect()
        };
        OperatorTables {
            conj: build(&|x, y| self.conj_level(x, y)),
            left: build(&|z, y| self.left_level(z, y)),
            right: build(&|z, x| self.right_level(z, x)),
        }
    }

    /// `x & y` on numerators.
    pub fn conj_level(&self, x: u32, y: u32) -> u32 {
        let n = u64::from(self.granularity);
        match &self.kind {
            TripleKind::Builtin(BuiltinTriple::Godel) => x.min(y),
            TripleKind::Builtin(BuiltinTriple::SquareLeft) => {
                // ⌈n · (x/n)² · (y/n)⌉ = ⌈x²y / n²⌉
                div_ceil(u64::from(x) * u64::from(x) * u64::from(y), n * n)
            }
            TripleKind::Builtin(BuiltinTriple::SquareRight) => {
                div_ceil(u64::from(x) * u64::from(y) * u64::from(y), n * n)
            }
            TripleKind::Table(t) => t.conj[x as usize][y as usize],
        }
    }

    /// `z ↙ y` on numerators: the greatest `x` with `x & y ≤ z`.
    pub fn left_level(&self, z: u32, y: u32) -> u32 {
        match &self.kind {
            TripleKind::Builtin(BuiltinTriple::Godel) => godel_implication(z, y, self.granularity),
            TripleKind::Builtin(BuiltinTriple::SquareLeft) => {
                sqrt_quotient(z, y, self.granularity)
            }
            TripleKind::Builtin(BuiltinTriple::SquareRight) => {
                square_quotient(z, y, self.granularity)
            }
            TripleKind::Table(t) => t.left[z as usize][y as usize],
        }
    }

    /// `z ↖ x` on numerators: the greatest `y` with `x & y ≤ z`.
    pub fn right_level(&self, z: u32, x: u32) -> u32 {
        match &self.kind {
            TripleKind::Builtin(BuiltinTriple::Godel) => godel_implication(z, x, self.granularity),
            TripleKind::Builtin(BuiltinTriple::SquareLeft) => {
                square_quotient(z, x, self.granularity)
            }
            TripleKind::Builtin(BuiltinTriple::SquareRight) => {
                sqrt_quotient(z, x, self.granularity)
            }
            TripleKind::Table(t) => t.right[z as usize][x as usize],
        }
    }

    fn check(&self, a: GranularValue, b: GranularValue) -> Result<()> {
        for v in [a, b] {
            if v.granularity != self.granularity {
                return Err(Error::GranularityMismatch {
                    expected: self.granularity,
                    found: v.granularity,
                });
            }
        }
        Ok(())
    }

    pub fn apply_conj(&self, x: GranularValue, y: GranularValue) -> Result<GranularValue> {
        self.check(x, y)?;
        Ok(GranularValue::from_level(
            self.conj_level(x.numerator, y.numerator),
            self.granularity,
        ))
    }

    pub fn apply_left_residuum(&self, z: GranularValue, y: GranularValue) -> Result<GranularValue> {
        self.check(z, y)?;
        Ok(GranularValue::from_level(
            self.left_level(z.numerator, y.numerator),
            self.granularity,
        ))
    }

    pub fn apply_right_residuum(
        &self,
        z: GranularValue,
        x: GranularValue,
    ) -> Result<GranularValue> {
        self.check(z, x)?;
        Ok(GranularValue::from_level(
            self.right_level(z.numerator, x.numerator),
            self.granularity,
        ))
    }
}

fn div_ceil(num: u64, den: u64) -> u32 {
    num.div_ceil(den) as u32
}

fn godel_implication(z: u32, x: u32, n: u32) -> u32 {
    if x <= z {
        n
    } else {
        z
    }
}

/// `min{⌊n·z/x²⌋/n, 1}` on numerators, `1` when `x = 0`.
fn square_quotient(z: u32, x: u32, n: u32) -> u32 {
    if x == 0 {
        return n;
    }
    let n64 = u64::from(n);
    let q = u64::from(z) * n64 * n64 / (u64::from(x) * u64::from(x));
    q.min(n64) as u32
}

/// `min{⌊n·√(z/x)⌋/n, 1}` on numerators, `1` when `x = 0`: the largest `k`
/// with `k²·x ≤ n²·z`.
fn sqrt_quotient(z: u32, x: u32, n: u32) -> u32 {
    if x == 0 {
        return n;
    }
    let n64 = u64::from(n);
    let bound = u64::from(z) * n64 * n64 / u64::from(x);
    let k = bound.isqrt();
    k.min(n64) as u32
}

/// A point `(x, y, z)` where the three-way adjunction equivalence fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjunctionWitness {
    pub x: u32,
    pub y: u32,
    pub z: u32,
    /// `x ≤ z ↙ y`
    pub via_left: bool,
    /// `x & y ≤ z`
    pub via_conj: bool,
    /// `y ≤ z ↖ x`
    pub via_right: bool,
}

impl fmt::Display for AdjunctionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={}, y={}, z={} (x<=z/y: {}, x&y<=z: {}, y<=z\\x: {})",
            self.x, self.y, self.z, self.via_left, self.via_conj, self.via_right
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjunctionReport {
    Holds,
    Violated(AdjunctionWitness),
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        matches!(self, AdjunctionReport::Holds)
    }
}

/// Exhaustively checks `x ≤ z↙y ⇔ x&y ≤ z ⇔ y ≤ z↖x` over the chain and
/// reports the first violating triple in lexicographic `(x, y, z)` order.
pub fn verify_adjoint_triple(triple: &AdjointTriple, lattice: &GranularLattice) -> AdjunctionReport {
    let n = lattice.granularity();
    if triple.granularity() != n {
        return AdjunctionReport::Violated(AdjunctionWitness {
            x: 0,
            y: 0,
            z: 0,
            via_left: false,
            via_conj: false,
            via_right: false,
        });
    }
    for x in 0..=n {
        for y in 0..=n {
            let conj = triple.conj_level(x, y);
            for z in 0..=n {
                let via_left = x <= triple.left_level(z, y);
                let via_conj = conj <= z;
                let via_right = y <= triple.right_level(z, x);
                if via_left != via_conj || via_conj != via_right {
                    return AdjunctionReport::Violated(AdjunctionWitness {
                        x,
                        y,
                        z,
                        via_left,
                        via_conj,
                        via_right,
                    });
                }
            }
        }
    }
    AdjunctionReport::Holds
}

/// A chain `[0,1]_n` equipped with an indexed family of adjoint triples.
///
/// The same frame serves both the property-oriented and the
/// object-oriented constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    lattice: GranularLattice,
    triples: Vec<AdjointTriple>,
}

impl Frame {
    pub fn new(lattice: GranularLattice, triples: Vec<AdjointTriple>) -> Result<Self> {
        for triple in &triples {
            if triple.granularity() != lattice.granularity() {
                return Err(Error::GranularityMismatch {
                    expected: lattice.granularity(),
                    found: triple.granularity(),
                });
            }
            if let AdjunctionReport::Violated(witness) = verify_adjoint_triple(triple, &lattice) {
                return Err(Error::NotAdjoint {
                    name: triple.name().to_string(),
                    witness,
                });
            }
        }
        Ok(Self { lattice, triples })
    }

    /// A frame made of built-in triples.
    pub fn with_builtins(granularity: u32, kinds: &[BuiltinTriple]) -> Result<Self> {
        let lattice = GranularLattice::new(granularity)?;
        let triples = kinds
            .iter()
            .map(|&k| AdjointTriple::builtin(k, granularity))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, triples)
    }

    pub fn lattice(&self) -> GranularLattice {
        self.lattice
    }

    pub fn granularity(&self) -> u32 {
        self.lattice.granularity()
    }

    pub fn triples(&self) -> &[AdjointTriple] {
        &self.triples
    }

    pub fn triple(&self, index: usize) -> Result<&AdjointTriple> {
        self.triples.get(index).ok_or(Error::SigmaOutOfRange {
            index,
            triples: self.triples.len(),
        })
    }
}
