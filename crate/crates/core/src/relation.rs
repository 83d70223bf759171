//! Fuzzy sets over an index set and fuzzy relations (matrices) on `[0,1]_n`.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::GranularValue;
use crate::error::{Error, Result};

/// A map from an ordered index set into `[0,1]_n`. Index names live with the
/// owning context; a fuzzy set only carries its values in index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzySet {
    granularity: u32,
    levels: Vec<u32>,
}

impl FuzzySet {
    pub fn new(values: &[GranularValue]) -> Result<Self> {
        let granularity = values.first().map_or(1, |v| v.granularity());
        let mut levels = Vec::with_capacity(values.len());
        for v in values {
            if v.granularity() != granularity {
                return Err(Error::GranularityMismatch {
                    expected: granularity,
                    found: v.granularity(),
                });
            }
            levels.push(v.numerator());
        }
        Ok(Self {
            granularity,
            levels,
        })
    }

    pub fn from_levels(granularity: u32, levels: Vec<u32>) -> Result<Self> {
        if granularity == 0 {
            return Err(Error::ZeroGranularity);
        }
        if let Some(&bad) = levels.iter().find(|&&k| k > granularity) {
            return Err(Error::OutOfRange {
                numerator: bad,
                granularity,
            });
        }
        Ok(Self {
            granularity,
            levels,
        })
    }

    pub(crate) fn from_levels_unchecked(granularity: u32, levels: Vec<u32>) -> Self {
        debug_assert!(levels.iter().all(|&k| k <= granularity));
        Self {
            granularity,
            levels,
        }
    }

    pub fn constant(granularity: u32, len: usize, numerator: u32) -> Result<Self> {
        Self::from_levels(granularity, alloc::vec![numerator; len])
    }

    pub fn granularity(&self) -> u32 {
        self.granularity
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn into_levels(self) -> Vec<u32> {
        self.levels
    }

    pub fn get(&self, index: usize) -> Option<GranularValue> {
        self.levels
            .get(index)
            .map(|&k| GranularValue::from_level(k, self.granularity))
    }

    pub fn values(&self) -> impl Iterator<Item = GranularValue> + '_ {
        self.levels
            .iter()
            .map(move |&k| GranularValue::from_level(k, self.granularity))
    }

    /// Pointwise order.
    pub fn is_subset_of(&self, other: &FuzzySet) -> bool {
        self.len() == other.len() && leq(&self.levels, &other.levels)
    }

    pub fn meet(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, u32::min)
    }

    pub fn join(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.zip_with(other, u32::max)
    }

    fn zip_with(&self, other: &FuzzySet, op: fn(u32, u32) -> u32) -> Result<FuzzySet> {
        if self.granularity != other.granularity {
            return Err(Error::GranularityMismatch {
                expected: self.granularity,
                found: other.granularity,
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                what: "fuzzy set length",
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self {
            granularity: self.granularity,
            levels: self
                .levels
                .iter()
                .zip(&other.levels)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A fuzzy relation stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    granularity: u32,
    rows: usize,
    cols: usize,
    levels: Vec<u32>,
}

impl Matrix {
    pub fn from_levels(granularity: u32, rows: usize, cols: usize, levels: Vec<u32>) -> Result<Self> {
        if granularity == 0 {
            return Err(Error::ZeroGranularity);
        }
        if levels.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "matrix entries",
                expected: rows * cols,
                found: levels.len(),
            });
        }
        if let Some(&bad) = levels.iter().find(|&&k| k > granularity) {
            return Err(Error::OutOfRange {
                numerator: bad,
                granularity,
            });
        }
        Ok(Self {
            granularity,
            rows,
            cols,
            levels,
        })
    }

    /// Builds a matrix from nested rows of numerators.
    pub fn from_rows(granularity: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut levels = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "matrix row length",
                    expected: cols,
                    found: row.len(),
                });
            }
            levels.extend_from_slice(row);
        }
        Self::from_levels(granularity, rows.len(), cols, levels)
    }

    /// Builds a matrix whose columns are the given fuzzy sets.
    pub fn from_columns(granularity: u32, rows: usize, columns: &[FuzzySet]) -> Result<Self> {
        let cols = columns.len();
        let mut levels = alloc::vec![0; rows * cols];
        for (c, column) in columns.iter().enumerate() {
            if column.len() != rows {
                return Err(Error::DimensionMismatch {
                    what: "column length",
                    expected: rows,
                    found: column.len(),
                });
            }
            if column.granularity() != granularity {
                return Err(Error::GranularityMismatch {
                    expected: granularity,
                    found: column.granularity(),
                });
            }
            for (r, &k) in column.levels().iter().enumerate() {
                levels[r * cols + c] = k;
            }
        }
        Self::from_levels(granularity, rows, cols, levels)
    }

    pub fn granularity(&self) -> u32 {
        self.granularity
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn level(&self, row: usize, col: usize) -> u32 {
        self.levels[row * self.cols + col]
    }

    pub fn get(&self, row: usize, col: usize) -> GranularValue {
        GranularValue::from_level(self.level(row, col), self.granularity)
    }

    pub fn row_levels(&self, row: usize) -> &[u32] {
        &self.levels[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row(&self, row: usize) -> FuzzySet {
        FuzzySet::from_levels_unchecked(self.granularity, self.row_levels(row).to_vec())
    }

    pub fn column(&self, col: usize) -> FuzzySet {
        FuzzySet::from_levels_unchecked(
            self.granularity,
            (0..self.rows).map(|r| self.level(r, col)).collect(),
        )
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row_levels(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut levels = Vec::with_capacity(self.levels.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                levels.push(self.level(r, c));
            }
        }
        Matrix {
            granularity: self.granularity,
            rows: self.cols,
            cols: self.rows,
            levels,
        }
    }

    /// Keeps the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Matrix> {
        let mut levels = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    len: self.rows,
                });
            }
            levels.extend_from_slice(self.row_levels(r));
        }
        Ok(Matrix {
            granularity: self.granularity,
            rows: rows.len(),
            cols: self.cols,
            levels,
        })
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_cols(&self, cols: &[usize]) -> Result<Matrix> {
        Ok(self.transpose().select_rows(cols)?.transpose())
    }

    pub fn is_subset_of(&self, other: &Matrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && leq(&self.levels, &other.levels)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}
