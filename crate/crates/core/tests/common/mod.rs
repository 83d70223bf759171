//! Instances shared by the integration tests, all on `[0,1]_8`.
#![allow(dead_code)]

use std::sync::Arc;

use frelat_core::{BuiltinTriple, Frame, FreInstance, FuzzySet, Matrix};

pub const N: u32 = 8;

/// Two squared conjunctors: index 0 squares the first argument, index 1 the
/// second.
pub fn squares_frame() -> Arc<Frame> {
    Arc::new(Frame::with_builtins(N, &[BuiltinTriple::SquareLeft, BuiltinTriple::SquareRight]).unwrap())
}

pub fn godel_frame() -> Arc<Frame> {
    Arc::new(Frame::with_builtins(N, &[BuiltinTriple::Godel]).unwrap())
}

pub fn squares_coefficients() -> Matrix {
    Matrix::from_rows(
        N,
        &[
            vec![6, 4, 0, 4, 4],
            vec![4, 2, 2, 6, 8],
            vec![6, 4, 1, 0, 3],
            vec![6, 4, 0, 4, 4],
            vec![6, 4, 1, 0, 4],
        ],
    )
    .unwrap()
}

pub const SQUARES_SIGMA: [usize; 5] = [0, 0, 1, 0, 1];

fn column(levels: &[u32]) -> Matrix {
    Matrix::from_rows(N, &levels.iter().map(|&k| vec![k]).collect::<Vec<_>>()).unwrap()
}

pub fn set(levels: &[u32]) -> FuzzySet {
    FuzzySet::from_levels(N, levels.to_vec()).unwrap()
}

pub fn col(levels: &[u32]) -> Matrix {
    column(levels)
}

/// The solvable five-by-five system with mixed squared conjunctors.
pub fn solvable_squares() -> FreInstance {
    FreInstance::anonymous(
        squares_frame(),
        squares_coefficients(),
        SQUARES_SIGMA.to_vec(),
        column(&[2, 4, 0, 2, 0]),
    )
    .unwrap()
}

/// Same coefficients, right-hand side perturbed into an unsolvable system.
pub fn unsolvable_squares() -> FreInstance {
    solvable_squares().with_rhs(column(&[4, 7, 3, 5, 1])).unwrap()
}

/// Max-min system. `entry` is the coefficient in the first row, fourth
/// column, which sits between grid points in the source; both neighbours
/// give the same results.
pub fn max_min_with(entry: u32) -> FreInstance {
    let r = Matrix::from_rows(
        N,
        &[
            vec![4, 2, 6, entry, 2],
            vec![2, 4, 6, 4, 3],
            vec![1, 4, 6, 4, 4],
            vec![2, 4, 4, 4, 3],
            vec![4, 2, 6, 4, 2],
        ],
    )
    .unwrap();
    FreInstance::anonymous(godel_frame(), r, vec![0; 5], column(&[4, 3, 3, 3, 4])).unwrap()
}

pub fn max_min() -> FreInstance {
    max_min_with(5)
}

pub mod random;
