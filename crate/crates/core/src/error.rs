use thiserror::Error;

use crate::combinatorics::MultiIndex;

/// Errors raised by the double-form algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {0} is out of range (supported: 0..={max})", max = crate::MAX_DIM)]
    DimensionOutOfRange(usize),

    #[error("invalid multi-index {indices:?} for n = {n}: {reason}")]
    InvalidIndex {
        indices: Vec<usize>,
        n: usize,
        reason: &'static str,
    },

    #[error("entry {entry}: {source}")]
    InvalidEntry {
        entry: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("expected a double form of bidegree ({expected_p},{expected_q}), found bidegrees {found:?}")]
    WrongBidegree {
        expected_p: usize,
        expected_q: usize,
        found: Vec<(usize, usize)>,
    },

    #[error("expected a square bidegree (p,p), found {found:?}")]
    NotSquare { found: Vec<(usize, usize)> },

    #[error("{what} = {value} is out of range ({range})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },

    #[error("matrix has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("basis is not orthonormal: B^T B differs from the identity at ({row},{col})")]
    NotOrthonormal { row: usize, col: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("double form is not symmetric (coefficient at {row} x {col} differs from its transpose)")]
    NotSymmetric { row: MultiIndex, col: MultiIndex },

    #[error("double form violates the first Bianchi identity ({terms} nonzero terms in its Bianchi image)")]
    NotBianchi { terms: usize },

    #[error("asymmetric coefficient map: ({i},{j}) and ({j},{i}) differ")]
    AsymmetricCoefficients { i: usize, j: usize },

    #[error("total degree 4k = {degree} exceeds the dimension n = {n}")]
    DegreeOverflow { degree: usize, n: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
