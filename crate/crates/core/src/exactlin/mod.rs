//! Exact linear algebra over ℚ and prime fields 𝔽_p.
//!
//! Everything here is exact: rationals are arbitrary precision and kept
//! normalized, residues are reduced into `[0, p)`. Rank, kernels and
//! determinants are therefore decided without tolerances.

mod det;
mod field;
pub mod json;
mod matrix;
mod perm;

use thiserror::Error;

pub use det::{det_elimination, det_permutation_sum, PERMUTATION_SUM_MAX};
pub use field::{field_inverse, Elem, FieldSpec, Prime};
pub use matrix::{kernel_basis, rank, rref, solve, ExactMatrix, RrefResult, SolutionSet};
pub use perm::{permutation_sign, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("element does not belong to the matrix field")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("size {size} exceeds the limit {max}")]
    TooLarge { size: usize, max: usize },
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("parse error: {0}")]
    Parse(String),
}
