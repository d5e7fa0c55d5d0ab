//! Exact linear algebra over ℚ or a prime field.
//!
//! Everything downstream (boundary operators, Ω-spaces, persistence
//! reduction) reduces to the handful of primitives here: rank, kernel bases,
//! subspace intersection, and flag-adapted bases of nested subspaces.  All
//! pivoting is "first nonzero entry", so results are bit-for-bit
//! reproducible.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{format_rational, parse_rational, Scalar, ScalarMode};
pub use subspace::{flag_adapted_basis, intersect, FlagBasis, SubspaceBasis};

pub(crate) use subspace::Sifter;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus {0} is not a prime in the supported range [2, 2^31)")]
    NotPrime(u64),
    #[error("scalar mode mismatch: {0:?} vs {1:?}")]
    ModeMismatch(ScalarMode, ScalarMode),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vectors are not linearly independent")]
    DependentVectors,
    #[error("flag is not nested at member {0}")]
    NotNested(usize),
    #[error("flag has no members")]
    EmptyFlag,
    #[error("not a valid rational literal: {0:?}")]
    BadRational(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
}
