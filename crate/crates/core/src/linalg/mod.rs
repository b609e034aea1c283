//! Exact linear algebra over GF(p) and Q.

pub mod field;
pub mod matrix;
pub mod subspace;

use thiserror::Error;

pub use field::{Field, FieldSpec, FieldVisitor, PrimeField, Rationals};
pub use matrix::{left_inverse, rank, rref, Matrix, Rref};
pub use subspace::{image, intersect, kernel, orth_complement, quotient_basis, sum, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("ambient dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("orthogonal complements need the rationals, not {0}")]
    NoInnerProduct(FieldSpec),
}
