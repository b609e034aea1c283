//! Sublevel/superlevel image subspaces, the bi-filtered spaces `F(a, b)`,
//! box spaces, and the refined configurations built from them.
//!
//! Notation used throughout: for a grid value `a`, `I_a` is the image of
//! `H_r(X_a) -> H_r(X)` where `X_a` is the sublevel `f <= a`; for `b`, `I^b` is
//! the image from the superlevel `f >= b`; and `F(a, b) = I_a ∩ I^b`. For a
//! box `(a', a] x [b, b')` the box space is `F(a, b) / (F(a', b) + F(a, b'))`.

mod delta;
mod oracle;
mod table;

use std::collections::BTreeMap;

use num::BigRational;
use thiserror::Error;

use crate::complex::ComplexError;
use crate::config::{Configuration, PlanePoint};
use crate::linalg::{LinalgError, Subspace};
use crate::value::{format_value, Value};

pub use delta::{
    compute_delta, compute_hat_delta, compute_ortho_delta, delta_from_ftable, hat_delta_from_ftable,
    ortho_delta_from_ftable, refine, Refinement,
};
pub use oracle::{oracle_delta_stabilization, ORACLE_REFINEMENTS};
pub use table::{
    build_image_table, build_image_table_with, compute_f, compute_f_box_dim, compute_g_box_dim, FTable,
    ImageTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PersistenceError {
    #[error("{} is not a grid value or sentinel", format_value(.0))]
    OffGrid(Value),
    #[error("box needs a' < a and b < b', got ({}, {}] x [{}, {})", format_value(&.0.a_lo), format_value(&.0.a_hi), format_value(&.0.b_lo), format_value(&.0.b_hi))]
    BadBox(Box<PlaneBox>),
    #[error("shrinking boxes at {point} gave {values:?}, which does not stabilize")]
    NoStabilization { point: PlanePoint, values: Vec<usize> },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The half-open rectangle `(a_lo, a_hi] x [b_lo, b_hi)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneBox {
    pub a_lo: Value,
    pub a_hi: Value,
    pub b_lo: Value,
    pub b_hi: Value,
}

impl PlaneBox {
    pub fn new(a_lo: Value, a_hi: Value, b_lo: Value, b_hi: Value) -> Result<Self, PersistenceError> {
        let bx = PlaneBox { a_lo, a_hi, b_lo, b_hi };
        if bx.a_lo < bx.a_hi && bx.b_lo < bx.b_hi {
            Ok(bx)
        } else {
            Err(PersistenceError::BadBox(Box::new(bx)))
        }
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.a_lo < p.a && p.a <= self.a_hi && self.b_lo <= p.b && p.b < self.b_hi
    }
}

/// Representative vectors (in `H_r(X)` coordinates) for the quotient space
/// at each support point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorConfiguration<E> {
    pub degree: usize,
    pub entries: BTreeMap<PlanePoint, Vec<Vec<E>>>,
}

impl<E: Clone> VectorConfiguration<E> {
    pub fn dims(&self) -> Configuration {
        self.entries.iter().map(|(p, v)| (p.clone(), v.len())).collect()
    }

    /// All representatives, support points in lexicographic order.
    pub fn concatenated(&self) -> Vec<Vec<E>> {
        self.entries.values().flatten().cloned().collect()
    }
}

/// The orthogonal refinement over Q: at each support point the orthogonal
/// complement of the lower corner sum inside `F(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoConfiguration {
    pub degree: usize,
    pub ambient_dim: usize,
    pub entries: BTreeMap<PlanePoint, Subspace<BigRational>>,
}

impl OrthoConfiguration {
    pub fn dims(&self) -> Configuration {
        self.entries.iter().map(|(p, s)| (p.clone(), s.dim())).collect()
    }
}
