//! Refined Betti numbers and refined homology of a finite simplicial complex
//! carrying a piecewise-linear function, computed exactly over GF(p) or Q.
//!
//! For each degree `r` the crate computes a finite configuration of plane
//! points `(a, b)` with multiplicities whose total mass is the Betti number
//! `b_r`, together with representative homology classes for each point.

pub mod complex;
pub mod config;
pub mod exec;
pub mod io;
pub mod linalg;
pub mod persistence;
pub mod value;
pub mod verify;

pub use complex::{SimplicialComplex, VertexFunction};
pub use config::{Configuration, PlanePoint};
pub use exec::Exec;
pub use linalg::{Field, FieldSpec, PrimeField, Rationals};
pub use value::Value;
