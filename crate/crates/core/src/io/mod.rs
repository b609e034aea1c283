//! Text formats: the input document, configuration and polynomial documents,
//! CSV tables and SVG diagrams. All writers are deterministic.

mod document;
mod input;
mod plot;

use thiserror::Error;

use crate::complex::Violation;

pub use document::{
    parse_config_document, parse_polynomial_document, write_config_document, write_polynomial_document, ConfigDocument, DegreeSection,
};
pub use input::{parse_input, write_input, InputDocument};
pub use plot::{emit_diagram, write_csv, Diagram, PlotStyle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {p} is not a prime below 2^31")]
    NotPrime { line: usize, p: u64 },
    #[error("line {line}: vertex {vertex} out of range (the document declares {n_vertices} vertices)")]
    VertexIndex {
        line: usize,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("missing `vertices` line")]
    MissingVertices,
    #[error("no `values` line")]
    NoFunction,
    #[error("invalid complex: {0}")]
    Complex(#[from] Violation),
}
