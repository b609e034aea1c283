use std::collections::BTreeSet;

use num::One;

use super::{ComplexError, SimplicialComplex};
use crate::value::Value;

/// Values on the vertices; the function on the complex is their linear
/// interpolation over each simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexFunction {
    values: Vec<Value>,
}

impl VertexFunction {
    pub fn new(k: &SimplicialComplex, values: Vec<Value>) -> Result<Self, ComplexError> {
        if values.len() != k.n_vertices() {
            return Err(ComplexError::ValueCount {
                expected: k.n_vertices(),
                got: values.len(),
            });
        }
        Ok(VertexFunction { values })
    }

    /// Wraps values without checking against a complex.
    pub fn from_values(values: Vec<Value>) -> Self {
        VertexFunction { values }
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn value(&self, v: usize) -> &Value {
        &self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sup-norm distance to another function on the same vertices. For two
    /// PL functions the difference is PL, so the sup over the complex is
    /// attained at a vertex.
    pub fn sup_distance(&self, other: &Self) -> Value {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| crate::value::abs_diff(a, b))
            .max()
            .unwrap_or_default()
    }
}

/// A subcomplex together with the map from its vertex indices to those of
/// the ambient complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcomplex {
    pub complex: SimplicialComplex,
    pub relabel: Vec<usize>,
}

/// The full subcomplex on `{v : f(v) <= a}`, our model of `f^{-1}(-inf, a]`.
pub fn sublevel_subcomplex(k: &SimplicialComplex, f: &VertexFunction, a: &Value) -> Subcomplex {
    let (complex, relabel) = k.full_subcomplex(|v| f.value(v) <= a);
    Subcomplex { complex, relabel }
}

/// The full subcomplex on `{v : f(v) >= b}`.
pub fn superlevel_subcomplex(k: &SimplicialComplex, f: &VertexFunction, b: &Value) -> Subcomplex {
    let (complex, relabel) = k.full_subcomplex(|v| f.value(v) >= b);
    Subcomplex { complex, relabel }
}

/// Sorted distinct vertex values `c_1 < ... < c_N` with sentinels
/// `c_0 = c_1 - 1` and `c_{N+1} = c_N + 1`.
///
/// Positions are addressed in the extended range `0..=N+1`; position 0 is the
/// low sentinel and `N+1` the high one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CriticalGrid {
    values: Vec<Value>,
}

pub fn critical_grid(k: &SimplicialComplex, f: &VertexFunction) -> Result<CriticalGrid, ComplexError> {
    if k.is_empty() {
        return Err(ComplexError::Empty);
    }
    let distinct: BTreeSet<&Value> = (0..k.n_vertices()).map(|v| f.value(v)).collect();
    Ok(CriticalGrid {
        values: distinct.into_iter().cloned().collect(),
    })
}

impl CriticalGrid {
    /// Number of genuine grid values `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn low_sentinel(&self) -> Value {
        &self.values[0] - Value::one()
    }

    pub fn high_sentinel(&self) -> Value {
        self.values.last().unwrap() + Value::one()
    }

    /// Number of positions including sentinels, `N + 2`.
    pub fn extended_len(&self) -> usize {
        self.values.len() + 2
    }

    /// Value at an extended position.
    pub fn at(&self, i: usize) -> Value {
        match i {
            0 => self.low_sentinel(),
            i if i <= self.len() => self.values[i - 1].clone(),
            i if i == self.len() + 1 => self.high_sentinel(),
            _ => panic!("grid position {i} out of range"),
        }
    }

    /// Extended position of `v`, if it is a grid value or a sentinel.
    pub fn position(&self, v: &Value) -> Option<usize> {
        if *v == self.low_sentinel() {
            return Some(0);
        }
        if *v == self.high_sentinel() {
            return Some(self.len() + 1);
        }
        self.values.binary_search(v).ok().map(|i| i + 1)
    }

    pub fn extended_values(&self) -> Vec<Value> {
        (0..self.extended_len()).map(|i| self.at(i)).collect()
    }

    /// Smallest gap between consecutive grid values; `None` when `N = 1`.
    pub fn min_gap(&self) -> Option<Value> {
        self.values.windows(2).map(|w| &w[1] - &w[0]).min()
    }
}
