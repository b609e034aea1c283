//! Finite simplicial complexes, vertex functions and their homology.

mod function;
mod homology;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::linalg::{Field, Matrix};

pub use function::{
    critical_grid, sublevel_subcomplex, superlevel_subcomplex, CriticalGrid, Subcomplex,
    VertexFunction,
};
pub use homology::{
    detect_homological_cr, homology_basis, image_in_whole, induced_homology_map,
    induced_map_with, HomologyBasis,
};

/// A simplex as a strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

/// The first problem found while validating a simplex list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("empty simplex")]
    EmptySimplex,
    #[error("simplex {0:?} is not strictly increasing")]
    Unsorted(Simplex),
    #[error("simplex {simplex:?} uses vertex {vertex} but there are only {n_vertices} vertices")]
    VertexOutOfRange {
        simplex: Simplex,
        vertex: usize,
        n_vertices: usize,
    },
    #[error("simplex {0:?} is listed twice")]
    Duplicate(Simplex),
    #[error("face {face:?} of {simplex:?} is missing")]
    MissingFace { simplex: Simplex, face: Simplex },
    #[error("vertex {0} is not listed as a 0-simplex")]
    MissingVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    Invalid(#[from] Violation),
    #[error("function has {got} values but the complex has {expected} vertices")]
    ValueCount { expected: usize, got: usize },
    #[error("the complex is empty")]
    Empty,
    #[error("relabeling is not a simplicial injection: {0}")]
    BadRelabel(String),
}

/// Checks face closure, sortedness and uniqueness, reporting the first violation.
pub fn validate(n_vertices: usize, simplices: &[Simplex]) -> Result<(), Violation> {
    let mut seen = BTreeSet::new();
    for s in simplices {
        if s.is_empty() {
            return Err(Violation::EmptySimplex);
        }
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Violation::Unsorted(s.clone()));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= n_vertices) {
            return Err(Violation::VertexOutOfRange {
                simplex: s.clone(),
                vertex: v,
                n_vertices,
            });
        }
        if !seen.insert(s.as_slice()) {
            return Err(Violation::Duplicate(s.clone()));
        }
    }
    for s in simplices {
        if s.len() < 2 {
            continue;
        }
        for i in 0..s.len() {
            let face = facet_without(s, i);
            if !seen.contains(face.as_slice()) {
                return Err(Violation::MissingFace {
                    simplex: s.clone(),
                    face,
                });
            }
        }
    }
    if let Some(v) = (0..n_vertices).find(|v| !seen.contains([*v].as_slice())) {
        return Err(Violation::MissingVertex(v));
    }
    Ok(())
}

fn facet_without(s: &[usize], i: usize) -> Simplex {
    s.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    /// `by_dim[r]` holds the r-simplices in lexicographic order.
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Validates `simplices` (which must list every face, vertices included).
    pub fn new(n_vertices: usize, simplices: Vec<Simplex>) -> Result<Self, Violation> {
        validate(n_vertices, &simplices)?;
        Ok(Self::build(n_vertices, simplices))
    }

    /// The closure of `facets`: every face of every listed simplex, plus all
    /// vertices `0..n_vertices`.
    pub fn from_facets(n_vertices: usize, facets: &[Simplex]) -> Result<Self, Violation> {
        let mut all = BTreeSet::new();
        for v in 0..n_vertices {
            all.insert(vec![v]);
        }
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Violation::Unsorted(f.clone()));
            }
            if s.is_empty() {
                return Err(Violation::EmptySimplex);
            }
            let k = s.len();
            for mask in 1u64..(1 << k) {
                let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert(face);
            }
        }
        Self::new(n_vertices, all.into_iter().collect())
    }

    fn build(n_vertices: usize, simplices: Vec<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in simplices {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for layer in by_dim.iter_mut() {
            layer.sort();
        }
        let index = by_dim
            .iter()
            .map(|layer| layer.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        SimplicialComplex {
            n_vertices,
            by_dim,
            index,
        }
    }

    pub fn empty() -> Self {
        Self::build(0, Vec::new())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn is_empty(&self) -> bool {
        self.n_vertices == 0
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, r: usize) -> &[Simplex] {
        self.by_dim.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, r: usize) -> usize {
        self.simplices(r).len()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// The full subcomplex on the vertices where `keep` holds, relabeled to
    /// `0..m` in increasing order. Returns the complex and the map from new to
    /// old vertex indices.
    pub fn full_subcomplex(&self, keep: impl Fn(usize) -> bool) -> (Self, Vec<usize>) {
        let relabel: Vec<usize> = (0..self.n_vertices).filter(|&v| keep(v)).collect();
        let mut new_index = vec![usize::MAX; self.n_vertices];
        for (i, &v) in relabel.iter().enumerate() {
            new_index[v] = i;
        }
        let simplices = self
            .all_simplices()
            .filter(|s| s.iter().all(|&v| new_index[v] != usize::MAX))
            .map(|s| s.iter().map(|&v| new_index[v]).collect())
            .collect();
        (Self::build(relabel.len(), simplices), relabel)
    }

    /// Barycentric subdivision. Vertices of the result are the simplices of
    /// `self`; the returned list gives, for each new vertex, its simplex.
    pub fn barycentric_subdivision(&self) -> (Self, Vec<Simplex>) {
        let cells: Vec<Simplex> = self.all_simplices().cloned().collect();
        let id: HashMap<&Simplex, usize> = cells.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut out = BTreeSet::new();
        // flags s_0 < s_1 < ... < s_k, grown one face relation at a time
        let mut chains: Vec<Vec<usize>> = (0..cells.len()).map(|i| vec![i]).collect();
        while let Some(chain) = chains.pop() {
            let mut sorted = chain.clone();
            sorted.sort_unstable();
            out.insert(sorted);
            let top = &cells[*chain.last().unwrap()];
            for coface in self.by_dim.iter().skip(top.len()).flatten() {
                if top.iter().all(|v| coface.contains(v)) {
                    let mut next = chain.clone();
                    next.push(id[coface]);
                    chains.push(next);
                }
            }
        }
        let complex = Self::new(cells.len(), out.into_iter().collect())
            .expect("barycentric subdivision of a valid complex is valid");
        (complex, cells)
    }
}

/// Matrix of the boundary map from r-chains to (r-1)-chains with the usual
/// alternating signs. For `r = 0` this is the zero map to the zero space.
pub fn boundary_matrix<F: Field>(field: &F, k: &SimplicialComplex, r: usize) -> Matrix<F::Elem> {
    let cols = k.count(r);
    if r == 0 {
        return Matrix::zeros(field, 0, cols);
    }
    let rows = k.count(r - 1);
    let mut m = Matrix::zeros(field, rows, cols);
    for (j, s) in k.simplices(r).iter().enumerate() {
        for i in 0..s.len() {
            let face = facet_without(s, i);
            let row = k.index_of(&face).expect("validated complex is closed under faces");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.set(row, j, field.from_i64(sign));
        }
    }
    m
}
