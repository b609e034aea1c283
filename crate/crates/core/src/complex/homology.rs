use std::collections::BTreeSet;

use super::function::{critical_grid, sublevel_subcomplex, superlevel_subcomplex, Subcomplex, VertexFunction};
use super::{boundary_matrix, ComplexError, SimplicialComplex};
use crate::linalg::{image, kernel, left_inverse, quotient_basis, Field, Matrix, Subspace};
use crate::value::Value;

/// A basis of `H_r` together with the linear map that reads off the
/// coordinates of any r-cycle's class in that basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyBasis<E> {
    pub degree: usize,
    pub betti: usize,
    /// Cycles whose classes form the basis, as vectors over the r-simplices.
    pub cycle_reps: Vec<Vec<E>>,
    /// `betti x n_r`; applied to a cycle it yields the class coordinates.
    coords: Matrix<E>,
}

impl<E: Clone> HomologyBasis<E> {
    /// Coordinates of the class of the cycle `z`. `z` must be a cycle; the
    /// result is meaningless otherwise.
    pub fn express<F: Field<Elem = E>>(&self, field: &F, z: &[E]) -> Vec<E> {
        self.coords.mul_vec(field, z)
    }

    /// The cycle `sum_i x_i * rep_i` for class coordinates `x`.
    pub fn cycle_of<F: Field<Elem = E>>(&self, field: &F, x: &[E], n_simplices: usize) -> Vec<E> {
        assert_eq!(x.len(), self.betti);
        let mut out = vec![field.zero(); n_simplices];
        for (c, rep) in x.iter().zip(&self.cycle_reps) {
            for (o, r) in out.iter_mut().zip(rep) {
                *o = field.add(o, &field.mul(c, r));
            }
        }
        out
    }
}

/// `H_r(k)` over `field`: cycle representatives complementing the boundaries
/// inside the cycles, plus a coordinate map built from a left inverse of
/// `[reps | boundary basis]`.
pub fn homology_basis<F: Field>(field: &F, k: &SimplicialComplex, r: usize) -> HomologyBasis<F::Elem> {
    let n_r = k.count(r);
    let cycles = kernel(field, &boundary_matrix(field, k, r));
    let boundaries = image(field, &boundary_matrix(field, k, r + 1));
    debug_assert_eq!(boundaries.ambient_dim(), n_r);
    let reps = quotient_basis(field, &cycles, &boundaries)
        .expect("boundaries are cycles because the boundary squares to zero");
    let betti = reps.len();
    let mut cols = reps.clone();
    cols.extend(boundaries.vectors());
    let m = Matrix::from_columns(&cols, n_r);
    let inverse = left_inverse(field, &m).expect("representatives and boundaries are independent");
    let coords = Matrix::from_rows(&inverse.row_vecs()[..betti], n_r);
    HomologyBasis {
        degree: r,
        betti,
        cycle_reps: reps,
        coords,
    }
}

fn check_relabel(sub: &SimplicialComplex, relabel: &[usize], whole: &SimplicialComplex) -> Result<(), ComplexError> {
    if relabel.len() != sub.n_vertices() {
        return Err(ComplexError::BadRelabel(format!(
            "{} labels for {} vertices",
            relabel.len(),
            sub.n_vertices()
        )));
    }
    let mut seen = BTreeSet::new();
    for &v in relabel {
        if v >= whole.n_vertices() {
            return Err(ComplexError::BadRelabel(format!("vertex {v} out of range")));
        }
        if !seen.insert(v) {
            return Err(ComplexError::BadRelabel(format!("vertex {v} hit twice")));
        }
    }
    for s in sub.all_simplices() {
        let mut image: Vec<usize> = s.iter().map(|&v| relabel[v]).collect();
        image.sort_unstable();
        if whole.index_of(&image).is_none() {
            return Err(ComplexError::BadRelabel(format!("image of {s:?} is not a simplex")));
        }
    }
    Ok(())
}

/// Pushes an r-chain of `sub` into `whole` along `relabel`, with the sign of
/// the sorting permutation.
fn push_chain<F: Field>(
    field: &F,
    chain: &[F::Elem],
    sub: &SimplicialComplex,
    relabel: &[usize],
    whole: &SimplicialComplex,
    r: usize,
) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); whole.count(r)];
    for (c, s) in chain.iter().zip(sub.simplices(r)) {
        if field.is_zero(c) {
            continue;
        }
        let mut image: Vec<usize> = s.iter().map(|&v| relabel[v]).collect();
        let mut odd = false;
        // insertion sort, counting transpositions
        for i in 1..image.len() {
            let mut j = i;
            while j > 0 && image[j - 1] > image[j] {
                image.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        let idx = whole.index_of(&image).expect("checked simplicial map");
        let term = if odd { field.neg(c) } else { c.clone() };
        out[idx] = field.add(&out[idx], &term);
    }
    out
}

/// The matrix of `H_r(sub) -> H_r(whole)` in the two given bases.
pub fn induced_map_with<F: Field>(
    field: &F,
    sub: &SimplicialComplex,
    relabel: &[usize],
    sub_basis: &HomologyBasis<F::Elem>,
    whole: &SimplicialComplex,
    whole_basis: &HomologyBasis<F::Elem>,
) -> Matrix<F::Elem> {
    let r = sub_basis.degree;
    let columns: Vec<Vec<F::Elem>> = sub_basis
        .cycle_reps
        .iter()
        .map(|z| whole_basis.express(field, &push_chain(field, z, sub, relabel, whole, r)))
        .collect();
    Matrix::from_columns(&columns, whole_basis.betti)
}

/// Inclusion-induced map on `H_r`, in the bases produced by [`homology_basis`].
pub fn induced_homology_map<F: Field>(
    field: &F,
    sub: &SimplicialComplex,
    relabel: &[usize],
    whole: &SimplicialComplex,
    r: usize,
) -> Result<Matrix<F::Elem>, ComplexError> {
    check_relabel(sub, relabel, whole)?;
    let sb = homology_basis(field, sub, r);
    let wb = homology_basis(field, whole, r);
    Ok(induced_map_with(field, sub, relabel, &sb, whole, &wb))
}

/// Image of `H_r(sub)` in `H_r(whole)` coordinates.
pub fn image_in_whole<F: Field>(
    field: &F,
    sub: &Subcomplex,
    whole: &SimplicialComplex,
    whole_basis: &HomologyBasis<F::Elem>,
) -> Subspace<F::Elem> {
    let r = whole_basis.degree;
    if sub.complex.count(r) == 0 {
        return Subspace::zero(field, whole_basis.betti);
    }
    let sb = homology_basis(field, &sub.complex, r);
    let m = induced_map_with(field, &sub.complex, &sub.relabel, &sb, whole, whole_basis);
    image(field, &m)
}

/// Grid values where the sublevel image grows (scanning upward) or the
/// superlevel image grows (scanning downward).
pub fn detect_homological_cr<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
) -> Result<Vec<Value>, ComplexError> {
    let grid = critical_grid(k, f)?;
    let wb = homology_basis(field, k, r);
    if wb.betti == 0 {
        return Ok(Vec::new());
    }
    let n = grid.len();
    let sub_dims: Vec<usize> = (0..=n + 1)
        .map(|i| image_in_whole(field, &sublevel_subcomplex(k, f, &grid.at(i)), k, &wb).dim())
        .collect();
    let sup_dims: Vec<usize> = (0..=n + 1)
        .map(|i| image_in_whole(field, &superlevel_subcomplex(k, f, &grid.at(i)), k, &wb).dim())
        .collect();
    Ok((1..=n)
        .filter(|&i| sub_dims[i] > sub_dims[i - 1] || sup_dims[i] > sup_dims[i + 1])
        .map(|i| grid.at(i))
        .collect())
}
