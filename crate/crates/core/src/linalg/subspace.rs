//! Linear subspaces in canonical form and the subspace calculus built on them.
//!
//! A [`Subspace`] stores its basis as the columns of a matrix in column-reduced
//! echelon form: the transpose of the RREF of the row-stacked spanning vectors,
//! with zero rows dropped. That form is unique, so two subspaces are equal
//! exactly when their basis matrices are.

use super::field::{Field, FieldSpec};
use super::matrix::{rref, Matrix};
use super::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient_dim: usize,
    /// `ambient_dim x rank`, columns are the canonical basis vectors.
    basis: Matrix<E>,
}

impl<E: Clone> Subspace<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, ambient_dim, 0),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
        }
    }

    /// The span of `vectors`, each of length `ambient_dim`.
    pub fn span<F: Field<Elem = E>>(field: &F, ambient_dim: usize, vectors: &[Vec<E>]) -> Self {
        let stacked = Matrix::from_rows(vectors, ambient_dim);
        let red = rref(field, &stacked);
        let rows: Vec<Vec<E>> = (0..red.rank).map(|r| red.reduced.row(r).to_vec()).collect();
        Subspace {
            ambient_dim,
            basis: Matrix::from_columns(&rows, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<E>> {
        self.basis.column_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains_vector<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if v.iter().all(|x| field.is_zero(x)) {
            return true;
        }
        let mut vecs = self.vectors();
        vecs.push(v.to_vec());
        Subspace::span(field, self.ambient_dim, &vecs).dim() == self.dim()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && (self.dim() <= other.dim())
            && self.vectors().iter().all(|v| other.contains_vector(field, v))
    }
}

fn check_ambient<E>(u: &Subspace<E>, v: &Subspace<E>) -> Result<(), LinalgError> {
    if u.ambient_dim != v.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            left: u.ambient_dim,
            right: v.ambient_dim,
        });
    }
    Ok(())
}

/// Column space of `m`.
pub fn image<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    Subspace::span(field, m.rows(), &m.column_vecs())
}

/// Null space of `m` as a subspace of the domain (`m.cols()`-dimensional).
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let n = m.cols();
    let red = rref(field, m);
    let mut is_pivot = vec![None; n];
    for (r, &c) in red.pivot_cols.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let mut vecs = Vec::with_capacity(n - red.rank);
    for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (r, &pc) in red.pivot_cols.iter().enumerate() {
            v[pc] = field.neg(red.reduced.get(r, free));
        }
        vecs.push(v);
    }
    Subspace::span(field, n, &vecs)
}

pub fn sum<F: Field>(
    field: &F,
    u: &Subspace<F::Elem>,
    v: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>, LinalgError> {
    check_ambient(u, v)?;
    let mut vecs = u.vectors();
    vecs.extend(v.vectors());
    Ok(Subspace::span(field, u.ambient_dim, &vecs))
}

/// Intersection via the kernel of `[U | -V]`: every solution `(x, y)` of
/// `U x = V y` yields the common vector `U x`.
pub fn intersect<F: Field>(
    field: &F,
    u: &Subspace<F::Elem>,
    v: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>, LinalgError> {
    check_ambient(u, v)?;
    let n = u.ambient_dim;
    if u.is_zero() || v.is_zero() {
        return Ok(Subspace::zero(field, n));
    }
    let mut neg_v = v.basis.clone();
    for r in 0..neg_v.rows() {
        for c in 0..neg_v.cols() {
            let x = field.neg(neg_v.get(r, c));
            neg_v.set(r, c, x);
        }
    }
    let stacked = u.basis.hstack(&neg_v);
    let ker = kernel(field, &stacked);
    let ru = u.dim();
    let common: Vec<Vec<F::Elem>> = ker
        .vectors()
        .iter()
        .map(|xy| u.basis.mul_vec(field, &xy[..ru]))
        .collect();
    Ok(Subspace::span(field, n, &common))
}

/// Vectors of `v` whose classes form a basis of `v / w`.
///
/// Starting from the canonical basis of `w`, the canonical basis vectors of
/// `v` are tried in order and kept whenever they raise the rank.
pub fn quotient_basis<F: Field>(
    field: &F,
    v: &Subspace<F::Elem>,
    w: &Subspace<F::Elem>,
) -> Result<Vec<Vec<F::Elem>>, LinalgError> {
    check_ambient(v, w)?;
    if !w.is_subspace_of(field, v) {
        return Err(LinalgError::NotContained);
    }
    let mut echelon = Echelon::new(field, v.ambient_dim);
    for wv in w.vectors() {
        echelon.insert(wv);
    }
    let mut reps = Vec::with_capacity(v.dim() - w.dim());
    for vv in v.vectors() {
        if echelon.insert(vv.clone()) {
            reps.push(vv);
        }
    }
    debug_assert_eq!(reps.len(), v.dim() - w.dim());
    Ok(reps)
}

/// `w^perp ∩ v` under the coordinate dot product. Only defined over Q, where
/// the dot product is anisotropic and the result is a complement of `w` in `v`.
pub fn orth_complement<F: Field>(
    field: &F,
    w: &Subspace<F::Elem>,
    v: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>, LinalgError> {
    if field.spec() != FieldSpec::Rationals {
        return Err(LinalgError::NoInnerProduct(field.spec()));
    }
    check_ambient(w, v)?;
    if !w.is_subspace_of(field, v) {
        return Err(LinalgError::NotContained);
    }
    let n = v.ambient_dim;
    if w.is_zero() {
        return Ok(v.clone());
    }
    // Gram block G[i][j] = <w_i, v_j>; coefficients c in ker G give v-combinations
    // orthogonal to every w_i.
    let wv = w.vectors();
    let vv = v.vectors();
    let gram_rows: Vec<Vec<F::Elem>> = wv
        .iter()
        .map(|wi| vv.iter().map(|vj| field.dot(wi, vj)).collect())
        .collect();
    let gram = Matrix::from_rows(&gram_rows, vv.len());
    let coeffs = kernel(field, &gram);
    let out: Vec<Vec<F::Elem>> = coeffs
        .vectors()
        .iter()
        .map(|c| v.basis.mul_vec(field, c))
        .collect();
    Ok(Subspace::span(field, n, &out))
}

/// Incremental fully reduced echelon basis, used for rank-raising tests.
struct Echelon<'a, F: Field> {
    field: &'a F,
    dim: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<'a, F: Field> Echelon<'a, F> {
    fn new(field: &'a F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let k = self.field;
        for (p, row) in &self.rows {
            if k.is_zero(&v[*p]) {
                continue;
            }
            let factor = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = k.sub(x, &k.mul(&factor, y));
            }
        }
        v
    }

    /// Adds `v` if it is independent of the rows so far; reports whether it was.
    fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.dim);
        let k = self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !k.is_zero(x)) else {
            return false;
        };
        let inv = k.inv(&v[p]);
        for x in v.iter_mut() {
            *x = k.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if k.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                *x = k.sub(x, &k.mul(&factor, y));
            }
        }
        self.rows.push((p, v));
        true
    }

}
