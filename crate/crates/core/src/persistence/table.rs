use super::{PersistenceError, PlaneBox};
use crate::complex::{
    critical_grid, homology_basis, image_in_whole, sublevel_subcomplex, superlevel_subcomplex, CriticalGrid,
    HomologyBasis, SimplicialComplex, VertexFunction,
};
use crate::exec::Exec;
use crate::linalg::{intersect, sum, Field, Subspace};
use crate::value::Value;

/// `I_c` and `I^c` at every grid position, sentinels included, all as
/// subspaces of one fixed coordinatization of `H_r(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageTable<E> {
    pub degree: usize,
    pub grid: CriticalGrid,
    pub basis: HomologyBasis<E>,
    /// `sub[i]` is the image from the sublevel at grid position `i`.
    pub sub: Vec<Subspace<E>>,
    /// `sup[j]` is the image from the superlevel at grid position `j`.
    pub sup: Vec<Subspace<E>>,
}

impl<E: Clone> ImageTable<E> {
    pub fn ambient_dim(&self) -> usize {
        self.basis.betti
    }

    pub fn position(&self, v: &Value) -> Result<usize, PersistenceError> {
        self.grid
            .position(v)
            .ok_or_else(|| PersistenceError::OffGrid(v.clone()))
    }

    pub fn box_positions(&self, bx: &PlaneBox) -> Result<[usize; 4], PersistenceError> {
        Ok([
            self.position(&bx.a_lo)?,
            self.position(&bx.a_hi)?,
            self.position(&bx.b_lo)?,
            self.position(&bx.b_hi)?,
        ])
    }
}

pub fn build_image_table<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
) -> Result<ImageTable<F::Elem>, PersistenceError> {
    build_image_table_with(field, k, f, r, Exec::default())
}

pub fn build_image_table_with<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
    exec: Exec,
) -> Result<ImageTable<F::Elem>, PersistenceError> {
    let grid = critical_grid(k, f)?;
    let basis = homology_basis(field, k, r);
    let ext = grid.extended_len();
    let values = grid.extended_values();
    let (sub, sup) = if basis.betti == 0 {
        let zero = Subspace::zero(field, 0);
        (vec![zero.clone(); ext], vec![zero; ext])
    } else {
        let sub = exec.map(&values, |c| image_in_whole(field, &sublevel_subcomplex(k, f, c), k, &basis));
        let sup = exec.map(&values, |c| image_in_whole(field, &superlevel_subcomplex(k, f, c), k, &basis));
        (sub, sup)
    };
    Ok(ImageTable {
        degree: r,
        grid,
        basis,
        sub,
        sup,
    })
}

/// `F(a, b) = I_a ∩ I^b` for grid (or sentinel) values `a`, `b`.
pub fn compute_f<F: Field>(
    field: &F,
    table: &ImageTable<F::Elem>,
    a: &Value,
    b: &Value,
) -> Result<Subspace<F::Elem>, PersistenceError> {
    let i = table.position(a)?;
    let j = table.position(b)?;
    Ok(intersect(field, &table.sub[i], &table.sup[j])?)
}

/// Box dimension by inclusion-exclusion on the four corner dimensions:
/// `F(a, b) + F(a', b') - F(a', b) - F(a, b')`.
pub fn compute_f_box_dim<F: Field>(
    field: &F,
    table: &ImageTable<F::Elem>,
    bx: &PlaneBox,
) -> Result<usize, PersistenceError> {
    let [i_lo, i_hi, j_lo, j_hi] = table.box_positions(bx)?;
    let d = |i: usize, j: usize| -> Result<i64, PersistenceError> {
        Ok(intersect(field, &table.sub[i], &table.sup[j])?.dim() as i64)
    };
    let v = d(i_hi, j_lo)? + d(i_lo, j_hi)? - d(i_lo, j_lo)? - d(i_hi, j_hi)?;
    Ok(usize::try_from(v).expect("box dimension is nonnegative"))
}

/// Dimension of `((I_a' + I^b) ∩ (I_a + I^b')) / (I_a' + I^b')`.
pub fn compute_g_box_dim<F: Field>(
    field: &F,
    table: &ImageTable<F::Elem>,
    bx: &PlaneBox,
) -> Result<usize, PersistenceError> {
    let [i_lo, i_hi, j_lo, j_hi] = table.box_positions(bx)?;
    let upper = intersect(
        field,
        &sum(field, &table.sub[i_lo], &table.sup[j_lo])?,
        &sum(field, &table.sub[i_hi], &table.sup[j_hi])?,
    )?;
    let lower = sum(field, &table.sub[i_lo], &table.sup[j_hi])?;
    debug_assert!(lower.is_subspace_of(field, &upper));
    Ok(upper.dim() - lower.dim())
}

/// All `F(i, j) = I_i ∩ I^j` and `J(i, j) = I_i + I^j` over the extended grid,
/// precomputed for bulk box evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable<E> {
    ext: usize,
    meets: Vec<Subspace<E>>,
    joins: Vec<Subspace<E>>,
}

impl<E: Clone> FTable<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, table: &ImageTable<E>, exec: Exec) -> Self
    where
        E: Send + Sync,
    {
        let ext = table.grid.extended_len();
        let pairs = exec.map_range(ext * ext, |idx| {
            let (i, j) = (idx / ext, idx % ext);
            let meet = intersect(field, &table.sub[i], &table.sup[j]).expect("shared ambient space");
            let join = sum(field, &table.sub[i], &table.sup[j]).expect("shared ambient space");
            (meet, join)
        });
        let (meets, joins) = pairs.into_iter().unzip();
        FTable { ext, meets, joins }
    }

    pub fn extended_len(&self) -> usize {
        self.ext
    }

    pub fn space(&self, i: usize, j: usize) -> &Subspace<E> {
        &self.meets[i * self.ext + j]
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.space(i, j).dim()
    }

    pub fn join(&self, i: usize, j: usize) -> &Subspace<E> {
        &self.joins[i * self.ext + j]
    }

    /// Inclusion-exclusion box dimension for `(i_lo, i_hi] x [j_lo, j_hi)` in
    /// grid positions.
    pub fn box_dim(&self, i_lo: usize, i_hi: usize, j_lo: usize, j_hi: usize) -> i64 {
        self.dim(i_hi, j_lo) as i64 + self.dim(i_lo, j_hi) as i64
            - self.dim(i_lo, j_lo) as i64
            - self.dim(i_hi, j_hi) as i64
    }

    /// Box dimension as an honest quotient: `dim F(a, b) - dim(F(a', b) + F(a, b'))`.
    pub fn box_quotient_dim<F: Field<Elem = E>>(
        &self,
        field: &F,
        i_lo: usize,
        i_hi: usize,
        j_lo: usize,
        j_hi: usize,
    ) -> usize {
        let lower = sum(field, self.space(i_lo, j_lo), self.space(i_hi, j_hi)).expect("shared ambient space");
        self.dim(i_hi, j_lo) - lower.dim()
    }

    /// The kernel-side box dimension through the joins.
    pub fn g_box_dim<F: Field<Elem = E>>(
        &self,
        field: &F,
        i_lo: usize,
        i_hi: usize,
        j_lo: usize,
        j_hi: usize,
    ) -> usize {
        let upper = intersect(field, self.join(i_lo, j_lo), self.join(i_hi, j_hi)).expect("shared ambient space");
        upper.dim() - self.join(i_lo, j_hi).dim()
    }
}
