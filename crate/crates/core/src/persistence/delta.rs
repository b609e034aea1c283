use std::collections::BTreeMap;

use super::table::{build_image_table_with, FTable, ImageTable};
use super::{OrthoConfiguration, PersistenceError, VectorConfiguration};
use crate::complex::{SimplicialComplex, VertexFunction};
use crate::config::{Configuration, PlanePoint};
use crate::exec::Exec;
use crate::linalg::{orth_complement, quotient_basis, sum, Field, Rationals};

/// Everything computed for one degree: image table, all `F(i, j)`, and the
/// multiplicity configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement<E> {
    pub table: ImageTable<E>,
    pub ftable: FTable<E>,
    pub delta: Configuration,
}

pub fn refine<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
    exec: Exec,
) -> Result<Refinement<F::Elem>, PersistenceError> {
    let table = build_image_table_with(field, k, f, r, exec)?;
    let ftable = FTable::new(field, &table, exec);
    let delta = delta_from_ftable(&table, &ftable);
    Ok(Refinement { table, ftable, delta })
}

/// Multiplicity at `(c_i, c_j)` is the dimension of the box
/// `(c_{i-1}, c_i] x [c_j, c_{j+1})`, evaluated for every pair of genuine grid
/// values (below-diagonal pairs included).
pub fn delta_from_ftable<E: Clone>(table: &ImageTable<E>, ftable: &FTable<E>) -> Configuration {
    let n = table.grid.len();
    let mut out = Configuration::new();
    if table.ambient_dim() == 0 {
        return out;
    }
    for i in 1..=n {
        for j in 1..=n {
            let m = ftable.box_dim(i - 1, i, j, j + 1);
            assert!(m >= 0, "negative box dimension at ({i}, {j})");
            out.add(PlanePoint::new(table.grid.at(i), table.grid.at(j)), m as usize);
        }
    }
    out
}

fn support_positions<E: Clone>(table: &ImageTable<E>, delta: &Configuration) -> Vec<(PlanePoint, usize, usize)> {
    delta
        .iter()
        .map(|(p, _)| {
            let i = table.grid.position(&p.a).expect("support lies on the grid");
            let j = table.grid.position(&p.b).expect("support lies on the grid");
            (p.clone(), i, j)
        })
        .collect()
}

/// Quotient representatives `F(c_i, c_j) / (F(c_{i-1}, c_j) + F(c_i, c_{j+1}))`
/// at each support point.
pub fn hat_delta_from_ftable<F: Field>(
    field: &F,
    table: &ImageTable<F::Elem>,
    ftable: &FTable<F::Elem>,
    delta: &Configuration,
) -> VectorConfiguration<F::Elem> {
    let mut entries = BTreeMap::new();
    for (p, i, j) in support_positions(table, delta) {
        let lower = sum(field, ftable.space(i - 1, j), ftable.space(i, j + 1)).expect("shared ambient space");
        let reps = quotient_basis(field, ftable.space(i, j), &lower).expect("lower corners sit inside F(a, b)");
        entries.insert(p, reps);
    }
    VectorConfiguration {
        degree: table.degree,
        entries,
    }
}

pub fn ortho_delta_from_ftable(
    table: &ImageTable<num::BigRational>,
    ftable: &FTable<num::BigRational>,
    delta: &Configuration,
) -> OrthoConfiguration {
    let q = Rationals;
    let mut entries = BTreeMap::new();
    for (p, i, j) in support_positions(table, delta) {
        let lower = sum(&q, ftable.space(i - 1, j), ftable.space(i, j + 1)).expect("shared ambient space");
        let h = orth_complement(&q, &lower, ftable.space(i, j)).expect("lower corners sit inside F(a, b)");
        entries.insert(p, h);
    }
    OrthoConfiguration {
        degree: table.degree,
        ambient_dim: table.ambient_dim(),
        entries,
    }
}

pub fn compute_delta<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
) -> Result<Configuration, PersistenceError> {
    Ok(refine(field, k, f, r, Exec::default())?.delta)
}

pub fn compute_hat_delta<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
) -> Result<VectorConfiguration<F::Elem>, PersistenceError> {
    let rf = refine(field, k, f, r, Exec::default())?;
    Ok(hat_delta_from_ftable(field, &rf.table, &rf.ftable, &rf.delta))
}

/// Orthogonal refinement; only defined over Q.
pub fn compute_ortho_delta(
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
) -> Result<OrthoConfiguration, PersistenceError> {
    let rf = refine(&Rationals, k, f, r, Exec::default())?;
    Ok(ortho_delta_from_ftable(&rf.table, &rf.ftable, &rf.delta))
}
