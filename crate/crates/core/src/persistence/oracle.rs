use num::{BigInt, One};

use super::PersistenceError;
use crate::complex::{
    critical_grid, homology_basis, image_in_whole, sublevel_subcomplex, superlevel_subcomplex, SimplicialComplex,
    VertexFunction,
};
use crate::config::PlanePoint;
use crate::linalg::{intersect, sum, Field};
use crate::value::Value;

/// Number of shrinking boxes the oracle evaluates.
pub const ORACLE_REFINEMENTS: u32 = 4;

/// Multiplicity at a grid point straight from the shrinking-box definition.
///
/// Evaluates `dim F(a, b) - dim(F(a - e, b) + F(a, b + e))` for
/// `e = gap / 2, gap / 4, ...` where `gap` is the smallest distance between
/// grid values, rebuilding every sub- and superlevel at those off-grid
/// parameters. The values must agree; that common value is returned.
pub fn oracle_delta_stabilization<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
    point: &PlanePoint,
) -> Result<usize, PersistenceError> {
    let grid = critical_grid(k, f)?;
    for v in [&point.a, &point.b] {
        if grid.values().binary_search(v).is_err() {
            return Err(PersistenceError::OffGrid(v.clone()));
        }
    }
    let basis = homology_basis(field, k, r);
    let gap = grid.min_gap().unwrap_or_else(Value::one);
    let sub_image = |t: &Value| image_in_whole(field, &sublevel_subcomplex(k, f, t), k, &basis);
    let sup_image = |t: &Value| image_in_whole(field, &superlevel_subcomplex(k, f, t), k, &basis);

    let at_ab = intersect(field, &sub_image(&point.a), &sup_image(&point.b))?;
    let mut values = Vec::new();
    for m in 1..=ORACLE_REFINEMENTS {
        let eps = &gap / Value::from_integer(BigInt::from(1u64 << m));
        let left = intersect(field, &sub_image(&(&point.a - &eps)), &sup_image(&point.b))?;
        let up = intersect(field, &sub_image(&point.a), &sup_image(&(&point.b + &eps)))?;
        values.push(at_ab.dim() - sum(field, &left, &up)?.dim());
    }
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(PersistenceError::NoStabilization {
            point: point.clone(),
            values,
        });
    }
    Ok(values[0])
}
