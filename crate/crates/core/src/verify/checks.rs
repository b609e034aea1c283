use std::collections::BTreeSet;

use num::{BigInt, Zero};

use super::perturb::{perturb_distinct, perturb_uniform, trial_rng};
use super::{PerturbationSpec, Subject, Tally, VerificationReport, VerifyError};
use crate::complex::{critical_grid, detect_homological_cr, SimplicialComplex, VertexFunction};
use crate::config::{
    bottleneck_distance, point_to_complex, root_multiplicity, to_polynomial, Configuration, MonicPolynomial,
    PlanePoint,
};
use crate::exec::Exec;
use crate::linalg::{rank, Field, Matrix, Rationals};
use crate::persistence::{
    hat_delta_from_ftable, oracle_delta_stabilization, ortho_delta_from_ftable, refine, PersistenceError,
};
use crate::value::{format_value, Value};

fn degrees(k: &SimplicialComplex) -> std::ops::RangeInclusive<usize> {
    0..=k.dim().unwrap_or(0)
}

fn deltas<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    exec: Exec,
) -> Result<Vec<Configuration>, PersistenceError> {
    degrees(k).map(|r| Ok(refine(field, k, f, r, exec)?.delta)).collect()
}

fn values_str(f: &VertexFunction) -> String {
    f.values().iter().map(format_value).collect::<Vec<_>>().join(" ")
}

/// Total multiplicity in every degree equals the Betti number.
pub fn verify_total_mass<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let mut t = Tally::start("mass");
    for r in degrees(k) {
        let rf = refine(field, k, f, r, exec)?;
        let (mass, betti) = (rf.delta.total_mass(), rf.table.ambient_dim());
        t.note(format!("degree {r}: mass {mass}, betti {betti}"));
        if mass != betti {
            t.fail(format!("degree {r}: mass {mass} but betti {betti}"));
        }
    }
    Ok(t.finish())
}

/// Every support coordinate is a homological critical value.
pub fn verify_critical_support<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let mut t = Tally::start("critical-support");
    for r in degrees(k) {
        let delta = refine(field, k, f, r, exec)?.delta;
        let crit: BTreeSet<Value> = detect_homological_cr(field, k, f, r)?.into_iter().collect();
        for (p, _) in delta.iter() {
            for (name, v) in [("a", &p.a), ("b", &p.b)] {
                if !crit.contains(v) {
                    t.fail(format!("degree {r}: support point {p} has non-critical {name} = {}", format_value(v)));
                }
            }
        }
        t.note(format!("degree {r}: {} critical value{}", crit.len(), if crit.len() == 1 { "" } else { "s" }));
    }
    Ok(t.finish())
}

/// Bottleneck distance between the configurations of `f` and of a nearby `g`
/// is at most twice the sup distance of the functions.
pub fn verify_stability<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    spec: &PerturbationSpec,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let mut t = Tally::start("stability");
    let base = deltas(field, k, f, exec)?;
    let outcomes = exec.map_range(spec.trials, |trial| -> Result<Vec<String>, PersistenceError> {
        let g = perturb_uniform(f, &spec.epsilon, &mut trial_rng(spec.seed, trial));
        let shift = f.sup_distance(&g);
        let bound = &shift * Value::from_integer(BigInt::from(2));
        let mut bad = Vec::new();
        for (r, df) in base.iter().enumerate() {
            let dg = refine(field, k, &g, r, Exec::Sequential)?.delta;
            match bottleneck_distance(df, &dg) {
                Ok(m) if m.distance <= bound => {}
                Ok(m) => bad.push(format!(
                    "trial {trial} (seed {}), degree {r}: distance {} exceeds 2 * {} for g = [{}]",
                    spec.seed,
                    format_value(&m.distance),
                    format_value(&shift),
                    values_str(&g)
                )),
                Err(e) => bad.push(format!("trial {trial} (seed {}), degree {r}: {e}", spec.seed)),
            }
        }
        Ok(bad)
    });
    for o in outcomes {
        for w in o? {
            t.fail(w);
        }
    }
    t.note(format!("{} trials, epsilon {}", spec.trials, format_value(&spec.epsilon)));
    Ok(t.finish())
}

/// `(a - e, a + e] x [b - e, b + e)`.
fn in_square(center: &PlanePoint, e: &Value, p: &PlanePoint) -> bool {
    &center.a - e < p.a && p.a <= &center.a + e && &center.b - e <= p.b && p.b < &center.b + e
}

/// For `g` within `eps` of `f`, with `eps` below a third of the grid gap: the
/// support of `g`'s configuration lies in the `2 eps` squares around the
/// support of `f`'s, and each square carries the mass of its center.
pub fn verify_local_stability<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    spec: &PerturbationSpec,
    exec: Exec,
) -> Result<VerificationReport, VerifyError> {
    let grid = critical_grid(k, f).map_err(PersistenceError::from)?;
    if let Some(gap) = grid.min_gap() {
        if &spec.epsilon * Value::from_integer(BigInt::from(3)) >= gap {
            return Err(VerifyError::EpsilonTooLarge {
                epsilon: spec.epsilon.clone(),
                gap,
            });
        }
    }
    let mut t = Tally::start("local-stability");
    let base = deltas(field, k, f, exec)?;
    let half = &spec.epsilon * Value::from_integer(BigInt::from(2));
    let outcomes = exec.map_range(spec.trials, |trial| -> Result<Vec<String>, PersistenceError> {
        let g = perturb_uniform(f, &spec.epsilon, &mut trial_rng(spec.seed, trial));
        let mut bad = Vec::new();
        let tag = |r: usize| format!("trial {trial} (seed {}), degree {r}", spec.seed);
        for (r, df) in base.iter().enumerate() {
            let dg = refine(field, k, &g, r, Exec::Sequential)?.delta;
            if spec.epsilon.is_zero() {
                if &dg != df {
                    bad.push(format!("{}: zero shift changed the configuration", tag(r)));
                }
                continue;
            }
            for (x, m) in df.iter() {
                let got = dg.mass_where(|p| in_square(x, &half, p));
                if got != m {
                    bad.push(format!("{}: square around {x} holds mass {got}, expected {m}", tag(r)));
                }
            }
            for (y, _) in dg.iter() {
                if !df.iter().any(|(x, _)| in_square(x, &half, y)) {
                    bad.push(format!("{}: point {y} of g = [{}] lies outside every square", tag(r), values_str(&g)));
                }
            }
        }
        Ok(bad)
    });
    for o in outcomes {
        for w in o? {
            t.fail(w);
        }
    }
    t.note(format!("{} trials, epsilon {}", spec.trials, format_value(&spec.epsilon)));
    Ok(t.finish())
}

/// On a closed `n`-manifold, degree `r` is the mirror image of degree `n - r`,
/// for the multiplicities and for the dimensions of the quotient spaces.
pub fn verify_duality<F: Field>(
    field: &F,
    subject: &Subject<'_>,
    exec: Exec,
) -> Result<VerificationReport, VerifyError> {
    let n = subject.manifold_dim.ok_or(VerifyError::NotManifold)?;
    if subject.orientable == Some(false) && field.spec().characteristic() != 2 {
        return Err(VerifyError::NotOrientable(field.spec()));
    }
    let (k, f) = (subject.complex, subject.function);
    let mut t = Tally::start("duality");
    let mut delta = Vec::new();
    let mut hat_dims = Vec::new();
    for r in 0..=n {
        let rf = refine(field, k, f, r, exec)?;
        hat_dims.push(hat_delta_from_ftable(field, &rf.table, &rf.ftable, &rf.delta).dims());
        delta.push(rf.delta);
    }
    for r in 0..=n {
        let mirror = delta[n - r].transposed();
        if delta[r] != mirror {
            let p = delta[r]
                .iter()
                .chain(mirror.iter())
                .map(|(p, _)| p)
                .find(|p| delta[r].get(p) != mirror.get(p))
                .unwrap();
            t.fail(format!(
                "degree {r} has multiplicity {} at {p}, degree {} has {} at {}",
                delta[r].get(p),
                n - r,
                delta[n - r].get(&p.transposed()),
                p.transposed()
            ));
        }
        if hat_dims[r] != hat_dims[n - r].transposed() {
            t.fail(format!("quotient dimensions of degrees {r} and {} are not mirror images", n - r));
        }
    }
    t.note(format!("dimension {n}, {} degrees", n + 1));
    Ok(t.finish())
}

/// After moving `f` to pairwise-distinct vertex values, no support point
/// carries multiplicity above 1.
pub fn verify_genericity<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    spec: &PerturbationSpec,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let mut t = Tally::start("genericity");
    let unperturbed = deltas(field, k, f, exec)?
        .iter()
        .map(|c| c.max_multiplicity())
        .max()
        .unwrap_or(0);
    t.note(format!("unperturbed max multiplicity {unperturbed} (not judged)"));
    let outcomes = exec.map_range(spec.trials, |trial| -> Result<Option<String>, PersistenceError> {
        let g = perturb_distinct(f, &mut trial_rng(spec.seed, trial));
        for r in degrees(k) {
            let dg = refine(field, k, &g, r, Exec::Sequential)?.delta;
            let worst = dg.iter().find(|(_, m)| *m > 1).map(|(p, m)| {
                format!(
                    "trial {trial} (seed {}), degree {r}: multiplicity {m} at {p} for g = [{}]",
                    spec.seed,
                    values_str(&g)
                )
            });
            if worst.is_some() {
                return Ok(worst);
            }
        }
        Ok(None)
    });
    for o in outcomes {
        if let Some(w) = o? {
            t.fail(w);
        }
    }
    t.note(format!("{} perturbations", spec.trials));
    Ok(t.finish())
}

/// Exhaustively over boxes with corners on the extended grid: the box
/// dimension equals the enclosed mass, box dimensions add under splitting,
/// and the image-side and kernel-side box spaces have equal dimension.
pub fn verify_box_laws<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let mut t = Tally::start("box-laws");
    let mut boxes = 0usize;
    for r in degrees(k) {
        let rf = refine(field, k, f, r, exec)?;
        let (ft, grid) = (&rf.ftable, &rf.table.grid);
        let ext = ft.extended_len();
        let n = grid.len();
        let delta_at = |i: usize, j: usize| -> usize {
            if (1..=n).contains(&i) && (1..=n).contains(&j) {
                rf.delta.get(&PlanePoint::new(grid.at(i), grid.at(j)))
            } else {
                0
            }
        };
        let whole = ft.box_dim(0, ext - 1, 0, ext - 1);
        if whole != rf.table.ambient_dim() as i64 {
            t.fail(format!("degree {r}: full-plane box has dimension {whole}, betti is {}", rf.table.ambient_dim()));
        }
        let mut corners = Vec::new();
        for i_lo in 0..ext {
            for i_hi in i_lo + 1..ext {
                for j_lo in 0..ext {
                    for j_hi in j_lo + 1..ext {
                        corners.push([i_lo, i_hi, j_lo, j_hi]);
                    }
                }
            }
        }
        boxes += corners.len();
        let failures = exec.map(&corners, |&[i_lo, i_hi, j_lo, j_hi]| {
            let mut bad = Vec::new();
            let name = || {
                format!(
                    "degree {r}, box ({}, {}] x [{}, {})",
                    format_value(&grid.at(i_lo)),
                    format_value(&grid.at(i_hi)),
                    format_value(&grid.at(j_lo)),
                    format_value(&grid.at(j_hi))
                )
            };
            let q = ft.box_quotient_dim(field, i_lo, i_hi, j_lo, j_hi);
            let incl_excl = ft.box_dim(i_lo, i_hi, j_lo, j_hi);
            let mass: usize = (i_lo + 1..=i_hi)
                .flat_map(|i| (j_lo..j_hi).map(move |j| (i, j)))
                .map(|(i, j)| delta_at(i, j))
                .sum();
            if q != mass || incl_excl != mass as i64 {
                bad.push(format!("{}: dimension {q} (inclusion-exclusion {incl_excl}) but mass {mass}", name()));
            }
            for m in i_lo + 1..i_hi {
                let parts = ft.box_quotient_dim(field, i_lo, m, j_lo, j_hi) + ft.box_quotient_dim(field, m, i_hi, j_lo, j_hi);
                if parts != q {
                    bad.push(format!("{}: splitting at a = {} gives {parts}, whole is {q}", name(), format_value(&grid.at(m))));
                }
            }
            for m in j_lo + 1..j_hi {
                let parts = ft.box_quotient_dim(field, i_lo, i_hi, j_lo, m) + ft.box_quotient_dim(field, i_lo, i_hi, m, j_hi);
                if parts != q {
                    bad.push(format!("{}: splitting at b = {} gives {parts}, whole is {q}", name(), format_value(&grid.at(m))));
                }
            }
            let g = ft.g_box_dim(field, i_lo, i_hi, j_lo, j_hi);
            if g != q {
                bad.push(format!("{}: image side {q}, kernel side {g}", name()));
            }
            bad
        });
        for w in failures.into_iter().flatten() {
            t.fail(w);
        }
    }
    t.note(format!("{boxes} boxes"));
    Ok(t.finish())
}

/// The grid computation agrees with the shrinking-box definition at every
/// pair of grid values.
pub fn verify_oracle<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let mut t = Tally::start("oracle");
    let grid = critical_grid(k, f)?;
    let points: Vec<PlanePoint> = grid
        .values()
        .iter()
        .flat_map(|a| grid.values().iter().map(move |b| PlanePoint::new(a.clone(), b.clone())))
        .collect();
    for r in degrees(k) {
        let delta = refine(field, k, f, r, exec)?.delta;
        let oracle = exec.map(&points, |p| oracle_delta_stabilization(field, k, f, r, p));
        for (p, o) in points.iter().zip(oracle) {
            match o {
                Ok(m) if m == delta.get(p) => {}
                Ok(m) => t.fail(format!("degree {r}, point {p}: grid gives {}, oracle {m}", delta.get(p))),
                Err(e) => t.fail(format!("degree {r}, point {p}: {e}")),
            }
        }
    }
    t.note(format!("{} grid points per degree", points.len()));
    Ok(t.finish())
}

/// Representatives of all quotient spaces, stacked, form an invertible
/// square matrix in homology coordinates.
pub fn verify_direct_sum<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let mut t = Tally::start("direct-sum");
    for r in degrees(k) {
        let rf = refine(field, k, f, r, exec)?;
        let betti = rf.table.ambient_dim();
        let reps = hat_delta_from_ftable(field, &rf.table, &rf.ftable, &rf.delta).concatenated();
        let rk = if reps.is_empty() {
            0
        } else {
            rank(field, &Matrix::from_columns(&reps, betti))
        };
        if reps.len() != betti || rk != betti {
            t.fail(format!("degree {r}: {} representatives of rank {rk}, betti {betti}", reps.len()));
        }
    }
    Ok(t.finish())
}

/// Over Q: the orthogonal refinements have dimensions summing to the Betti
/// number and are pairwise orthogonal for the coordinate inner product.
pub fn verify_orthogonality(
    k: &SimplicialComplex,
    f: &VertexFunction,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let q = Rationals;
    let mut t = Tally::start("orthogonality");
    for r in degrees(k) {
        let rf = refine(&q, k, f, r, exec)?;
        let ortho = ortho_delta_from_ftable(&rf.table, &rf.ftable, &rf.delta);
        let total: usize = ortho.entries.values().map(|s| s.dim()).sum();
        if total != ortho.ambient_dim {
            t.fail(format!("degree {r}: dimensions sum to {total}, betti {}", ortho.ambient_dim));
        }
        let entries: Vec<_> = ortho.entries.iter().collect();
        for (x, (p, u)) in entries.iter().enumerate() {
            for (p2, w) in &entries[x + 1..] {
                for a in u.vectors() {
                    for b in w.vectors() {
                        let d = q.dot(&a, &b);
                        if !d.is_zero() {
                            t.fail(format!("degree {r}: subspaces at {p} and {p2} have dot product {}", format_value(&d)));
                        }
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

/// The polynomial with the configuration as root multiset has degree equal to
/// the Betti number, each root has the right multiplicity, and expanding the
/// recovered roots reproduces the coefficients.
pub fn verify_polynomial<F: Field>(
    field: &F,
    k: &SimplicialComplex,
    f: &VertexFunction,
    exec: Exec,
) -> Result<VerificationReport, PersistenceError> {
    let mut t = Tally::start("polynomial");
    for r in degrees(k) {
        let rf = refine(field, k, f, r, exec)?;
        let poly = to_polynomial(&rf.delta);
        if poly.degree() != rf.table.ambient_dim() {
            t.fail(format!("degree {r}: polynomial degree {}, betti {}", poly.degree(), rf.table.ambient_dim()));
        }
        let mut roots = Vec::new();
        for (p, m) in rf.delta.iter() {
            let z = point_to_complex(p);
            let got = root_multiplicity(&poly, &z);
            if got != m {
                t.fail(format!("degree {r}: root {p} has multiplicity {got}, expected {m}"));
            }
            roots.extend(std::iter::repeat(z).take(got));
        }
        let rebuilt = MonicPolynomial::from_roots(&roots);
        if rebuilt != poly {
            t.fail(format!("degree {r}: re-expanding the roots changes the coefficients"));
        }
    }
    Ok(t.finish())
}
