use proptest::prelude::*;

use refbetti::linalg::{
    image, intersect, kernel, left_inverse, orth_complement, quotient_basis, rank, rref, sum, Field, Matrix,
    PrimeField, Rationals, Subspace,
};
use refbetti::value::int;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Every vector of GF(p)^n.
fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Members of the span, found by trying every combination of generators.
fn span_members(field: &PrimeField, n: usize, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let p = field.modulus();
    let mut out: Vec<Vec<u64>> = all_vectors(p, gens.len())
        .into_iter()
        .map(|coeffs| {
            let mut v = vec![0; n];
            for (c, g) in coeffs.iter().zip(gens) {
                for (x, y) in v.iter_mut().zip(g) {
                    *x = field.add(x, &field.mul(c, y));
                }
            }
            v
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn members(field: &PrimeField, s: &Subspace<u64>) -> Vec<Vec<u64>> {
    span_members(field, s.ambient_dim(), &s.vectors())
}

fn gens_strategy(p: u64, n: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0..p, n), 0..=n + 1)
}

fn pair_strategy(p: u64) -> impl Strategy<Value = (usize, Vec<Vec<u64>>, Vec<Vec<u64>>)> {
    (1usize..=3).prop_flat_map(move |n| (Just(n), gens_strategy(p, n), gens_strategy(p, n)))
}

fn rational_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-2i64..=2, r * c)))
}

proptest! {
    #[test]
    fn gf3_sum_intersect_match_enumeration((n, ga, gb) in pair_strategy(3)) {
        let f = gf(3);
        let (a, b) = (Subspace::span(&f, n, &ga), Subspace::span(&f, n, &gb));
        let (ma, mb) = (span_members(&f, n, &ga), span_members(&f, n, &gb));
        let joined: Vec<Vec<u64>> = ga.iter().chain(&gb).cloned().collect();
        prop_assert_eq!(members(&f, &sum(&f, &a, &b).unwrap()), span_members(&f, n, &joined));
        let common: Vec<Vec<u64>> = ma.iter().filter(|v| mb.contains(v)).cloned().collect();
        prop_assert_eq!(members(&f, &intersect(&f, &a, &b).unwrap()), common);
    }

    #[test]
    fn gf2_quotient_representatives((n, ga, gb) in pair_strategy(2)) {
        let f = gf(2);
        let (a, b) = (Subspace::span(&f, n, &ga), Subspace::span(&f, n, &gb));
        let big = sum(&f, &a, &b).unwrap();
        let reps = quotient_basis(&f, &big, &b).unwrap();
        prop_assert_eq!(reps.len(), big.dim() - b.dim());
        // cosets of the representatives' combinations are pairwise distinct and cover `big`
        let rep_span = span_members(&f, n, &reps);
        let mb = members(&f, &b);
        for v in &rep_span {
            if v.iter().any(|&x| x != 0) {
                prop_assert!(!mb.contains(v));
            }
        }
        let mut all: Vec<Vec<u64>> = reps.clone();
        all.extend(b.vectors());
        prop_assert_eq!(span_members(&f, n, &all), members(&f, &big));
    }

    #[test]
    fn rank_matches_row_span_size((n, rows, _) in pair_strategy(2)) {
        let f = gf(2);
        let m = Matrix::from_rows(&rows, n);
        let count = span_members(&f, n, &rows).len();
        prop_assert_eq!(1usize << rank(&f, &m), count);
    }

    #[test]
    fn grassmann_formula_gf5((n, ga, gb) in pair_strategy(5)) {
        let f = gf(5);
        let (a, b) = (Subspace::span(&f, n, &ga), Subspace::span(&f, n, &gb));
        let s = sum(&f, &a, &b).unwrap();
        let i = intersect(&f, &a, &b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&f, &a) && i.is_subspace_of(&f, &b));
        prop_assert!(a.is_subspace_of(&f, &s) && b.is_subspace_of(&f, &s));
    }

    #[test]
    fn rank_nullity_over_q((r, c, data) in rational_matrix()) {
        let q = Rationals;
        let m = Matrix::from_vec(r, c, data.into_iter().map(int).collect());
        let ker = kernel(&q, &m);
        prop_assert_eq!(ker.dim() + rank(&q, &m), c);
        prop_assert_eq!(image(&q, &m).dim(), rank(&q, &m));
        for v in ker.vectors() {
            prop_assert!(m.mul_vec(&q, &v).iter().all(|x| q.is_zero(x)));
        }
    }

    #[test]
    fn orthogonal_complement_over_q((r, c, data) in rational_matrix()) {
        let q = Rationals;
        let rows: Vec<Vec<_>> = data.chunks(c).map(|ch| ch.iter().map(|&x| int(x)).collect()).collect();
        let w = Subspace::span(&q, c, &rows[..r / 2]);
        let v = Subspace::span(&q, c, &rows);
        let h = orth_complement(&q, &w, &v).unwrap();
        prop_assert_eq!(h.dim() + w.dim(), v.dim());
        prop_assert!(h.is_subspace_of(&q, &v));
        for x in h.vectors() {
            for y in w.vectors() {
                prop_assert!(q.is_zero(&q.dot(&x, &y)));
            }
        }
    }
}

proptest! {
    #[test]
    fn canonical_form_and_rref_idempotence((r, c, data) in rational_matrix()) {
        let q = Rationals;
        let m = Matrix::from_vec(r, c, data.into_iter().map(int).collect());
        let once = rref(&q, &m).reduced;
        prop_assert_eq!(rref(&q, &once).reduced, once);
        let s = image(&q, &m);
        prop_assert_eq!(image(&q, s.basis()), s.clone());
        // a different spanning set of the same space gives the same basis
        let doubled: Vec<Vec<_>> = s.vectors().into_iter().chain(s.vectors()).collect();
        prop_assert_eq!(Subspace::span(&q, r, &doubled), s);
    }

    #[test]
    fn orthogonal_split_over_q((r, c, data) in rational_matrix()) {
        let q = Rationals;
        let rows: Vec<Vec<_>> = data.chunks(c).map(|ch| ch.iter().map(|&x| int(x)).collect()).collect();
        let w = Subspace::span(&q, c, &rows[..(r + 1) / 2]);
        let v = Subspace::span(&q, c, &rows);
        let h = orth_complement(&q, &w, &v).unwrap();
        prop_assert_eq!(sum(&q, &w, &h).unwrap(), v);
        prop_assert!(intersect(&q, &w, &h).unwrap().is_zero());
    }
}

/// Every subspace of GF(2)^n, one spanning set each, for n <= 4.
fn all_gf2_subspaces(n: usize) -> Vec<Subspace<u64>> {
    let f = gf(2);
    let vs = all_vectors(2, n);
    let mut out: Vec<Subspace<u64>> = Vec::new();
    // subsets of size at most 4 of nonzero vectors reach every subspace
    let nonzero: Vec<&Vec<u64>> = vs.iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    for size in 0..=n {
        for pick in itertools::Itertools::combinations(nonzero.iter(), size) {
            let gens: Vec<Vec<u64>> = pick.into_iter().map(|v| (*v).clone()).collect();
            let s = Subspace::span(&f, n, &gens);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

#[test]
fn grassmann_exhaustive_gf2() {
    let f = gf(2);
    // number of subspaces of GF(2)^n: 2, 5, 16, 67
    for (n, expected) in [(1, 2), (2, 5), (3, 16), (4, 67)] {
        let subs = all_gf2_subspaces(n);
        assert_eq!(subs.len(), expected);
        for a in &subs {
            for b in &subs {
                let s = sum(&f, a, b).unwrap();
                let i = intersect(&f, a, b).unwrap();
                assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            }
        }
    }
}

#[test]
fn left_inverse_of_injective_matrix() {
    let q = Rationals;
    let m = Matrix::from_vec(3, 2, [1, 0, 1, 1, 0, 2].into_iter().map(int).collect());
    let l = left_inverse(&q, &m).unwrap();
    assert_eq!(l.mul(&q, &m), Matrix::identity(&q, 2));
    let singular = Matrix::from_vec(2, 2, [1, 2, 2, 4].into_iter().map(int).collect());
    assert!(left_inverse(&q, &singular).is_none());
}

#[test]
fn quotient_requires_containment() {
    let f = gf(2);
    let a = Subspace::span(&f, 2, &[vec![1, 0]]);
    let b = Subspace::span(&f, 2, &[vec![0, 1]]);
    assert!(quotient_basis(&f, &a, &b).is_err());
    assert!(orth_complement(&f, &a, &a).is_err());
}
