use itertools::Itertools;
use proptest::prelude::*;

use refbetti::config::{
    bottleneck_distance, point_to_complex, root_multiplicity, support_mass, to_polynomial, Configuration,
    GaussianRational, MonicPolynomial, PlanePoint,
};
use refbetti::value::{int, ratio, Value};

fn pt(a: Value, b: Value) -> PlanePoint {
    PlanePoint::new(a, b)
}

fn gauss(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(int(re), int(im))
}

/// Minimum over all bijections of the largest matched L-infinity distance.
fn brute_force(c1: &Configuration, c2: &Configuration) -> Value {
    let (l, r) = (c1.expanded(), c2.expanded());
    if l.is_empty() {
        return int(0);
    }
    (0..r.len())
        .permutations(r.len())
        .map(|perm| l.iter().zip(perm).map(|(p, j)| p.linf(&r[j])).max().unwrap())
        .min()
        .unwrap()
}

fn configuration(mass: usize) -> impl Strategy<Value = Configuration> {
    prop::collection::vec((-3i64..=3, -3i64..=3, 1i64..=2), mass).prop_map(|pts| {
        pts.into_iter()
            .map(|(a, b, d)| (pt(ratio(a, d), ratio(b, d)), 1))
            .collect()
    })
}

fn same_mass_pair() -> impl Strategy<Value = (Configuration, Configuration)> {
    (0usize..=6).prop_flat_map(|m| (configuration(m), configuration(m)))
}

fn same_mass_triple() -> impl Strategy<Value = (Configuration, Configuration, Configuration)> {
    (0usize..=5).prop_flat_map(|m| (configuration(m), configuration(m), configuration(m)))
}

proptest! {
    #[test]
    fn matching_is_optimal((c1, c2) in same_mass_pair()) {
        let m = bottleneck_distance(&c1, &c2).unwrap();
        prop_assert_eq!(&m.distance, &brute_force(&c1, &c2));
        // the witness is a bijection of the expanded multisets achieving the distance
        let mut left: Vec<_> = m.witness.iter().map(|(p, _)| p.clone()).collect();
        let mut right: Vec<_> = m.witness.iter().map(|(_, q)| q.clone()).collect();
        left.sort();
        right.sort();
        prop_assert_eq!(left, c1.expanded());
        prop_assert_eq!(right, c2.expanded());
        prop_assert!(m.witness.iter().all(|(p, q)| p.linf(q) <= m.distance));
    }

    #[test]
    fn metric_axioms((a, b, c) in same_mass_triple()) {
        let d = |x: &Configuration, y: &Configuration| bottleneck_distance(x, y).unwrap().distance;
        prop_assert_eq!(d(&a, &a), int(0));
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn polynomial_round_trip((c, _) in same_mass_pair()) {
        let p = to_polynomial(&c);
        prop_assert_eq!(p.degree(), c.total_mass());
        let mut roots = Vec::new();
        for (x, m) in c.iter() {
            let z = point_to_complex(x);
            prop_assert_eq!(root_multiplicity(&p, &z), m);
            roots.extend(std::iter::repeat(z).take(m));
        }
        prop_assert_eq!(MonicPolynomial::from_roots(&roots), p);
    }
}

#[test]
fn small_distances() {
    let c: Configuration = [(pt(int(0), int(2)), 1)].into_iter().collect();
    let d: Configuration = [(pt(ratio(1, 2), ratio(23, 10)), 1)].into_iter().collect();
    assert_eq!(bottleneck_distance(&c, &c).unwrap().distance, int(0));
    assert_eq!(bottleneck_distance(&c, &d).unwrap().distance, ratio(1, 2));
    let big: Configuration = [(pt(int(0), int(2)), 2)].into_iter().collect();
    assert!(bottleneck_distance(&c, &big).is_err());
}

#[test]
fn small_polynomials() {
    assert_eq!(to_polynomial(&Configuration::new()), MonicPolynomial::one());
    let c: Configuration = [(pt(int(0), int(2)), 1)].into_iter().collect();
    assert_eq!(to_polynomial(&c).coefficients(), [gauss(0, -2), gauss(1, 0)]);
    let d: Configuration = [(pt(int(1), int(0)), 2)].into_iter().collect();
    assert_eq!(to_polynomial(&d).coefficients(), [gauss(1, 0), gauss(-2, 0), gauss(1, 0)]);
}

#[test]
fn support_and_mass() {
    let c: Configuration = [(pt(int(0), int(2)), 1), (pt(int(2), int(0)), 3)].into_iter().collect();
    assert_eq!(support_mass(&c), (vec![pt(int(0), int(2)), pt(int(2), int(0))], 4));
}
