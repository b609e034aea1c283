//! Finite configurations of plane points with multiplicities, their
//! polynomial form, and the bottleneck distance between equal-mass
//! configurations.

mod matching;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::value::{abs_diff, format_value, Value};

pub use matching::{bottleneck_distance, hopcroft_karp, MatchingResult};
pub use poly::{point_to_complex, root_multiplicity, to_polynomial, GaussianRational, MonicPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configurations have different total mass ({left} vs {right})")]
    MassMismatch { left: usize, right: usize },
}

/// The point `z = a + i b`. Ordered lexicographically by `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanePoint {
    pub a: Value,
    pub b: Value,
}

impl PlanePoint {
    pub fn new(a: Value, b: Value) -> Self {
        PlanePoint { a, b }
    }

    /// L-infinity distance.
    pub fn linf(&self, other: &Self) -> Value {
        abs_diff(&self.a, &other.a).max(abs_diff(&self.b, &other.b))
    }

    pub fn transposed(&self) -> Self {
        PlanePoint::new(self.b.clone(), self.a.clone())
    }

    /// `b < a`: the point lies strictly below the diagonal.
    pub fn below_diagonal(&self) -> bool {
        self.b < self.a
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_value(&self.a), format_value(&self.b))
    }
}

/// A finite multiset of plane points; only positive multiplicities are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Configuration {
    entries: BTreeMap<PlanePoint, usize>,
}

impl Configuration {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `multiplicity` copies of `p`. Zero is a no-op.
    pub fn add(&mut self, p: PlanePoint, multiplicity: usize) {
        if multiplicity > 0 {
            *self.entries.entry(p).or_insert(0) += multiplicity;
        }
    }

    pub fn get(&self, p: &PlanePoint) -> usize {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PlanePoint, usize)> {
        self.entries.iter().map(|(p, &m)| (p, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_mass(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.entries.values().copied().max().unwrap_or(0)
    }

    /// Each point repeated by its multiplicity, in lexicographic order.
    pub fn expanded(&self) -> Vec<PlanePoint> {
        self.iter()
            .flat_map(|(p, m)| std::iter::repeat(p.clone()).take(m))
            .collect()
    }

    /// Mirror image under `(a, b) -> (b, a)`.
    pub fn transposed(&self) -> Self {
        let mut out = Self::new();
        for (p, m) in self.iter() {
            out.add(p.transposed(), m);
        }
        out
    }

    /// Total multiplicity of the points satisfying `pred`.
    pub fn mass_where(&self, pred: impl Fn(&PlanePoint) -> bool) -> usize {
        self.iter().filter(|(p, _)| pred(p)).map(|(_, m)| m).sum()
    }
}

impl FromIterator<(PlanePoint, usize)> for Configuration {
    fn from_iter<I: IntoIterator<Item = (PlanePoint, usize)>>(iter: I) -> Self {
        let mut c = Configuration::new();
        for (p, m) in iter {
            c.add(p, m);
        }
        c
    }
}

/// Sorted support and total multiplicity.
pub fn support_mass(c: &Configuration) -> (Vec<PlanePoint>, usize) {
    (c.entries.keys().cloned().collect(), c.total_mass())
}
