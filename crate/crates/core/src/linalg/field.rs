//! Coefficient fields: prime fields GF(p) and the rationals.

use std::fmt;
use std::hash::Hash;

use num::{BigInt, BigRational, One, Zero};

use super::LinalgError;

/// Largest admissible prime; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Which coefficient field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

/// Generic code to run against whichever concrete field a [`FieldSpec`] names.
pub trait FieldVisitor {
    type Output;
    fn visit<F: Field>(self, field: &F) -> Self::Output;
}

impl FieldSpec {
    pub fn visit<V: FieldVisitor>(&self, v: V) -> V::Output {
        match *self {
            FieldSpec::Prime(p) => v.visit(&PrimeField { p }),
            FieldSpec::Rationals => v.visit(&Rationals),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in an exact field. Elements carry no reference to the field, so
/// every operation goes through the field value.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn dot(&self, u: &[Self::Elem], v: &[Self::Elem]) -> Self::Elem {
        u.iter()
            .zip(v)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

/// The prime field GF(p) with residues stored as `u64` in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a % self.p != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid on (a, p)
        let (mut old_r, mut r) = (*a as i64, self.p as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        old_s.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// Arbitrary-precision rationals in lowest terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_checks() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(5).is_ok());
        assert_eq!(FieldSpec::prime(4), Err(LinalgError::NotPrime(4)));
        assert_eq!(FieldSpec::prime(1), Err(LinalgError::NotPrime(1)));
        assert!(FieldSpec::prime(MAX_PRIME).is_ok());
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn gf_inverses() {
        for p in [2u64, 3, 5, 7, 101] {
            let k = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(k.mul(&a, &k.inv(&a)), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn gf_negative_embedding() {
        let k = PrimeField::new(5).unwrap();
        assert_eq!(k.from_i64(-1), 4);
        assert_eq!(k.add(&k.from_i64(-1), &1), 0);
    }
}
