use num::{BigRational, Complex, One, Zero};

use super::{Configuration, PlanePoint};

/// `re + i im` with exact rational parts.
pub type GaussianRational = Complex<BigRational>;

/// Monic polynomial with coefficients listed from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonicPolynomial {
    coeffs: Vec<GaussianRational>,
}

impl MonicPolynomial {
    pub fn one() -> Self {
        MonicPolynomial {
            coeffs: vec![GaussianRational::one()],
        }
    }

    /// `prod (z - root)` over the given roots, repeated roots included.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a GaussianRational>) -> Self {
        let mut p = Self::one();
        for r in roots {
            p.mul_linear(r);
        }
        p
    }

    /// Multiplies in place by `(z - root)`.
    fn mul_linear(&mut self, root: &GaussianRational) {
        let mut next = vec![GaussianRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - c * root;
        }
        self.coeffs = next;
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| acc * z + c)
    }

    /// Exact division by `(z - root)`; `None` if `root` is not a root.
    pub fn deflate(&self, root: &GaussianRational) -> Option<MonicPolynomial> {
        if self.degree() == 0 {
            return None;
        }
        // synthetic division from the top coefficient down
        let n = self.degree();
        let mut quotient = vec![GaussianRational::zero(); n];
        let mut carry = GaussianRational::zero();
        for i in (1..=n).rev() {
            carry = &self.coeffs[i] + carry * root;
            quotient[i - 1] = carry.clone();
        }
        let remainder = &self.coeffs[0] + carry * root;
        remainder.is_zero().then_some(MonicPolynomial { coeffs: quotient })
    }
}

pub fn point_to_complex(p: &PlanePoint) -> GaussianRational {
    Complex::new(p.a.clone(), p.b.clone())
}

/// `prod_i (z - z_i)^{n_i}` with `z_i = a_i + i b_i`.
pub fn to_polynomial(c: &Configuration) -> MonicPolynomial {
    let roots: Vec<GaussianRational> = c.expanded().iter().map(point_to_complex).collect();
    MonicPolynomial::from_roots(&roots)
}

/// How many times `(z - root)` divides `p`.
pub fn root_multiplicity(p: &MonicPolynomial, root: &GaussianRational) -> usize {
    let mut count = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.deflate(root) {
        count += 1;
        cur = q;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::int;

    fn g(re: i64, im: i64) -> GaussianRational {
        Complex::new(int(re), int(im))
    }

    #[test]
    fn empty_product() {
        let p = to_polynomial(&Configuration::new());
        assert_eq!(p.degree(), 0);
        assert_eq!(p.coefficients(), &[g(1, 0)]);
    }

    #[test]
    fn single_point_above_diagonal() {
        let c: Configuration = [(PlanePoint::new(int(0), int(2)), 1)].into_iter().collect();
        assert_eq!(to_polynomial(&c).coefficients(), &[g(0, -2), g(1, 0)]);
    }

    #[test]
    fn squared_real_root() {
        let c: Configuration = [(PlanePoint::new(int(1), int(0)), 2)].into_iter().collect();
        assert_eq!(to_polynomial(&c).coefficients(), &[g(1, 0), g(-2, 0), g(1, 0)]);
    }

    #[test]
    fn multiplicities_recovered() {
        let c: Configuration = [
            (PlanePoint::new(int(1), int(0)), 2),
            (PlanePoint::new(int(0), int(3)), 1),
        ]
        .into_iter()
        .collect();
        let p = to_polynomial(&c);
        assert_eq!(root_multiplicity(&p, &g(1, 0)), 2);
        assert_eq!(root_multiplicity(&p, &g(0, 3)), 1);
        assert_eq!(root_multiplicity(&p, &g(3, 0)), 0);
        assert!(p.eval(&g(0, 3)).is_zero());
    }
}
