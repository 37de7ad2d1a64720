//! Univariate polynomials over the rationals.

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::scalar::{Field, Rational, Ring};

/// Coefficients from low to high degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * Rational::from_i64(i as i64))
                .collect(),
        )
    }

    fn monic(self) -> Poly {
        match self.0.last().cloned() {
            Some(lead) => Poly::new(self.0.into_iter().map(|c| c / lead.clone()).collect()),
            None => self,
        }
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = r[k].clone() / lead.clone();
            for i in 0..=dd {
                r[k - dd + i] = r[k - dd + i].clone() - f.clone() * d.0[i].clone();
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = r[k].clone() / lead.clone();
            q[k - dd] = f.clone();
            for i in 0..=dd {
                r[k - dd + i] = r[k - dd + i].clone() - f.clone() * d.0[i].clone();
            }
            r.pop();
        }
        Poly::new(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Interpolating polynomial through `(x_i, y_i)`.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Poly {
        let mut acc = vec![Rational::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // basis polynomial l_i
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] = next[k + 1].clone() + c.clone();
                    next[k] = next[k].clone() - c.clone() * xj.clone();
                }
                basis = next;
                denom *= xi.clone() - xj.clone();
            }
            let f = yi.clone() / denom;
            for (k, c) in basis.into_iter().enumerate() {
                acc[k] = acc[k].clone() + c * f.clone();
            }
        }
        Poly::new(acc)
    }
}

/// Characteristic polynomial coefficients `c_0..c_n` of `det(x I - m)`.
pub fn char_poly(m: &Matrix<Rational>) -> Vec<Rational> {
    let n = m.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        mk = m.mul(&mk).add(&Matrix::identity(n).scale(&c[n - k + 1]));
        let t = m.mul(&mk).trace();
        c[n - k] = -t * Rational::from_i64(k as i64).inv().unwrap();
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn interpolation_recovers_quadratic() {
        let f = p(&[1, -2, 3]);
        let pts: Vec<_> = (0..3).map(|i| (qi(i), f.eval(&qi(i)))).collect();
        assert_eq!(Poly::interpolate(&pts), f);
    }

    #[test]
    fn characteristic_polynomial_of_rotation() {
        let m = Matrix::from_rows(vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]]).unwrap();
        assert_eq!(char_poly(&m), vec![qi(1), qi(0), qi(1)]);
    }
}
