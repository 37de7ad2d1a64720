use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{square_free, Field, RealField, Rational, Ring};
use crate::error::{Error, Result};

/// Element `a + b*sqrt(d)` of a real quadratic field.
///
/// `d` is square-free and at least 2, or 0 when `b` is zero. Mixing two
/// different radicands in one arithmetic operation panics; use
/// [`Quadratic::compatible`] to check beforehand.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quadratic {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Quadratic {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            return Self::rational(a);
        }
        let (s, f) = square_free(d);
        if s == 1 {
            return Self::rational(a + b * Rational::from_integer(BigInt::from(f)));
        }
        Quadratic {
            a,
            b: b * Rational::from_integer(BigInt::from(f)),
            d: s,
        }
    }

    pub fn rational(a: Rational) -> Self {
        Quadratic {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    /// `sqrt(n)`, reduced to square-free form.
    pub fn sqrt(n: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn root_part(&self) -> &Rational {
        &self.b
    }

    /// Radicand, or 0 for a rational value.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.d == 0 || other.d == 0 || self.d == other.d
    }

    fn join(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("{}", Error::IncompatibleFields(d as i64, e as i64)),
        }
    }

    /// Conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        Quadratic {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(BigInt::from(self.d));
        self.a.clone() * self.a.clone() - d * self.b.clone() * self.b.clone()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !self.compatible(other) {
            return Err(Error::IncompatibleFields(self.d as i64, other.d as i64));
        }
        Ok(self.clone() * other.clone())
    }
}

impl Zero for Quadratic {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Quadratic {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for Quadratic {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        let d = self.join(&o);
        Quadratic::new(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for Quadratic {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        let d = self.join(&o);
        Quadratic::new(self.a - o.a, self.b - o.b, d)
    }
}

impl Neg for Quadratic {
    type Output = Self;

    fn neg(self) -> Self {
        Quadratic {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for Quadratic {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let d = self.join(&o);
        let dd = Rational::from_integer(BigInt::from(d));
        let a = self.a.clone() * o.a.clone() + self.b.clone() * o.b.clone() * dd;
        let b = self.a * o.b + self.b * o.a;
        Quadratic::new(a, b, d)
    }
}

impl Ring for Quadratic {
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }
}

impl Field for Quadratic {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Quadratic::new(
            self.a.clone() / n.clone(),
            -self.b.clone() / n,
            self.d,
        ))
    }
}

impl RealField for Quadratic {
    fn sign(&self) -> i32 {
        let sa = Signed::signum(&self.a).to_integer();
        let sb = Signed::signum(&self.b).to_integer();
        let (sa, sb) = (i32::try_from(sa).unwrap(), i32::try_from(sb).unwrap());
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a^2 with d b^2
        let d = Rational::from_integer(BigInt::from(self.d));
        let lhs = self.a.clone() * self.a.clone();
        let rhs = d * self.b.clone() * self.b.clone();
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let den = self.a.denom().lcm(self.b.denom());
        let ai = (self.a.clone() * Rational::from_integer(den.clone())).to_integer();
        let bi = (self.b.clone() * Rational::from_integer(den.clone())).to_integer();
        let mut s = String::new();
        if !ai.is_zero() {
            s.push_str(&ai.to_string());
            if bi.is_positive() {
                s.push('+');
            }
        }
        if bi == BigInt::one() {
        } else if bi == -BigInt::one() {
            s.push('-');
        } else {
            s.push_str(&bi.to_string());
        }
        s.push_str(&format!("√{}", self.d));
        if den.is_one() {
            write!(f, "{s}")
        } else if ai.is_zero() {
            write!(f, "{s}/{den}")
        } else {
            write!(f, "({s})/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn golden() -> Quadratic {
        Quadratic::new(q(1, 2), q(1, 2), 5)
    }

    #[test]
    fn golden_ratio_satisfies_its_polynomial() {
        let p = golden();
        let lhs = p.clone() * p.clone();
        let rhs = p + Quadratic::one();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_uses_common_denominator() {
        assert_eq!(golden().to_string(), "(1+√5)/2");
        assert_eq!(Quadratic::new(qi(2), qi(1), 3).to_string(), "2+√3");
        assert_eq!(Quadratic::new(qi(0), q(-3, 2), 7).to_string(), "-3√7/2");
    }

    #[test]
    fn square_factors_are_absorbed() {
        assert_eq!(Quadratic::sqrt(12), Quadratic::new(qi(0), qi(2), 3));
        assert_eq!(Quadratic::sqrt(9), Quadratic::rational(qi(3)));
    }

    #[test]
    fn inverse_and_sign() {
        let u = Quadratic::new(qi(2), qi(1), 3);
        let w = u.inv().unwrap();
        assert_eq!(w, Quadratic::new(qi(2), qi(-1), 3));
        assert_eq!(w.sign(), 1);
        assert_eq!(Quadratic::new(qi(1), qi(-1), 3).sign(), -1);
        assert_eq!(Quadratic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    #[should_panic]
    fn mixing_radicands_panics() {
        let _ = Quadratic::sqrt(2) + Quadratic::sqrt(3);
    }
}
