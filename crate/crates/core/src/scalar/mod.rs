//! Exact scalars.
//!
//! Everything is built on [`Rational`]. [`Quadratic`] adjoins one real square
//! root, [`Complex`] adjoins `i` to any real field, and [`Laurent`] adds the
//! formal symbols `pi` and `t` used when exponentiating derivations.

mod complex;
mod expr;
mod laurent;
mod quadratic;
mod tagged;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use complex::Complex;
pub use expr::{parse_expr, Expr};
pub use laurent::{Laurent, Monomial};
pub use quadratic::Quadratic;
pub use tagged::{FromScalar, Scalar, ScalarKind, ToScalar};

/// Arbitrary precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// The value as a rational number, if it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Result<Self>;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }
}

/// Real fields can be tensored with `i`.
pub trait RealField: Field {
    /// Sign of the element: -1, 0 or 1.
    fn sign(&self) -> i32;
}

impl Ring for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Field for Rational {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl RealField for Rational {
    fn sign(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Serde adapter storing a [`Rational`] as a string such as `"-3/2"`.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{Rational, Ring, Scalar};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = Scalar::deserialize(d)?;
        s.to_rational()
            .ok_or_else(|| serde::de::Error::custom(format!("{s} is not rational")))
    }
}

/// Shorthand for `n/d` as a [`Rational`].
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer [`Rational`].
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Square-free part of a positive integer, with the square factor pulled out.
///
/// Returns `(s, f)` with `n = f^2 s` and `s` square-free.
pub fn square_free(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut k = 0;
        while m.is_multiple_of(p) {
            m /= p;
            k += 1;
        }
        for _ in 0..k / 2 {
            f *= p;
        }
        if k % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (s * m, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_parts() {
        assert_eq!(square_free(12), (3, 2));
        assert_eq!(square_free(5), (5, 1));
        assert_eq!(square_free(32), (2, 4));
        assert_eq!(square_free(1), (1, 1));
    }

    #[test]
    fn rational_inverse_of_zero_is_an_error() {
        assert_eq!(Rational::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(q(3, 2).inv().unwrap(), q(2, 3));
    }
}
