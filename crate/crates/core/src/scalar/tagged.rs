use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_expr, Complex, Field, Quadratic, RealField, Rational, Ring};
use crate::error::{Error, Result};

/// Which layer of the tower a [`Scalar`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarKind {
    Rational,
    Gaussian,
    Quadratic,
    Mixed,
}

/// An element of `Q(i, sqrt(d))` tagged by the smallest subfield containing it.
///
/// This is the interchange type for text and JSON. Arithmetic is exact;
/// operator impls panic on incompatible radicands, the `checked_*` methods
/// return an error instead.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar(Complex<Quadratic>);

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        let irr = !self.0.re.is_rational() || !self.0.im.is_rational();
        match (self.0.im.is_zero(), irr) {
            (true, false) => ScalarKind::Rational,
            (false, false) => ScalarKind::Gaussian,
            (true, true) => ScalarKind::Quadratic,
            (false, true) => ScalarKind::Mixed,
        }
    }

    pub fn value(&self) -> &Complex<Quadratic> {
        &self.0
    }

    pub fn radicand(&self) -> u64 {
        self.0.re.radicand().max(self.0.im.radicand())
    }

    fn compatible(&self, o: &Scalar) -> Result<()> {
        let (a, b) = (self.radicand(), o.radicand());
        if a != 0 && b != 0 && a != b {
            Err(Error::IncompatibleFields(a as i64, b as i64))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar> {
        self.compatible(o)?;
        Ok(self.clone() + o.clone())
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar> {
        self.compatible(o)?;
        Ok(self.clone() * o.clone())
    }

    /// Real part as a quadratic number, if the value is real.
    pub fn to_real(&self) -> Option<Quadratic> {
        self.0.im.is_zero().then(|| self.0.re.clone())
    }

    pub fn to_gaussian(&self) -> Option<Complex<Rational>> {
        Some(Complex::new(
            self.0.re.to_rational()?,
            self.0.im.to_rational()?,
        ))
    }

    /// Parse with named parameters.
    pub fn parse_with(src: &str, params: &dyn Fn(&str) -> Option<Scalar>) -> Result<Scalar> {
        parse_expr(src)?.eval_scalar(params)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar(Complex::real(Quadratic::rational(q)))
    }
}

impl From<Quadratic> for Scalar {
    fn from(q: Quadratic) -> Self {
        Scalar(Complex::real(q))
    }
}

impl From<Complex<Quadratic>> for Scalar {
    fn from(z: Complex<Quadratic>) -> Self {
        Scalar(z)
    }
}

impl From<Complex<Rational>> for Scalar {
    fn from(z: Complex<Rational>) -> Self {
        Scalar(Complex::new(Quadratic::rational(z.re), Quadratic::rational(z.im)))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar(Complex::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar(Complex::one())
    }
}

impl Add for Scalar {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Scalar(self.0 + o.0)
    }
}

impl Sub for Scalar {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Scalar(self.0 - o.0)
    }
}

impl Neg for Scalar {
    type Output = Self;

    fn neg(self) -> Self {
        Scalar(-self.0)
    }
}

impl Mul for Scalar {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Scalar(self.0 * o.0)
    }
}

impl Ring for Scalar {
    fn from_rational(q: &Rational) -> Self {
        Scalar::from(q.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }
}

impl Field for Scalar {
    fn inv(&self) -> Result<Self> {
        Ok(Scalar(self.0.inv()?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse_with(s, &|_| None)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Scalar::from_i64(n)),
        }
    }
}

/// Conversion from the interchange type into a concrete field.
pub trait FromScalar: Sized {
    fn from_scalar(s: &Scalar) -> Result<Self>;
}

impl FromScalar for Rational {
    fn from_scalar(s: &Scalar) -> Result<Self> {
        s.to_rational()
            .ok_or_else(|| Error::NotInField(format!("{s} is not rational")))
    }
}

impl FromScalar for Quadratic {
    fn from_scalar(s: &Scalar) -> Result<Self> {
        s.to_real()
            .ok_or_else(|| Error::NotInField(format!("{s} is not real")))
    }
}

impl FromScalar for Complex<Rational> {
    fn from_scalar(s: &Scalar) -> Result<Self> {
        s.to_gaussian()
            .ok_or_else(|| Error::NotInField(format!("{s} is not in Q(i)")))
    }
}

impl FromScalar for Complex<Quadratic> {
    fn from_scalar(s: &Scalar) -> Result<Self> {
        Ok(s.0.clone())
    }
}

impl FromScalar for Scalar {
    fn from_scalar(s: &Scalar) -> Result<Self> {
        Ok(s.clone())
    }
}

/// Conversion from a concrete field into the interchange type.
pub trait ToScalar {
    fn to_scalar(&self) -> Scalar;
}

impl ToScalar for Rational {
    fn to_scalar(&self) -> Scalar {
        Scalar::from(self.clone())
    }
}

impl ToScalar for Quadratic {
    fn to_scalar(&self) -> Scalar {
        Scalar::from(self.clone())
    }
}

impl<F: RealField + ToScalar> ToScalar for Complex<F> {
    fn to_scalar(&self) -> Scalar {
        let re = self.re.to_scalar();
        let im = self.im.to_scalar();
        re + im * Scalar(Complex::i())
    }
}

impl ToScalar for Scalar {
    fn to_scalar(&self) -> Scalar {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn kinds() {
        assert_eq!("3/2".parse::<Scalar>().unwrap().kind(), ScalarKind::Rational);
        assert_eq!("1+2i".parse::<Scalar>().unwrap().kind(), ScalarKind::Gaussian);
        assert_eq!("(1+√5)/2".parse::<Scalar>().unwrap().kind(), ScalarKind::Quadratic);
        assert_eq!("i√2".parse::<Scalar>().unwrap().kind(), ScalarKind::Mixed);
    }

    #[test]
    fn json_round_trip() {
        for src in ["3/2", "1+2i", "(1+√5)/2", "-i", "2-(1/2)i", "(1-√3)/2+(√3)i"] {
            let v: Scalar = src.parse().unwrap();
            let js = serde_json::to_string(&v).unwrap();
            let back: Scalar = serde_json::from_str(&js).unwrap();
            assert_eq!(v, back, "{src} -> {js}");
        }
        let n: Scalar = serde_json::from_str("7").unwrap();
        assert_eq!(n, Scalar::from(qi(7)));
    }

    #[test]
    fn incompatible_radicands_are_errors() {
        let a: Scalar = "√2".parse().unwrap();
        let b: Scalar = "√3".parse().unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::IncompatibleFields(2, 3))));
        assert!("√2+√3".parse::<Scalar>().is_err());
    }

    #[test]
    fn conversions() {
        let s = Scalar::from(q(-3, 4));
        assert_eq!(Rational::from_scalar(&s).unwrap(), q(-3, 4));
        assert!(Rational::from_scalar(&"i".parse().unwrap()).is_err());
    }
}
