use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, RealField, Rational, Ring};
use crate::error::{Error, Result};

/// `re + i*im` over a real field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Complex<F> {
    pub re: F,
    pub im: F,
}

impl<F: RealField> Complex<F> {
    pub fn new(re: F, im: F) -> Self {
        Complex { re, im }
    }

    pub fn real(re: F) -> Self {
        Complex { re, im: F::zero() }
    }

    pub fn i() -> Self {
        Complex {
            re: F::zero(),
            im: F::one(),
        }
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &F) -> Self {
        Complex {
            re: self.re.clone() * r.clone(),
            im: self.im.clone() * r.clone(),
        }
    }
}

impl<F: RealField> From<F> for Complex<F> {
    fn from(re: F) -> Self {
        Complex::real(re)
    }
}

impl<F: RealField> Zero for Complex<F> {
    fn zero() -> Self {
        Complex::real(F::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<F: RealField> One for Complex<F> {
    fn one() -> Self {
        Complex::real(F::one())
    }
}

impl<F: RealField> Add for Complex<F> {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Complex::new(self.re + o.re, self.im + o.im)
    }
}

impl<F: RealField> Sub for Complex<F> {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Complex::new(self.re - o.re, self.im - o.im)
    }
}

impl<F: RealField> Neg for Complex<F> {
    type Output = Self;

    fn neg(self) -> Self {
        Complex::new(-self.re, -self.im)
    }
}

impl<F: RealField> Mul for Complex<F> {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        Complex::new(re, im)
    }
}

impl<F: RealField> Ring for Complex<F> {
    fn from_rational(q: &Rational) -> Self {
        Complex::real(F::from_rational(q))
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.im.is_zero() {
            self.re.to_rational()
        } else {
            None
        }
    }
}

impl<F: RealField> Field for Complex<F> {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        let ni = n.inv()?;
        Ok(Complex::new(self.re.clone() * ni.clone(), -self.im.clone() * ni))
    }
}

fn is_plain_integer(s: &str) -> bool {
    let t = s.strip_prefix('-').unwrap_or(s);
    !t.is_empty() && t.chars().all(|c| c.is_ascii_digit())
}

impl<F: RealField> fmt::Display for Complex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let s = self.im.to_string();
        let im = match s.as_str() {
            "1" => "i".to_string(),
            "-1" => "-i".to_string(),
            _ if is_plain_integer(&s) => format!("{s}i"),
            _ => match s.strip_prefix('-') {
                Some(rest) => format!("-({rest})i"),
                None => format!("({s})i"),
            },
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if im.starts_with('-') {
            write!(f, "{}{}", self.re, im)
        } else {
            write!(f, "{}+{}", self.re, im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    type G = Complex<Rational>;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(G::i() * G::i(), -G::one());
    }

    #[test]
    fn inverse() {
        let z = G::new(qi(1), qi(2));
        assert_eq!(z.inv().unwrap(), G::new(q(1, 5), q(-2, 5)));
        assert_eq!(z.clone() * z.inv().unwrap(), G::one());
    }

    #[test]
    fn display() {
        assert_eq!(G::new(qi(1), qi(2)).to_string(), "1+2i");
        assert_eq!(G::new(qi(0), qi(-1)).to_string(), "-i");
        assert_eq!(G::new(qi(3), q(-1, 2)).to_string(), "3-(1/2)i");
    }
}
