use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Rational, Ring};
use crate::error::{Error, Result};

/// `coeff * pi^pi * t^t` with a rational coefficient.
///
/// Used for derivation rates and exponentiation times: `t` stands for the
/// logarithm of the unit attached to a certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub coeff: Rational,
    pub pi: i32,
    pub t: i32,
}

impl Monomial {
    pub fn rational(coeff: Rational) -> Self {
        Monomial { coeff, pi: 0, t: 0 }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn pi(coeff: Rational) -> Self {
        Monomial { coeff, pi: 1, t: 0 }
    }

    pub fn log(coeff: Rational) -> Self {
        Monomial { coeff, pi: 0, t: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            coeff: self.coeff.clone() * o.coeff.clone(),
            pi: self.pi + o.pi,
            t: self.t + o.t,
        }
    }

    pub fn scale(&self, r: &Rational) -> Monomial {
        Monomial {
            coeff: self.coeff.clone() * r.clone(),
            pi: self.pi,
            t: self.t,
        }
    }

    pub fn to_laurent<K: Ring>(&self) -> Laurent<K> {
        Laurent::monomial(K::from_rational(&self.coeff), self.pi, self.t)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent::<Rational>())
    }
}

/// Laurent polynomial in the formal symbols `pi` and `t` over `K`.
///
/// The symbols are treated as algebraically independent transcendentals, so
/// a value is rational exactly when only its constant term survives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent<K> {
    terms: BTreeMap<(i32, i32), K>,
}

impl<K: Ring> Laurent<K> {
    pub fn constant(c: K) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: K, pi: i32, t: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((pi, t), c);
        }
        Laurent { terms }
    }

    pub fn pi() -> Self {
        Self::monomial(K::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(K::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &K)> {
        self.terms.iter()
    }

    /// The value when it has no symbolic part.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> Laurent<L> {
        let mut out = Laurent::zero();
        for (&(a, b), c) in &self.terms {
            out = out + Laurent::monomial(f(c), a, b);
        }
        out
    }

    fn insert(&mut self, key: (i32, i32), c: K) {
        let v = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }
}

impl<K: Field> Laurent<K> {
    /// Inverse, defined only for single-term values.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(c.inv().ok()?, -a, -b))
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = o
            .unit_inverse()
            .ok_or_else(|| Error::Unsupported(format!("division by non-monomial {o}")))?;
        Ok(self.clone() * inv)
    }
}

impl<K: Ring> Zero for Laurent<K> {
    fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<K: Ring> One for Laurent<K> {
    fn one() -> Self {
        Self::constant(K::one())
    }
}

impl<K: Ring> Add for Laurent<K> {
    type Output = Self;

    fn add(mut self, o: Self) -> Self {
        for (k, c) in o.terms {
            self.insert(k, c);
        }
        self
    }
}

impl<K: Ring> Sub for Laurent<K> {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<K: Ring> Neg for Laurent<K> {
    type Output = Self;

    fn neg(self) -> Self {
        Laurent {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Ring> Mul for Laurent<K> {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let mut out = Laurent::zero();
        for (&(a, b), c) in &self.terms {
            for (&(a2, b2), c2) in &o.terms {
                out.insert((a + a2, b + b2), c.clone() * c2.clone());
            }
        }
        out
    }
}

impl<K: Ring> Ring for Laurent<K> {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(K::from_rational(q))
    }

    fn to_rational(&self) -> Option<Rational> {
        self.as_constant()?.to_rational()
    }
}

fn needs_parens(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    body.contains(['+', '-', '/', '('])
}

fn symbol(name: &str, e: i32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl<K: Ring> fmt::Display for Laurent<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (&(a, b), c) in &self.terms {
            let syms: Vec<String> = [symbol("pi", a), symbol("t", b)]
                .into_iter()
                .flatten()
                .collect();
            let cs = c.to_string();
            let mut term = if syms.is_empty() {
                cs
            } else if c.is_one() {
                String::new()
            } else if (-c.clone()).is_one() {
                "-".to_string()
            } else if needs_parens(&cs) {
                format!("({cs})*")
            } else {
                format!("{cs}*")
            };
            term.push_str(&syms.join("*"));
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Quadratic};

    type L = Laurent<Quadratic>;

    #[test]
    fn monomials_are_units() {
        let x = L::monomial(Quadratic::rational(q(3, 2)), 1, -1);
        let y = x.unit_inverse().unwrap();
        assert_eq!(x * y, L::one());
        assert!((L::pi() + L::one()).unit_inverse().is_none());
    }

    #[test]
    fn display_and_constants() {
        let x = L::pi() * L::from_i64(-1) + L::t() * L::from_i64(2);
        assert_eq!(x.to_string(), "2*t-pi");
        assert_eq!(L::from_i64(4).as_constant(), Some(Quadratic::rational(qi(4))));
        assert_eq!(x.as_constant(), None);
    }

    #[test]
    fn monomial_products() {
        let m = Monomial::pi(q(1, 2)).mul(&Monomial {
            coeff: qi(4),
            pi: -1,
            t: 1,
        });
        assert_eq!(m, Monomial::log(qi(2)));
    }
}
