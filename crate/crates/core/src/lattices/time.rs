use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{qi, rational_str, Monomial, Quadratic, Rational};

fn one_q() -> Rational {
    Rational::one()
}

fn is_one_q(q: &Rational) -> bool {
    q.is_one()
}

fn one_i8() -> i8 {
    1
}

fn is_one_i8(n: &i8) -> bool {
    *n == 1
}

/// An exact time at which a derivation is exponentiated.
///
/// `LogUnit` is `q log(u)` where `u` is the unit with `u + norm/u = m`, so
/// `norm = 1` gives `u = (m + sqrt(m^2 - 4))/2` and `norm = -1` gives
/// `u = (m + sqrt(m^2 + 4))/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TimeValue {
    Pi {
        #[serde(with = "rational_str")]
        q: Rational,
    },
    LogUnit {
        m: i64,
        #[serde(default = "one_i8", skip_serializing_if = "is_one_i8")]
        norm: i8,
        #[serde(
            default = "one_q",
            skip_serializing_if = "is_one_q",
            with = "rational_str"
        )]
        q: Rational,
    },
    Rational {
        #[serde(with = "rational_str")]
        q: Rational,
    },
}

/// `t_m = log((m + sqrt(m^2 - 4))/2)`.
pub fn unit_time(m: i64) -> Result<TimeValue> {
    if m < 3 {
        return Err(Error::Precondition(format!("unit time needs m >= 3, got {m}")));
    }
    Ok(TimeValue::LogUnit {
        m,
        norm: 1,
        q: Rational::one(),
    })
}

impl TimeValue {
    pub fn pi(q: Rational) -> Self {
        TimeValue::Pi { q }
    }

    /// `log(u)` for `u - 1/u = m`.
    pub fn log_unit_minus(m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::Precondition(format!("need m >= 1, got {m}")));
        }
        Ok(TimeValue::LogUnit {
            m,
            norm: -1,
            q: Rational::one(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TimeValue::LogUnit { m, norm: 1, .. } if *m >= 3 => Ok(()),
            TimeValue::LogUnit { m, norm: -1, .. } if *m >= 1 => Ok(()),
            TimeValue::LogUnit { m, norm, .. } => Err(Error::Input(format!(
                "log_unit with m = {m}, norm = {norm} is not a nontrivial unit"
            ))),
            _ => Ok(()),
        }
    }

    /// The unit `u` of a log-type time.
    pub fn unit(&self) -> Option<Quadratic> {
        match self {
            TimeValue::LogUnit { m, norm, .. } => Some(unit_of(*m, *norm)),
            _ => None,
        }
    }

    /// The time as a monomial in `pi` and `t = log(u)`.
    pub fn monomial(&self) -> Monomial {
        match self {
            TimeValue::Pi { q } => Monomial::pi(q.clone()),
            TimeValue::LogUnit { q, .. } => Monomial::log(q.clone()),
            TimeValue::Rational { q } => Monomial::rational(q.clone()),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        match self {
            TimeValue::Pi { q } => TimeValue::Pi { q: q * r },
            TimeValue::LogUnit { m, norm, q } => TimeValue::LogUnit {
                m: *m,
                norm: *norm,
                q: q * r,
            },
            TimeValue::Rational { q } => TimeValue::Rational { q: q * r },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            TimeValue::Pi { q } | TimeValue::LogUnit { q, .. } | TimeValue::Rational { q } => {
                q.is_zero()
            }
        }
    }
}

pub(crate) fn unit_of(m: i64, norm: i8) -> Quadratic {
    let disc = m * m - 4 * norm as i64;
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    Quadratic::new(qi(m) * half.clone(), half, disc as u64)
}

impl fmt::Display for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeValue::Pi { q } => write!(f, "{q}*pi"),
            TimeValue::LogUnit { m, norm, q } => {
                let u = unit_of(*m, *norm);
                if q.is_one() {
                    write!(f, "log({u})")
                } else {
                    write!(f, "{q}*log({u})")
                }
            }
            TimeValue::Rational { q } => write!(f, "{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Field};

    #[test]
    fn units() {
        let u3 = unit_time(3).unwrap().unit().unwrap();
        assert_eq!(u3.to_string(), "(3+√5)/2");
        assert_eq!(u3.clone() + u3.inv().unwrap(), Quadratic::rational(qi(3)));
        let u4 = unit_time(4).unwrap().unit().unwrap();
        assert_eq!(u4, Quadratic::new(qi(2), qi(1), 3));
        assert!(unit_time(2).is_err());
        let v = TimeValue::log_unit_minus(1).unwrap().unit().unwrap();
        assert_eq!(v.clone() - v.inv().unwrap(), Quadratic::rational(qi(1)));
    }

    #[test]
    fn json_shapes() {
        let t: TimeValue = serde_json::from_str(r#"{"type":"pi","q":"1"}"#).unwrap();
        assert_eq!(t, TimeValue::pi(qi(1)));
        let u: TimeValue = serde_json::from_str(r#"{"type":"log_unit","m":3}"#).unwrap();
        assert_eq!(u, unit_time(3).unwrap());
        assert_eq!(serde_json::to_string(&u).unwrap(), r#"{"type":"log_unit","m":3}"#);
        let h = TimeValue::pi(q(1, 2));
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"type":"pi","q":"1/2"}"#);
        let bad: TimeValue = serde_json::from_str(r#"{"type":"log_unit","m":2}"#).unwrap();
        assert!(bad.validate().is_err());
    }
}
