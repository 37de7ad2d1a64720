use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::time::{unit_of, TimeValue};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{parse_expr, qi, Field, Laurent, Monomial, Quadratic, Rational, Ring};

pub type Exact = Laurent<Quadratic>;

/// Serde adapter writing a [`Monomial`] as text such as `"1/2*pi"` or `"pi^-1*t"`.
pub mod monomial_str {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Monomial, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&m.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Monomial, D::Error> {
        let src = String::deserialize(d)?;
        parse_monomial(&src).map_err(serde::de::Error::custom)
    }
}

pub fn parse_monomial(src: &str) -> Result<Monomial> {
    let v = parse_expr(src)?.eval_laurent()?;
    let mut terms = v.terms();
    let Some((&(pi, t), c)) = terms.next() else {
        return Ok(Monomial::rational(Rational::zero()));
    };
    if terms.next().is_some() {
        return Err(Error::Input(format!("`{src}` is not a single monomial")));
    }
    let coeff = c
        .to_rational()
        .ok_or_else(|| Error::Input(format!("`{src}` has an irrational coefficient")))?;
    Ok(Monomial { coeff, pi, t })
}

/// Log-type unit `u` with `u + norm/u = m`, standing for the symbol `t = log u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSpec {
    pub m: i64,
    #[serde(default = "one_i8")]
    pub norm: i8,
}

fn one_i8() -> i8 {
    1
}

impl UnitSpec {
    pub fn value(&self) -> Quadratic {
        unit_of(self.m, self.norm)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub i: usize,
    pub j: usize,
    /// `D e_i = omega e_j`, `D e_j = -omega e_i`.
    #[serde(with = "crate::scalar::rational_str")]
    pub omega: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PartShape {
    Nilpotent {
        #[serde(with = "rational_rows")]
        matrix: Matrix<Rational>,
    },
    Diagonal {
        #[serde(with = "rational_vec")]
        entries: Vec<Rational>,
    },
    Rotation { planes: Vec<Plane> },
}

/// `rate * shape`, with the rate a monomial in `pi` and `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivationPart {
    #[serde(with = "monomial_str", default = "Monomial::one")]
    pub rate: Monomial,
    #[serde(flatten)]
    pub shape: PartShape,
}

/// A derivation split into pairwise commuting parts with known exponentials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuredDerivation {
    pub dim: usize,
    pub parts: Vec<DerivationPart>,
    /// Value of `t` inside rates, when the exponentiation time is not log-type.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<UnitSpec>,
}

mod rational_rows {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix<Rational>, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Matrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|x| parse_rational(x))
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn parse_rational(src: &str) -> Result<Rational> {
    parse_expr(src)?
        .eval_laurent()?
        .to_rational()
        .ok_or_else(|| Error::NotInField(format!("`{src}` is not rational")))
}

impl DerivationPart {
    pub fn new(rate: Monomial, shape: PartShape) -> Self {
        DerivationPart { rate, shape }
    }

    /// The rational matrix, without the rate.
    pub fn matrix(&self, dim: usize) -> Matrix<Rational> {
        match &self.shape {
            PartShape::Nilpotent { matrix } => matrix.clone(),
            PartShape::Diagonal { entries } => {
                let mut m = Matrix::zeros(dim, dim);
                for (i, x) in entries.iter().enumerate() {
                    m[(i, i)] = x.clone();
                }
                m
            }
            PartShape::Rotation { planes } => {
                let mut m = Matrix::zeros(dim, dim);
                for p in planes {
                    m[(p.j, p.i)] = p.omega.clone();
                    m[(p.i, p.j)] = -p.omega.clone();
                }
                m
            }
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        match &self.shape {
            PartShape::Nilpotent { matrix } => {
                if matrix.rows() != dim || matrix.cols() != dim {
                    return Err(Error::Dimension(format!("nilpotent part is not {dim}x{dim}")));
                }
                if !matrix.is_nilpotent() {
                    return Err(Error::Input("nilpotent part is not nilpotent".into()));
                }
            }
            PartShape::Diagonal { entries } => {
                if entries.len() != dim {
                    return Err(Error::Dimension(format!("diagonal part has {} entries, expected {dim}", entries.len())));
                }
            }
            PartShape::Rotation { planes } => {
                let mut used = vec![false; dim];
                for p in planes {
                    if p.i >= dim || p.j >= dim || p.i == p.j || used[p.i] || used[p.j] {
                        return Err(Error::Input(format!("bad rotation plane ({}, {})", p.i, p.j)));
                    }
                    used[p.i] = true;
                    used[p.j] = true;
                }
            }
        }
        Ok(())
    }
}

impl StructuredDerivation {
    pub fn new(dim: usize, parts: Vec<DerivationPart>) -> Result<Self> {
        let d = StructuredDerivation { dim, parts, unit: None };
        d.validate()?;
        Ok(d)
    }

    pub fn with_unit(mut self, unit: UnitSpec) -> Self {
        self.unit = Some(unit);
        self
    }

    /// Parts well formed and pairwise commuting.
    pub fn validate(&self) -> Result<()> {
        for p in &self.parts {
            p.validate(self.dim)?;
        }
        let ms: Vec<_> = self.parts.iter().map(|p| p.matrix(self.dim)).collect();
        for a in 0..ms.len() {
            for b in a + 1..ms.len() {
                if !ms[a].commutator(&ms[b]).is_zero() {
                    return Err(Error::NotCommuting(format!("parts {a} and {b}")));
                }
            }
        }
        Ok(())
    }

    /// `D` itself, with the rates as symbolic factors.
    pub fn matrix(&self) -> Matrix<Exact> {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for p in &self.parts {
            let rate = p.rate.to_laurent::<Quadratic>();
            acc = acc.add(&p.matrix(self.dim).map(Exact::from_rational).scale(&rate));
        }
        acc
    }

    /// `Tr D` as a monomial multiple of each rate, summed per rate.
    fn trace_exponents(&self, time: &Monomial) -> Vec<Monomial> {
        self.parts
            .iter()
            .filter_map(|p| match &p.shape {
                PartShape::Diagonal { entries } => {
                    let tr = entries.iter().fold(Rational::zero(), |a, x| a + x);
                    Some(p.rate.mul(time).scale(&tr))
                }
                _ => None,
            })
            .collect()
    }
}

/// `e^x` for a monomial `x`, when it lands in the field.
fn exp_monomial(x: &Monomial, unit: Option<&Quadratic>) -> Result<Quadratic> {
    if x.is_zero() {
        return Ok(Quadratic::one());
    }
    let fail = || Error::NotExactlyEvaluable(format!("exp({x})"));
    if x.pi != 0 || x.t != 1 || !x.coeff.is_integer() {
        return Err(fail());
    }
    let u = unit.ok_or_else(fail)?;
    let k = x.coeff.to_integer().to_i32().ok_or_else(fail)?;
    let base = if k < 0 { u.inv()? } else { u.clone() };
    Ok(Ring::pow(&base, k.unsigned_abs()))
}

/// `(cos x, sin x)` for `x` a multiple of `pi/2` or `pi/3`.
fn cos_sin(x: &Monomial) -> Result<(Quadratic, Quadratic)> {
    if x.is_zero() {
        return Ok((Quadratic::one(), Quadratic::zero()));
    }
    let fail = || Error::NotExactlyEvaluable(format!("rotation by {x}"));
    if x.pi != 1 || x.t != 0 {
        return Err(fail());
    }
    let r = &x.coeff;
    let half = Quadratic::rational(Rational::new(BigInt::one(), BigInt::from(2)));
    let root = Quadratic::sqrt(3) * half.clone();
    let q = |n: i64| Quadratic::rational(qi(n));
    let twice = r * qi(2);
    if twice.is_integer() {
        let k = twice.to_integer().mod_floor(&BigInt::from(4)).to_i64().unwrap();
        return Ok(match k {
            0 => (q(1), q(0)),
            1 => (q(0), q(1)),
            2 => (q(-1), q(0)),
            _ => (q(0), q(-1)),
        });
    }
    let thrice = r * qi(3);
    if thrice.is_integer() {
        let k = thrice.to_integer().mod_floor(&BigInt::from(6)).to_i64().unwrap();
        return Ok(match k {
            1 => (half.clone(), root),
            2 => (-half.clone(), root),
            4 => (-half.clone(), -root),
            5 => (half.clone(), -root),
            _ => unreachable!("multiples of pi are caught above"),
        });
    }
    Err(fail())
}

fn unit_for(d: &StructuredDerivation, t: &TimeValue) -> Result<Option<Quadratic>> {
    match (t.unit(), d.unit) {
        (Some(a), Some(b)) if a != b.value() => Err(Error::Input(format!(
            "time unit {a} differs from derivation unit {}",
            b.value()
        ))),
        (Some(a), _) => Ok(Some(a)),
        (None, b) => Ok(b.map(|b| b.value())),
    }
}

fn part_exp(p: &DerivationPart, dim: usize, time: &Monomial, unit: Option<&Quadratic>) -> Result<Matrix<Exact>> {
    let s = p.rate.mul(time);
    let c = |x: Quadratic| Exact::constant(x);
    match &p.shape {
        PartShape::Nilpotent { matrix } => {
            let x = matrix.map(Exact::from_rational).scale(&s.to_laurent());
            let mut term = Matrix::identity(dim);
            let mut acc = Matrix::identity(dim);
            for k in 1..=dim {
                term = term.mul(&x).scale(&Exact::from_rational(&Rational::new(BigInt::one(), BigInt::from(k))));
                if term.is_zero() {
                    break;
                }
                acc = acc.add(&term);
            }
            Ok(acc)
        }
        PartShape::Diagonal { entries } => {
            let mut m = Matrix::zeros(dim, dim);
            for (i, d) in entries.iter().enumerate() {
                m[(i, i)] = c(exp_monomial(&s.scale(d), unit)?);
            }
            Ok(m)
        }
        PartShape::Rotation { planes } => {
            let mut m = Matrix::identity(dim);
            for pl in planes {
                let (co, si) = cos_sin(&s.scale(&pl.omega))?;
                m[(pl.i, pl.i)] = c(co.clone());
                m[(pl.j, pl.j)] = c(co);
                m[(pl.j, pl.i)] = c(si.clone());
                m[(pl.i, pl.j)] = c(-si);
            }
            Ok(m)
        }
    }
}

/// `exp(t D)` exactly, with `det = exp(t Tr D)` confirmed.
pub fn exp_exact(d: &StructuredDerivation, t: &TimeValue) -> Result<Matrix<Exact>> {
    d.validate()?;
    t.validate()?;
    let unit = unit_for(d, t)?;
    let time = t.monomial();
    let mut acc = Matrix::identity(d.dim);
    for p in &d.parts {
        acc = acc.mul(&part_exp(p, d.dim, &time, unit.as_ref())?);
    }
    let mut expected = Quadratic::one();
    for x in d.trace_exponents(&time) {
        expected = expected * exp_monomial(&x, unit.as_ref())?;
    }
    let (_, det) = unit_pivot_inverse(&acc)?;
    if det != Exact::constant(expected.clone()) {
        return Err(Error::Internal(format!("det exp(tD) = {det}, expected {expected}")));
    }
    Ok(acc)
}

/// Gauss-Jordan over `Laurent<K>` pivoting on single-term entries only.
///
/// Returns the inverse and the determinant.
pub fn unit_pivot_inverse<K: Field>(m: &Matrix<Laurent<K>>) -> Result<(Matrix<Laurent<K>>, Laurent<K>)> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv: Matrix<Laurent<K>> = Matrix::identity(n);
    let mut det = Laurent::<K>::one();
    for c in 0..n {
        // prefer constant pivots, they keep entries short
        let pick = (c..n)
            .filter(|&r| a[(r, c)].is_unit())
            .min_by_key(|&r| (a[(r, c)].as_constant().is_none(), r));
        let Some(r) = pick else {
            if (c..n).all(|r| a[(r, c)].is_zero()) {
                return Err(Error::Singular);
            }
            return Err(Error::Unsupported(format!("no monomial pivot in column {c}")));
        };
        if r != c {
            for j in 0..n {
                let (x, y) = (a[(r, j)].clone(), a[(c, j)].clone());
                a[(r, j)] = y;
                a[(c, j)] = x;
                let (x, y) = (inv[(r, j)].clone(), inv[(c, j)].clone());
                inv[(r, j)] = y;
                inv[(c, j)] = x;
            }
            det = -det;
        }
        let p = a[(c, c)].clone();
        det = det * p.clone();
        let pinv = p.unit_inverse().expect("pivot is a unit");
        for j in 0..n {
            a[(c, j)] = a[(c, j)].clone() * pinv.clone();
            inv[(c, j)] = inv[(c, j)].clone() * pinv.clone();
        }
        for r2 in 0..n {
            if r2 == c || a[(r2, c)].is_zero() {
                continue;
            }
            let f = a[(r2, c)].clone();
            for j in 0..n {
                let x = a[(c, j)].clone() * f.clone();
                a[(r2, j)] = a[(r2, j)].clone() - x;
                let y = inv[(c, j)].clone() * f.clone();
                inv[(r2, j)] = inv[(r2, j)].clone() - y;
            }
        }
    }
    Ok((inv, det))
}

/// The integer matrix behind `m`, if every entry is an integer constant.
pub fn to_integer_matrix(m: &Matrix<Exact>) -> Option<Matrix<Rational>> {
    let rows = m
        .to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_rational().filter(|q| q.is_integer()))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Matrix::from_rows(rows).ok()
}

pub(crate) fn is_plus_minus_one(q: &Rational) -> bool {
    q.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::unit_time;
    use crate::scalar::q;
    use proptest::prelude::*;

    fn rot(planes: &[(usize, usize, i64)]) -> PartShape {
        PartShape::Rotation {
            planes: planes.iter().map(|&(i, j, w)| Plane { i, j, omega: qi(w) }).collect(),
        }
    }

    fn nakamura_a(n: usize) -> StructuredDerivation {
        let planes: Vec<_> = (0..n).flat_map(|k| [(4 * k, 4 * k + 1, 1), (4 * k + 2, 4 * k + 3, -1)]).collect();
        StructuredDerivation::new(4 * n, vec![DerivationPart::new(Monomial::one(), rot(&planes))]).unwrap()
    }

    fn nakamura_b(n: usize) -> StructuredDerivation {
        let entries = (0..n).flat_map(|_| [qi(1), qi(1), qi(-1), qi(-1)]).collect();
        StructuredDerivation::new(4 * n, vec![DerivationPart::new(Monomial::one(), PartShape::Diagonal { entries })]).unwrap()
    }

    fn c(x: Quadratic) -> Exact {
        Exact::constant(x)
    }

    #[test]
    fn rotation_at_pi_is_minus_identity() {
        for n in 1..=3 {
            let e = exp_exact(&nakamura_a(n), &TimeValue::pi(qi(1))).unwrap();
            assert_eq!(e, Matrix::identity(4 * n).scale(&-Exact::one()));
        }
    }

    #[test]
    fn hyperbolic_at_unit_time() {
        let t = unit_time(3).unwrap();
        let a = t.unit().unwrap();
        let e = exp_exact(&nakamura_b(1), &t).unwrap();
        let ai = a.inv().unwrap();
        for (i, x) in [a.clone(), a.clone(), ai.clone(), ai].into_iter().enumerate() {
            assert_eq!(e[(i, i)], c(x));
        }
        assert_eq!(a.radicand(), 5);
    }

    #[test]
    fn nilpotent_block_is_a_polynomial() {
        let mut n = Matrix::zeros(3, 3);
        n[(1, 0)] = qi(1);
        n[(2, 1)] = qi(1);
        let d = StructuredDerivation::new(3, vec![DerivationPart::new(Monomial::one(), PartShape::Nilpotent { matrix: n })]).unwrap();
        let e = exp_exact(&d, &TimeValue::Rational { q: q(1, 2) }).unwrap();
        assert_eq!(e[(1, 0)], Exact::from_rational(&q(1, 2)));
        assert_eq!(e[(2, 0)], Exact::from_rational(&q(1, 8)));
        let e = exp_exact(&d, &TimeValue::pi(qi(1))).unwrap();
        assert_eq!(e[(2, 0)], Exact::monomial(Quadratic::rational(q(1, 2)), 2, 0));
    }

    #[test]
    fn sixty_degrees() {
        let d = StructuredDerivation::new(2, vec![DerivationPart::new(Monomial::one(), rot(&[(0, 1, 1)]))]).unwrap();
        let e = exp_exact(&d, &TimeValue::pi(q(1, 3))).unwrap();
        assert_eq!(e[(1, 0)], c(Quadratic::new(qi(0), q(1, 2), 3)));
        assert!(matches!(
            exp_exact(&d, &TimeValue::pi(q(1, 4))),
            Err(Error::NotExactlyEvaluable(_))
        ));
        assert!(matches!(
            exp_exact(&d, &TimeValue::Rational { q: qi(1) }),
            Err(Error::NotExactlyEvaluable(_))
        ));
    }

    #[test]
    fn symbolic_rate_uses_derivation_unit() {
        // rate t/pi at time pi, as for exp(pi A_p) with p = s_m/pi
        let rate = Monomial { coeff: qi(1), pi: -1, t: 1 };
        let d = StructuredDerivation::new(
            2,
            vec![DerivationPart::new(rate, PartShape::Diagonal { entries: vec![qi(-1), qi(1)] })],
        )
        .unwrap();
        assert!(exp_exact(&d, &TimeValue::pi(qi(1))).is_err());
        let d = d.with_unit(UnitSpec { m: 1, norm: -1 });
        let e = exp_exact(&d, &TimeValue::pi(qi(1))).unwrap();
        let u = unit_of(1, -1);
        assert_eq!(e[(1, 1)], c(u.clone()));
        assert_eq!(e[(0, 0)], c(u.inv().unwrap()));
    }

    #[test]
    fn non_commuting_parts_are_rejected() {
        let mut n = Matrix::zeros(2, 2);
        n[(1, 0)] = qi(1);
        let parts = vec![
            DerivationPart::new(Monomial::one(), PartShape::Nilpotent { matrix: n }),
            DerivationPart::new(Monomial::one(), PartShape::Diagonal { entries: vec![qi(1), qi(-1)] }),
        ];
        assert!(matches!(StructuredDerivation::new(2, parts), Err(Error::NotCommuting(_))));
    }

    #[test]
    fn json_shape() {
        let d = nakamura_a(1);
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["parts"][0]["kind"], "rotation");
        assert_eq!(v["parts"][0]["rate"], "1");
        let back: StructuredDerivation = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
        assert_eq!(parse_monomial("pi^-1*t").unwrap(), Monomial { coeff: qi(1), pi: -1, t: 1 });
    }

    proptest! {
        #[test]
        fn exp_is_additive_in_time(a in -8i64..=8, b in -8i64..=8, w in -2i64..=2, s in -3i64..=3) {
            let mut n = Matrix::zeros(4, 4);
            n[(2, 0)] = qi(s);
            n[(3, 1)] = qi(s);
            let d = StructuredDerivation::new(4, vec![
                DerivationPart::new(Monomial::one(), rot(&[(0, 1, w), (2, 3, w)])),
                DerivationPart::new(Monomial::one(), PartShape::Nilpotent { matrix: n }),
            ]).unwrap();
            let (ta, tb) = (TimeValue::pi(q(a, 2)), TimeValue::pi(q(b, 2)));
            let sum = exp_exact(&d, &TimeValue::pi(q(a + b, 2))).unwrap();
            prop_assert_eq!(sum, exp_exact(&d, &ta).unwrap().mul(&exp_exact(&d, &tb).unwrap()));
        }

        #[test]
        fn unit_powers_are_additive(m in 3i64..=10, a in -3i64..=3, b in -3i64..=3) {
            let d = nakamura_b(1);
            let t = |k: i64| unit_time(m).unwrap().scale(&qi(k));
            let lhs = exp_exact(&d, &t(a + b)).unwrap();
            prop_assert_eq!(lhs, exp_exact(&d, &t(a)).unwrap().mul(&exp_exact(&d, &t(b)).unwrap()));
        }
    }
}
