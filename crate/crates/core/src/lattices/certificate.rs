use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::exp::{exp_exact, is_plus_minus_one, to_integer_matrix, unit_pivot_inverse, Exact, StructuredDerivation};
use super::time::TimeValue;
use crate::algebra::{bracket_over, AlgebraJson, LieAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{vec, Matrix};
use crate::scalar::{parse_expr, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub derivation: StructuredDerivation,
    pub time: TimeValue,
}

/// One column of a conjugator, read against the exponential `M` of the driver.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColumnSpec {
    Basis {
        i: usize,
    },
    Scaled {
        i: usize,
        #[serde(with = "crate::scalar::rational_str")]
        c: Rational,
    },
    /// `e_i + e_j / (mu_j - mu_i)` for the diagonal entries `mu` of `M`.
    PairFirst { i: usize, j: usize },
    /// `M` applied to the matching `PairFirst` column.
    PairSecond { i: usize, j: usize },
    /// `(M - I) e_i`.
    ShearImage { i: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conjugator {
    Pattern { driver: usize, columns: Vec<ColumnSpec> },
    /// Rows of entries in the expression language (`pi`, `t`, `sqrt`).
    Matrix { rows: Vec<Vec<String>> },
}

/// Data for a lattice `span{t_j} x| exp(span_Z{P e_i})` in `R^k x| N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeCertificate {
    #[serde(default)]
    pub name: String,
    pub nilradical: AlgebraJson,
    pub generators: Vec<Generator>,
    pub conjugator: Conjugator,
    /// Expected `P^{-1} exp(t_j B_j) P`, one integer matrix per generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    /// `P^{-1} exp(t_j B_j) P`, when every entry is an integer.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conjugates: Vec<Vec<Vec<String>>>,
}

impl CertificateReport {
    fn push(&mut self, check: impl Into<String>, witness: Option<String>) {
        self.checks.push(CheckLine {
            check: check.into(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn diagonal_entry(m: &Matrix<Exact>, i: usize) -> Result<Exact> {
    for r in 0..m.rows() {
        if r != i && !m[(r, i)].is_zero() {
            return Err(Error::Unsupported(format!("e{i} is not an eigenvector of the driver")));
        }
    }
    Ok(m[(i, i)].clone())
}

fn pair_first(m: &Matrix<Exact>, i: usize, j: usize) -> Result<Vec<Exact>> {
    let n = m.rows();
    let gap = diagonal_entry(m, j)? - diagonal_entry(m, i)?;
    let c = Exact::one().checked_div(&gap)?;
    let mut v = vec::unit(n, i);
    v[j] = c;
    Ok(v)
}

/// Builds `P` column by column from a pattern over the driver exponential `m`.
pub fn hyperbolic_conjugator(m: &Matrix<Exact>, columns: &[ColumnSpec]) -> Result<Matrix<Exact>> {
    let n = m.rows();
    if columns.len() != n {
        return Err(Error::Dimension(format!("{} columns for dimension {n}", columns.len())));
    }
    let check = |i: usize| {
        if i < n {
            Ok(i)
        } else {
            Err(Error::Input(format!("column index {i} out of range")))
        }
    };
    let cols = columns
        .iter()
        .map(|c| {
            Ok(match *c {
                ColumnSpec::Basis { i } => vec::unit(n, check(i)?),
                ColumnSpec::Scaled { i, ref c } => vec::scale(&vec::unit(n, check(i)?), &Exact::from_rational(c)),
                ColumnSpec::PairFirst { i, j } => pair_first(m, check(i)?, check(j)?)?,
                ColumnSpec::PairSecond { i, j } => m.mul_vec(&pair_first(m, check(i)?, check(j)?)?),
                ColumnSpec::ShearImage { i } => vec::sub(&m.col(check(i)?), &vec::unit(n, i)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(n, &cols))
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Matrix<Exact>> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_expr(x)?.eval_laurent()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed)
}

fn to_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

/// Structure constants in the basis `f_i = P e_i`, or the first irrational one.
fn irrational_constant(alg: &LieAlgebra<Rational>, p: &Matrix<Exact>, pinv: &Matrix<Exact>) -> Option<String> {
    let n = alg.dim();
    let embed = |x: &Rational| Exact::from_rational(x);
    for j in 0..n {
        for k in j + 1..n {
            let b = bracket_over(alg, &p.col(j), &p.col(k), embed);
            let coords = pinv.mul_vec(&b);
            if let Some((l, c)) = coords.iter().enumerate().find(|(_, c)| c.to_rational().is_none()) {
                return Some(format!("[f{j}, f{k}] has f{l}-coefficient {c}"));
            }
        }
    }
    None
}

/// Checks a certificate: derivations, `P` invertible, integer unimodular
/// conjugates, and rational structure constants in the new basis.
pub fn verify_certificate(cert: &LatticeCertificate) -> Result<CertificateReport> {
    let alg: LieAlgebra<Rational> = LieAlgebra::from_json(&cert.nilradical, &|_| None)?;
    let n = alg.dim();
    let mut rep = CertificateReport {
        name: cert.name.clone(),
        passed: false,
        checks: Vec::new(),
        conjugates: Vec::new(),
    };
    if cert.generators.is_empty() {
        return Err(Error::Input("certificate has no generators".into()));
    }
    for (g_idx, g) in cert.generators.iter().enumerate() {
        if g.derivation.dim != n {
            return Err(Error::Dimension(format!("generator {g_idx} acts on dimension {}", g.derivation.dim)));
        }
        let witness = g.derivation.parts.iter().enumerate().find_map(|(p_idx, p)| {
            alg.derivation_defect(&p.matrix(n))
                .map(|(a, b)| format!("generator {g_idx}, part {p_idx} fails on (e{a}, e{b})"))
        });
        rep.push(format!("derivation {g_idx}"), witness);
    }
    let mats: Vec<Matrix<Exact>> = cert.generators.iter().map(|g| g.derivation.matrix()).collect();
    let mut witness = None;
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            if !mats[a].commutator(&mats[b]).is_zero() {
                witness.get_or_insert(format!("generators {a} and {b}"));
            }
        }
    }
    rep.push("commuting", witness);

    let exps = cert
        .generators
        .iter()
        .map(|g| exp_exact(&g.derivation, &g.time))
        .collect::<Result<Vec<_>>>()?;
    let p = match &cert.conjugator {
        Conjugator::Pattern { driver, columns } => {
            let m = exps
                .get(*driver)
                .ok_or_else(|| Error::Input(format!("driver {driver} out of range")))?;
            hyperbolic_conjugator(m, columns)?
        }
        Conjugator::Matrix { rows } => parse_matrix(rows)?,
    };
    if p.rows() != n || !p.is_square() {
        return Err(Error::Dimension(format!("conjugator is not {n}x{n}")));
    }
    let (pinv, _) = unit_pivot_inverse(&p)?;

    for (j, e) in exps.iter().enumerate() {
        let conj = pinv.mul(e).mul(&p);
        match to_integer_matrix(&conj) {
            None => {
                let bad = conj
                    .to_rows()
                    .iter()
                    .flatten()
                    .find(|x| x.to_rational().is_none_or(|q| !q.is_integer()))
                    .map(|x| x.to_string())
                    .unwrap_or_default();
                rep.push(format!("integrality {j}"), Some(format!("entry {bad}")));
            }
            Some(z) => {
                rep.push(format!("integrality {j}"), None);
                let det = z.det();
                let w = (!is_plus_minus_one(&det)).then(|| format!("det = {det}"));
                rep.push(format!("unimodular {j}"), w);
                if let Some(claimed) = cert.claimed.as_ref().and_then(|c| c.get(j)) {
                    let c = Matrix::from_rows(
                        claimed.iter().map(|r| r.iter().map(|&x| crate::scalar::qi(x)).collect()).collect(),
                    )?;
                    let w = (c != z).then(|| "computed conjugate differs from the claimed matrix".to_string());
                    rep.push(format!("claimed {j}"), w);
                }
                rep.conjugates.push(to_strings(&z));
            }
        }
    }
    rep.push("rational basis", irrational_constant(&alg, &p, &pinv));
    rep.passed = rep.checks.iter().all(|c| c.passed);
    Ok(rep)
}

/// `P` as text, entries in the expression language.
pub fn format_matrix(m: &Matrix<Exact>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::exp::{DerivationPart, PartShape, Plane};
    use crate::lattices::unit_time;
    use crate::scalar::{qi, Monomial};

    fn s1_certificate(m: i64) -> LatticeCertificate {
        let rot = PartShape::Rotation {
            planes: vec![
                Plane { i: 0, j: 1, omega: qi(1) },
                Plane { i: 2, j: 3, omega: qi(-1) },
            ],
        };
        let diag = PartShape::Diagonal { entries: vec![qi(1), qi(1), qi(-1), qi(-1)] };
        let gen = |shape, time| Generator {
            derivation: StructuredDerivation::new(4, vec![DerivationPart::new(Monomial::one(), shape)]).unwrap(),
            time,
        };
        LatticeCertificate {
            name: "s_1".into(),
            nilradical: LieAlgebra::<Rational>::abelian(4).to_json(),
            generators: vec![gen(rot, TimeValue::pi(qi(1))), gen(diag, unit_time(m).unwrap())],
            conjugator: Conjugator::Pattern {
                driver: 1,
                columns: vec![
                    ColumnSpec::PairFirst { i: 0, j: 2 },
                    ColumnSpec::PairSecond { i: 0, j: 2 },
                    ColumnSpec::PairFirst { i: 1, j: 3 },
                    ColumnSpec::PairSecond { i: 1, j: 3 },
                ],
            },
            claimed: None,
        }
    }

    #[test]
    fn nakamura_certificate_passes() {
        for m in 3..=10 {
            let rep = verify_certificate(&s1_certificate(m)).unwrap();
            assert!(rep.passed, "{rep:?}");
            let ms = m.to_string();
            let companion: Vec<Vec<&str>> = vec![
                vec!["0", "-1", "0", "0"],
                vec!["1", &ms, "0", "0"],
                vec!["0", "0", "0", "-1"],
                vec!["0", "0", "1", &ms],
            ];
            let got: Vec<Vec<&str>> = rep.conjugates[1].iter().map(|r| r.iter().map(|s| s.as_str()).collect()).collect();
            let want: Vec<Vec<&str>> = companion.iter().map(|r| r.iter().map(|s| s.as_ref()).collect()).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn perturbed_conjugator_fails_integrality() {
        let mut cert = s1_certificate(3);
        let exps = exp_exact(&cert.generators[1].derivation, &cert.generators[1].time).unwrap();
        let mut p = hyperbolic_conjugator(&exps, match &cert.conjugator {
            Conjugator::Pattern { columns, .. } => columns,
            _ => unreachable!(),
        })
        .unwrap();
        p[(0, 0)] = p[(0, 0)].clone() + Exact::one();
        cert.conjugator = Conjugator::Matrix { rows: format_matrix(&p) };
        let rep = verify_certificate(&cert).unwrap();
        assert!(!rep.passed);
        assert!(rep.first_failure().unwrap().check.starts_with("integrality"));
    }

    #[test]
    fn claimed_matrix_is_compared() {
        let mut cert = s1_certificate(4);
        cert.claimed = Some(vec![
            vec![vec![-1, 0, 0, 0], vec![0, -1, 0, 0], vec![0, 0, -1, 0], vec![0, 0, 0, -1]],
            vec![vec![0, -1, 0, 0], vec![1, 5, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 1, 4]],
        ]);
        let rep = verify_certificate(&cert).unwrap();
        assert_eq!(rep.first_failure().unwrap().check, "claimed 1");
    }

    #[test]
    fn json_round_trip() {
        let cert = s1_certificate(5);
        let txt = serde_json::to_string(&cert).unwrap();
        assert!(txt.contains(r#""time":{"type":"log_unit","m":5}"#));
        let back: LatticeCertificate = serde_json::from_str(&txt).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn singular_conjugator_is_an_error() {
        let mut cert = s1_certificate(3);
        cert.conjugator = Conjugator::Matrix { rows: vec![vec!["0".into(); 4]; 4] };
        assert_eq!(verify_certificate(&cert).unwrap_err(), Error::Singular);
    }
}
