//! Named example families with their expected diagnostics.

mod entries;
mod fp;
mod sample;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{format_salamon, parse_salamon, LieAlgebra};
use crate::cstruct::{
    almost_abelian_report, decide_invariant_trivial, is_abelian_cs, is_integrable, obstruction_check, psi,
    ComplexStructure, TrivialityVerdict,
};
use crate::error::{Error, Result};
use crate::hypercomplex::{obata, psi_sphere_check, sphere_samples, validate_triple, HypercomplexTriple, TripleCheck};
use crate::lattices::{verify_certificate, CheckLine, LatticeCertificate, TimeValue};
use crate::matrix::Matrix;
use crate::scalar::{Monomial, Rational, Scalar};
use crate::sections::{build_section, invariance_for, verify_section, Invariance, SectionCheck};

pub use entries::{build, list};
pub use fp::{
    an1_i_data, an1_ii_data, an2_i_data, an2_ii_data, fp1_construct, fp2_construct, Fp1Data, Fp2Data,
};
pub use sample::{sample_pairs, Sample, SampleKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Rational,
    Integer,
    /// Comma separated rationals, e.g. `1,-1/2`.
    List,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: Vec<ParamSpec>,
}

impl EntryInfo {
    pub fn has_param(&self, name: &str) -> bool {
        self.params.iter().any(|p| p.name == name)
    }
}

/// Parameter values after defaults are filled in.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, k: &str, v: impl ToString) -> Self {
        self.0.insert(k.into(), v.to_string());
        self
    }

    /// `name=value`.
    pub fn insert_pair(&mut self, kv: &str) -> Result<()> {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("expected name=value, got `{kv}`")))?;
        self.0.insert(k.trim().into(), v.trim().into());
        Ok(())
    }

    pub fn get(&self, k: &str) -> Option<&str> {
        self.0.get(k).map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &String)> {
        self.0.iter()
    }

    /// Fills defaults and rejects names outside the schema.
    pub fn resolve(&self, info: &EntryInfo) -> Result<Params> {
        if let Some(k) = self.0.keys().find(|k| !info.has_param(k)) {
            return Err(Error::UnknownParameter(k.clone()));
        }
        let mut out = Params::new();
        for p in &info.params {
            let v = self.get(p.name).unwrap_or(p.default);
            match p.kind {
                ParamKind::Rational => drop(parse_rational(p.name, v)?),
                ParamKind::Integer => drop(parse_integer(p.name, v)?),
                ParamKind::List => drop(parse_list(p.name, v)?),
            }
            out.0.insert(p.name.into(), v.into());
        }
        Ok(out)
    }

    pub fn rational(&self, k: &str) -> Result<Rational> {
        parse_rational(k, self.get(k).ok_or_else(|| Error::UnknownParameter(k.into()))?)
    }

    pub fn integer(&self, k: &str) -> Result<i64> {
        parse_integer(k, self.get(k).ok_or_else(|| Error::UnknownParameter(k.into()))?)
    }

    pub fn list(&self, k: &str) -> Result<Vec<Rational>> {
        parse_list(k, self.get(k).ok_or_else(|| Error::UnknownParameter(k.into()))?)
    }

    /// Lookup for the shorthand parser.
    pub fn scalar(&self, k: &str) -> Option<Scalar> {
        self.rational(k).ok().map(Scalar::from)
    }
}

fn parse_rational(name: &str, v: &str) -> Result<Rational> {
    v.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Input(format!("parameter {name}: `{v}` is not a rational number")))
}

fn parse_integer(name: &str, v: &str) -> Result<i64> {
    v.trim()
        .parse::<i64>()
        .map_err(|_| Error::Input(format!("parameter {name}: `{v}` is not an integer")))
}

fn parse_list(name: &str, v: &str) -> Result<Vec<Rational>> {
    v.split(',').map(|x| parse_rational(name, x)).collect()
}

/// What a structure is expected to produce.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Expected {
    /// `psi(e_i)` at the listed indices.
    pub psi_at: Vec<(usize, Rational)>,
    /// `psi` vanishes off the listed indices.
    pub psi_rest_zero: bool,
    pub verdict: Option<&'static str>,
    pub obstruction: Option<&'static str>,
    pub abelian: Option<bool>,
    pub lambda: Option<Rational>,
    pub periods: Vec<(TimeValue, Invariance)>,
}

impl Expected {
    pub fn trivial() -> Self {
        Expected {
            psi_rest_zero: true,
            verdict: Some("InvariantTrivial"),
            obstruction: Some("PsiVanishesOnCommutator"),
            ..Default::default()
        }
    }

    fn to_json(&self, alg: &LieAlgebra<Rational>) -> Value {
        let psi: BTreeMap<String, String> =
            self.psi_at.iter().map(|(i, v)| (alg.label(*i), v.to_string())).collect();
        json!({
            "psi": psi,
            "psi_rest_zero": self.psi_rest_zero,
            "verdict": self.verdict,
            "obstruction": self.obstruction,
            "abelian": self.abelian,
            "lambda": self.lambda.as_ref().map(|l| l.to_string()),
            "periods": self.periods.iter().map(|(p, inv)| json!({"period": p, "invariance": inv})).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Structure {
    pub label: String,
    pub j: ComplexStructure<Rational>,
    pub expected: Expected,
}

/// Lattice generators that should be `ad` of basis vectors on the nilradical.
#[derive(Clone, Debug, PartialEq)]
pub struct AdMatch {
    pub nilradical: Vec<usize>,
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub params: Params,
    pub algebra: LieAlgebra<Rational>,
    pub shorthand: Option<String>,
    pub structures: Vec<Structure>,
    pub triple: Option<HypercomplexTriple<Rational>>,
    pub certificate: Option<LatticeCertificate>,
    pub ad_match: Option<AdMatch>,
    /// Transversal index for almost abelian entries.
    pub almost_abelian: Option<usize>,
    /// Entry specific checks computed at build time.
    pub extra: Vec<CheckLine>,
}

impl Instance {
    pub fn structure(&self, label: &str) -> Option<&Structure> {
        self.structures.iter().find(|s| s.label == label)
    }

    /// Algebra, structures and expectations as JSON.
    pub fn to_json(&self) -> Value {
        let structures: Vec<Value> = self
            .structures
            .iter()
            .map(|s| {
                json!({
                    "label": s.label,
                    "j": s.j.matrix().to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "expected": s.expected.to_json(&self.algebra),
                })
            })
            .collect();
        let params: BTreeMap<&String, &String> = self.params.iter().collect();
        json!({
            "name": self.name,
            "params": params,
            "algebra": self.algebra.to_json(),
            "shorthand": self.shorthand,
            "structures": structures,
            "triple": self.triple.as_ref().map(|t| t.to_json()),
            "certificate": self.certificate,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

impl EntryReport {
    fn push(&mut self, check: impl Into<String>, witness: Option<String>) {
        self.checks.push(CheckLine {
            check: check.into(),
            passed: witness.is_none(),
            witness,
        });
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, check: impl Into<String>, got: T, want: T) {
        let w = (got != want).then(|| format!("got {got:?}, expected {want:?}"));
        self.push(check, w);
    }

    fn fail(&mut self, check: impl Into<String>, e: &Error) {
        self.push(check, Some(e.to_string()));
    }

    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// `2pi`, `pi/2`, `log u_3`, `1`.
pub fn format_period(p: &TimeValue) -> String {
    p.monomial().to_string()
}

fn sub_matrix(m: &Matrix<Rational>, idx: &[usize]) -> Matrix<Rational> {
    m.select(idx, idx)
}

/// Recomputes every expected value of an instance.
pub fn check(inst: &Instance) -> EntryReport {
    let alg = &inst.algebra;
    let mut rep = EntryReport {
        name: inst.name.clone(),
        passed: false,
        checks: Vec::new(),
    };
    rep.push("jacobi", alg.validate().err().map(|e| e.to_string()));
    rep.expect("solvable", alg.is_solvable(), true);

    if let Some(src) = &inst.shorthand {
        let parsed = parse_salamon::<Rational>(src, &|k| inst.params.scalar(k));
        match parsed {
            Err(e) => rep.fail("shorthand", &e),
            Ok(p) => {
                let again = parse_salamon::<Rational>(&format_salamon(&p), &|_| None);
                let w = if p.nonzero_brackets() != alg.nonzero_brackets() {
                    Some("shorthand differs from the built algebra".to_string())
                } else if again.map(|a| a.nonzero_brackets()).ok() != Some(p.nonzero_brackets()) {
                    Some("printed shorthand does not parse back".to_string())
                } else {
                    None
                };
                rep.push("shorthand", w);
            }
        }
    }

    for s in &inst.structures {
        check_structure(&mut rep, alg, s);
    }

    if let Some(t) = inst.almost_abelian {
        match (almost_abelian_report(alg, &inst.structures[0].j, t), inst.structures[0].expected.verdict) {
            (Ok(r), Some(v)) => rep.expect("almost abelian conditions", r.conditions_hold, v == "InvariantTrivial"),
            (Ok(_), None) => {}
            (Err(e), _) => rep.fail("almost abelian conditions", &e),
        }
    }

    if let Some(t) = &inst.triple {
        match validate_triple(alg, t) {
            Ok(TripleCheck::Pass) => rep.push("hypercomplex triple", None),
            Ok(TripleCheck::Fail { reason }) => rep.push("hypercomplex triple", Some(reason)),
            Err(e) => rep.fail("hypercomplex triple", &e),
        }
        rep.push("obata connection", obata(alg, t).err().map(|e| e.to_string()));
        match psi_sphere_check(alg, t, &sphere_samples(12)) {
            Ok(r) => rep.expect("psi on the sphere", r.linear, true),
            Err(e) => rep.fail("psi on the sphere", &e),
        }
    }

    if let Some(c) = &inst.certificate {
        match verify_certificate(c) {
            Ok(r) => {
                let w = r.first_failure().map(|f| format!("{}: {}", f.check, f.witness.clone().unwrap_or_default()));
                rep.push("lattice certificate", w);
            }
            Err(e) => rep.fail("lattice certificate", &e),
        }
        if let Some(m) = &inst.ad_match {
            let w = c.generators.iter().zip(&m.generators).enumerate().find_map(|(k, (g, &x))| {
                let n = g.derivation.dim;
                let mut sum = Matrix::zeros(n, n);
                for p in &g.derivation.parts {
                    if p.rate != Monomial::one() {
                        return Some(format!("generator {k} has a symbolic rate"));
                    }
                    sum = sum.add(&p.matrix(n));
                }
                (sum != sub_matrix(&alg.ad_basis(x), &m.nilradical))
                    .then(|| format!("generator {k} is not ad {}", alg.label(x)))
            });
            rep.push("lattice generators are ad", w);
        }
    }

    rep.checks.extend(inst.extra.iter().cloned());
    rep.passed = rep.checks.iter().all(|c| c.passed);
    rep
}

fn check_structure(rep: &mut EntryReport, alg: &LieAlgebra<Rational>, s: &Structure) {
    let l = &s.label;
    let e = &s.expected;
    match is_integrable(alg, &s.j) {
        Ok(true) => rep.push(format!("{l}: integrable"), None),
        Ok(false) => {
            rep.push(format!("{l}: integrable"), Some("Nijenhuis tensor is nonzero".into()));
            return;
        }
        Err(err) => {
            rep.fail(format!("{l}: integrable"), &err);
            return;
        }
    }
    let p = psi(alg, &s.j);
    let mut w = None;
    for (i, v) in &e.psi_at {
        if p.at(*i) != v {
            w.get_or_insert(format!("psi({}) = {}, expected {v}", alg.label(*i), p.at(*i)));
        }
    }
    if e.psi_rest_zero {
        if let Some(i) = (0..alg.dim()).find(|i| !p.at(*i).is_zero() && !e.psi_at.iter().any(|(k, _)| k == i)) {
            w.get_or_insert(format!("psi({}) = {}, expected 0", alg.label(i), p.at(i)));
        }
    }
    rep.push(format!("{l}: psi"), w);

    match decide_invariant_trivial(alg, &s.j) {
        Ok(r) => {
            if let Some(v) = e.verdict {
                rep.expect(format!("{l}: verdict"), r.verdict.name(), v);
            }
        }
        Err(err) => rep.fail(format!("{l}: verdict"), &err),
    }
    if let Some(o) = e.obstruction {
        rep.expect(format!("{l}: obstruction"), obstruction_check(alg, &s.j).name(), o);
    }
    if let Some(a) = e.abelian {
        rep.expect(format!("{l}: abelian"), is_abelian_cs(alg, &s.j), a);
    }
    match build_section(alg, &s.j) {
        Ok(sec) => {
            let w = match verify_section(alg, &sec.sigma, &sec.alpha) {
                SectionCheck::Pass => None,
                SectionCheck::Fail { identity } => Some(identity),
            };
            rep.push(format!("{l}: section"), w);
            let lambda = sec.rank_one.as_ref().map(|r| r.lambda.clone());
            if e.lambda.is_some() {
                rep.expect(format!("{l}: lambda"), lambda.clone(), e.lambda.clone());
            }
            for (per, want) in &e.periods {
                let name = format!("{l}: period {}", format_period(per));
                match &lambda {
                    None if TrivialityVerdict::InvariantTrivial.name() == e.verdict.unwrap_or("") => {
                        rep.expect(name, Invariance::Invariant, want.clone())
                    }
                    None => rep.push(name, Some("no rank-one section".into())),
                    Some(lam) => match invariance_for(lam, per) {
                        Ok(got) => rep.expect(name, got, want.clone()),
                        Err(err) => rep.fail(name, &err),
                    },
                }
            }
        }
        Err(err) => rep.fail(format!("{l}: section"), &err),
    }
}

/// Builds and checks every entry at its defaults.
pub fn check_all() -> Vec<EntryReport> {
    list()
        .iter()
        .map(|info| match build(info.name, &Params::new()) {
            Ok(inst) => check(&inst),
            Err(e) => EntryReport {
                name: info.name.into(),
                passed: false,
                checks: vec![CheckLine {
                    check: "build".into(),
                    passed: false,
                    witness: Some(e.to_string()),
                }],
            },
        })
        .collect()
}
