//! Runs every diagnostic on one input and collects a versioned JSON report.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{parse_salamon, AlgebraJson, LieAlgebra};
use crate::cstruct::{decide_invariant_trivial, ComplexStructure, TrivialityVerdict};
use crate::error::{Error, Result};
use crate::hypercomplex::{
    obata, psi_sphere_check, sphere_samples, validate_triple, HypercomplexTriple, TripleCheck, TripleJson,
};
use crate::lattices::{verify_certificate, LatticeCertificate, TimeValue};
use crate::matrix::Matrix;
use crate::scalar::{parse_expr, Rational, Ring, Scalar};
use crate::sections::{build_section, invariance_for, verify_section, Invariance, SectionCheck};

pub const SCHEMA: &str = "ckit/1";

#[derive(Clone, Debug)]
pub struct PipelineInput {
    pub algebra: LieAlgebra<Rational>,
    pub structures: Vec<(String, ComplexStructure<Rational>)>,
    pub triple: Option<HypercomplexTriple<Rational>>,
    pub certificate: Option<LatticeCertificate>,
    pub periods: Vec<TimeValue>,
}

impl PipelineInput {
    pub fn new(algebra: LieAlgebra<Rational>) -> Self {
        PipelineInput {
            algebra,
            structures: Vec::new(),
            triple: None,
            certificate: None,
            periods: Vec::new(),
        }
    }
}

/// Report plus the flags a caller needs to pick an exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub json: Value,
    /// Some structure has no invariant section.
    pub negative_verdict: bool,
    /// Some requested period does not leave the section invariant.
    pub not_invariant: bool,
    /// The certificate was checked and failed.
    pub lattice_failed: bool,
    /// Stages that raised an error.
    pub errors: Vec<String>,
}

fn stage_error(stage: &str, e: &Error) -> Value {
    json!({ "error": { "stage": stage, "message": e.to_string() } })
}

/// `2pi`, `pi/2`, `3/2*pi` or a rational.
pub fn parse_period(src: &str) -> Result<TimeValue> {
    let v = parse_expr(src)?.eval_laurent()?;
    let bad = || Error::Input(format!("period `{src}` must be a rational multiple of pi or a rational"));
    let terms: Vec<_> = v.terms().collect();
    match terms.as_slice() {
        [] => Ok(TimeValue::Rational { q: Rational::from_integer(0.into()) }),
        [(&(e_pi, 0), c)] if e_pi == 0 || e_pi == 1 => {
            let q = c.to_rational().ok_or_else(bad)?;
            Ok(if e_pi == 1 { TimeValue::Pi { q } } else { TimeValue::Rational { q } })
        }
        _ => Err(bad()),
    }
}

/// Salamon shorthand when the text starts with `(`, the JSON algebra format otherwise.
pub fn load_algebra(text: &str, params: &dyn Fn(&str) -> Option<Scalar>) -> Result<LieAlgebra<Rational>> {
    if text.trim_start().starts_with('(') {
        parse_salamon(text.trim(), params)
    } else {
        let js: AlgebraJson = serde_json::from_str(text)?;
        let alg = LieAlgebra::from_json(&js, params)?;
        alg.validate()?;
        Ok(alg)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum StructureJson {
    Pairs { pairs: Vec<(usize, usize)> },
    Rows { rows: Vec<Vec<String>> },
    Bare(Vec<Vec<String>>),
}

/// A complex structure as `{"pairs": [[a, b], ...]}` (indices offset by the
/// algebra base, `J e_a = e_b`) or as rows of entries, columns being `J e_i`.
pub fn load_structure(text: &str, alg: &LieAlgebra<Rational>) -> Result<ComplexStructure<Rational>> {
    let js: StructureJson = serde_json::from_str(text)?;
    let n = alg.dim();
    let base = alg.base();
    match js {
        StructureJson::Pairs { pairs } => {
            let shifted = pairs
                .into_iter()
                .map(|(a, b)| {
                    if a < base || b < base {
                        Err(Error::Input(format!("pair ({a}, {b}) below base {base}")))
                    } else {
                        Ok((a - base, b - base))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            ComplexStructure::from_pairs(n, &shifted)
        }
        StructureJson::Rows { rows } | StructureJson::Bare(rows) => {
            let m = rows
                .iter()
                .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(m)?;
            if m.rows() != n || !m.is_square() {
                return Err(Error::Dimension(format!("J is {}x{}, algebra has dimension {n}", m.rows(), m.cols())));
            }
            ComplexStructure::new(m)
        }
    }
}

pub fn load_triple(text: &str) -> Result<HypercomplexTriple<Rational>> {
    let js: TripleJson = serde_json::from_str(text)?;
    HypercomplexTriple::from_json(&js)
}

fn parse_rational(src: &str) -> Result<Rational> {
    parse_expr(src)?
        .eval_laurent()?
        .as_constant()
        .and_then(|c| c.to_rational())
        .ok_or_else(|| Error::NotInField(format!("`{src}` is not rational")))
}

fn invariance_json(inv: &Invariance) -> Value {
    match inv {
        Invariance::Invariant => json!("Invariant"),
        Invariance::TorsionOrder { k } => json!({ "TorsionOrder": k }),
        Invariance::NotPeriodic => json!("NotPeriodic"),
    }
}

fn structure_stage(
    alg: &LieAlgebra<Rational>,
    label: &str,
    j: &ComplexStructure<Rational>,
    periods: &[TimeValue],
    out: &mut PipelineReport,
) -> Value {
    let mut entry = json!({ "label": label });
    if j.dim() != alg.dim() {
        let e = Error::Dimension(format!("{label} has dimension {}, algebra {}", j.dim(), alg.dim()));
        out.errors.push(format!("complex {label}"));
        entry["complex"] = stage_error("complex", &e);
        return entry;
    }
    let rep = match decide_invariant_trivial(alg, j) {
        Ok(r) => r,
        Err(e) => {
            out.errors.push(format!("complex {label}"));
            entry["complex"] = stage_error("complex", &e);
            return entry;
        }
    };
    entry["complex"] = rep.to_json(alg);
    if let Some(o) = rep.obstruction {
        entry["complex"]["obstruction_description"] = json!(o.describe(alg));
    }
    if rep.verdict != TrivialityVerdict::InvariantTrivial {
        out.negative_verdict = true;
    }
    if !rep.integrable {
        return entry;
    }
    match build_section(alg, j) {
        Err(e) => {
            out.errors.push(format!("section {label}"));
            entry["section"] = stage_error("section", &e);
        }
        Ok(sec) => {
            let mut s = sec.to_json(alg);
            s["verification"] = match verify_section(alg, &sec.sigma, &sec.alpha) {
                SectionCheck::Pass => json!("Pass"),
                SectionCheck::Fail { identity } => json!({ "Fail": identity }),
            };
            entry["section"] = s;
            let obstructed = rep.obstruction.map(|o| o.name()) == Some("ObstructedNotTorsion");
            let mut inv = Vec::new();
            for p in periods {
                let res = match (&sec.rank_one, rep.verdict) {
                    (_, TrivialityVerdict::InvariantTrivial) => Ok(Invariance::Invariant),
                    (Some(r), _) => invariance_for(&r.lambda, p),
                    (None, _) if obstructed => {
                        out.not_invariant = true;
                        inv.push(json!({ "period": p.monomial().to_string(), "result": "Obstructed" }));
                        continue;
                    }
                    (None, _) => Err(Error::Unsupported("no rank-one section for this structure".into())),
                };
                let v = match res {
                    Ok(i) => {
                        if i != Invariance::Invariant {
                            out.not_invariant = true;
                        }
                        invariance_json(&i)
                    }
                    Err(e) => {
                        out.not_invariant = true;
                        out.errors.push(format!("invariance {label}"));
                        stage_error("invariance", &e)
                    }
                };
                inv.push(json!({ "period": p.monomial().to_string(), "result": v }));
            }
            entry["invariance"] = json!(inv);
        }
    }
    entry
}

fn hypercomplex_stage(alg: &LieAlgebra<Rational>, t: &HypercomplexTriple<Rational>, out: &mut PipelineReport) -> Value {
    let tag = |e: &Error, out: &mut PipelineReport| {
        out.errors.push("hypercomplex".into());
        stage_error("hypercomplex", e)
    };
    let check = match validate_triple(alg, t) {
        Ok(TripleCheck::Pass) => json!("Pass"),
        Ok(TripleCheck::Fail { reason }) => json!({ "Fail": reason }),
        Err(e) => return tag(&e, out),
    };
    let mut v = json!({ "triple": check });
    if v["triple"] != json!("Pass") {
        return v;
    }
    v["obata"] = match obata(alg, t) {
        Ok(table) => json!({ "torsion_free": true, "flat": table.is_zero() }),
        Err(e) => tag(&e, out),
    };
    v["sphere"] = match psi_sphere_check(alg, t, &sphere_samples(12)) {
        Ok(r) => {
            let forms: Vec<Value> = r
                .psi
                .iter()
                .map(|p| json!(crate::forms::format_form(&p.to_form().map(|x| Scalar::from(x.clone())), alg.base())))
                .collect();
            json!({ "psi": forms, "some_zero": r.some_zero, "samples": r.samples, "linear": r.linear })
        }
        Err(e) => tag(&e, out),
    };
    let mut per = Vec::new();
    for (k, j) in t.j.iter().enumerate() {
        per.push(match decide_invariant_trivial(alg, j) {
            Ok(r) => json!({
                "label": format!("J{}", k + 1),
                "verdict": r.verdict.name(),
                "obstruction": r.obstruction.map(|o| o.name()),
            }),
            Err(e) => tag(&e, out),
        });
    }
    v["structures"] = json!(per);
    v
}

/// Runs the stages in order; a failing stage is reported and the rest still run.
pub fn run_pipeline(input: &PipelineInput) -> PipelineReport {
    let alg = &input.algebra;
    let mut out = PipelineReport {
        json: Value::Null,
        negative_verdict: false,
        not_invariant: false,
        lattice_failed: false,
        errors: Vec::new(),
    };
    let jacobi = match alg.validate() {
        Ok(()) => json!("Pass"),
        Err(e) => {
            out.errors.push("structure".into());
            stage_error("structure", &e)
        }
    };
    let structure = json!({
        "dim": alg.dim(),
        "jacobi": jacobi,
        "solvable": alg.is_solvable(),
        "nilpotent": alg.is_nilpotent(),
        "unimodular": alg.is_unimodular(),
    });

    let mut structures = input.structures.clone();
    if structures.is_empty() {
        if let Some(t) = &input.triple {
            for (k, j) in t.j.iter().enumerate() {
                structures.push((format!("J{}", k + 1), j.clone()));
            }
        }
    }
    let complex: Vec<Value> = structures
        .iter()
        .map(|(l, j)| structure_stage(alg, l, j, &input.periods, &mut out))
        .collect();

    let lattice = input.certificate.as_ref().map(|c| match verify_certificate(c) {
        Ok(r) => {
            out.lattice_failed = !r.passed;
            json!(r)
        }
        Err(e) => {
            out.lattice_failed = true;
            out.errors.push("lattice".into());
            stage_error("lattice", &e)
        }
    });
    let hyper = input.triple.as_ref().map(|t| hypercomplex_stage(alg, t, &mut out));

    let mut json = json!({
        "schema": SCHEMA,
        "algebra": alg.to_json(),
        "structure": structure,
        "complex": complex,
    });
    if let Some(l) = lattice {
        json["lattice"] = l;
    }
    if let Some(h) = hyper {
        json["hypercomplex"] = h;
    }
    out.json = json;
    out
}
