//! Closed `(n,0)`-forms `tau = e^{-f} sigma` on solvable groups.
//!
//! `f` is never evaluated: it is stored through `alpha = df`, a left
//! invariant closed 1-form, so `e^{-f}` is a character of the group.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::LieAlgebra;
use crate::cstruct::{nijenhuis_witness, obstruction_check, psi, ComplexStructure, ObstructionStatus};
use crate::error::{Error, Result};
use crate::forms::{ce_d, format_one_form, format_wedge, Coframe, Form};
use crate::lattices::TimeValue;
use crate::matrix::vec;
use crate::scalar::{Complex, RealField, ToScalar};
use crate::subspace::SubspaceBasis;

/// Coframe with `u^j` closed for `j < s` and `u_j, v_j` in `g' cap J g'`
/// for `j >= s` (zero-based).
#[derive(Clone, Debug)]
pub struct NiceBasis<F> {
    pub s: usize,
    pub coframe: Coframe<F>,
    pub commutator: SubspaceBasis<F>,
    /// `g' cap J g'`.
    pub core: SubspaceBasis<F>,
    /// Complement of `core` in `g'`.
    pub u: Vec<Vec<F>>,
    /// Number of pairs spanning the `J`-invariant complement of `g' + J u`.
    pub r: usize,
}

fn require_integrable<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> Result<()> {
    match nijenhuis_witness(alg, j) {
        Some((a, b)) => Err(Error::NotIntegrable(a, b)),
        None => Ok(()),
    }
}

/// Greedily adds pairs `(c, Jc)` from `candidates` until `span` has `target` dimensions.
fn add_pairs<F: RealField>(
    span: &mut SubspaceBasis<F>,
    candidates: impl IntoIterator<Item = Vec<F>>,
    j: &ComplexStructure<F>,
    target: usize,
) -> Vec<Vec<F>> {
    let mut firsts = Vec::new();
    for c in candidates {
        if span.dim() >= target {
            break;
        }
        if span.contains(&c) {
            continue;
        }
        let jc = j.apply(&c);
        span.push_if_independent(c.clone());
        span.push_if_independent(jc);
        firsts.push(c);
    }
    firsts
}

/// Splits `g = (g' cap Jg') + u + Ju + v` and builds the adapted coframe.
///
/// The pairs `(x, Jx)` spanning `v` are taken with `psi(Jx) = 0`, which
/// is always possible and makes `alpha = (i/2) psi` whenever `psi([g,g]) = 0`.
pub fn nice_basis<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> Result<NiceBasis<F>> {
    if !alg.is_solvable() {
        return Err(Error::NotSolvable);
    }
    require_integrable(alg, j)?;
    let n = alg.dim();
    let gp = alg.commutator();
    let core = gp.intersection(&gp.image(j.matrix()));
    let u = core.complement_in(&gp, &[]);

    let p = psi(alg, j);
    let pj: Vec<F> = (0..n).map(|i| p.eval(&j.matrix().col(i))).collect();
    let kernel = SubspaceBasis::annihilated_by(n, &[pj]);
    let units = (0..n).map(|i| vec::unit::<F>(n, i));
    let candidates: Vec<Vec<F>> = units
        .clone()
        .filter(|e| kernel.contains(e))
        .chain(kernel.basis().iter().cloned())
        .collect();
    let mut span = core.clone();
    for x in &u {
        span.push_if_independent(x.clone());
        span.push_if_independent(j.apply(x));
    }
    let xs = add_pairs(&mut span, candidates, j, n);
    if span.dim() != n {
        return Err(Error::Internal("J-invariant complement is incomplete".into()));
    }
    let ys: Vec<Vec<F>> = u.iter().map(|x| vec::scale(&j.apply(x), &-F::one())).collect();
    let mut zspan = SubspaceBasis::zero(n);
    let zs = add_pairs(
        &mut zspan,
        units.filter(|e| core.contains(e)).chain(core.basis().iter().cloned()),
        j,
        core.dim(),
    );
    let r = xs.len();
    let s = r + ys.len();
    let first: Vec<Vec<F>> = xs.into_iter().chain(ys).chain(zs).collect();
    let coframe = Coframe::from_first_vectors(first, j.matrix())?;

    for k in 0..s {
        if !ce_d::<F, F>(alg, &Form::from_covector(&coframe.u_dual[k])).is_zero() {
            return Err(Error::Internal(format!("u^{k} is not closed")));
        }
    }
    for k in s..coframe.n() {
        if !core.contains(&coframe.u[k]) || !core.contains(&coframe.v[k]) {
            return Err(Error::Internal(format!("pair {k} leaves g' cap Jg'")));
        }
    }
    Ok(NiceBasis {
        s,
        coframe,
        commutator: gp,
        core,
        u,
        r,
    })
}

/// `alpha = -i lambda e^0`, with `e^0` vanishing on `ker psi` and `e^0(e_index) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOne<F> {
    pub index: usize,
    pub lambda: F,
    pub coordinate: Vec<F>,
}

#[derive(Clone, Debug)]
pub struct SectionDescriptor<F> {
    pub s: usize,
    pub gammas: Vec<Form<Complex<F>>>,
    pub sigma: Form<Complex<F>>,
    /// `C_j = -psi(v_j) + i psi(u_j)`.
    pub coefficients: Vec<Complex<F>>,
    pub alpha: Form<Complex<F>>,
    pub closed: Vec<Vec<F>>,
    pub rank_one: Option<RankOne<F>>,
}

impl<F: RealField + ToScalar> SectionDescriptor<F> {
    pub fn to_json(&self, alg: &LieAlgebra<F>) -> Value {
        let base = alg.base();
        let mut alpha = Map::new();
        for (idx, c) in self.alpha.terms() {
            alpha.insert(alg.label(idx[0]), json!(c.to_scalar().to_string()));
        }
        let closed: Vec<String> = self
            .closed
            .iter()
            .map(|c| format_one_form(&Form::from_covector(c), base))
            .collect();
        let gammas: Vec<Form<_>> = self.gammas.iter().map(|g| g.map(|z| z.to_scalar())).collect();
        json!({
            "sigma": format_wedge(&gammas, base),
            "alpha": alpha,
            "lambda": self.rank_one.as_ref().map(|r| r.lambda.to_scalar().to_string()),
            "closed_coords": closed,
        })
    }
}

/// Builds `sigma` and the closed 1-form `alpha` with `d sigma = alpha ^ sigma`.
///
/// When `psi = 0` this is the invariant section, `alpha = 0`.
pub fn build_section<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
) -> Result<SectionDescriptor<F>> {
    let nb = nice_basis(alg, j)?;
    let p = psi(alg, j);
    let cf = &nb.coframe;
    let coefficients: Vec<Complex<F>> = (0..cf.n())
        .map(|k| Complex::new(-p.eval(&cf.v[k]), p.eval(&cf.u[k])))
        .collect();
    if let Some(k) = (nb.s..cf.n()).find(|&k| !coefficients[k].is_zero()) {
        return Err(Error::Internal(format!("C_{k} is nonzero past s")));
    }
    let half = Complex::from(F::one().div(&F::from_i64(2))?);
    let mut alpha = Form::zero(alg.dim(), 1);
    for (ud, c) in cf.u_dual.iter().zip(&coefficients).take(nb.s) {
        let uk: Vec<Complex<F>> = ud.iter().map(|x| Complex::from(x.clone())).collect();
        alpha = alpha + Form::from_covector(&uk).scale(&(c.clone() * half.clone()));
    }
    let gammas: Vec<Form<Complex<F>>> = (0..cf.n()).map(|k| cf.gamma(k)).collect();
    let sigma = cf.sigma();
    if let SectionCheck::Fail { identity } = verify_section(alg, &sigma, &alpha) {
        return Err(Error::Internal(format!("constructed section fails `{identity}`")));
    }

    let rank_one = match (p.first_nonzero(), obstruction_check(alg, j)) {
        (Some(e0), ObstructionStatus::PsiVanishesOnCommutator) => {
            let half_psi: Vec<Complex<F>> =
                p.values.iter().map(|x| Complex::new(F::zero(), x.clone()) * half.clone()).collect();
            if Form::from_covector(&half_psi) == alpha {
                let pe = p.at(e0).clone();
                let lambda = -(pe.clone() * F::one().div(&F::from_i64(2))?);
                let coordinate: Vec<F> =
                    p.values.iter().map(|x| x.div(&pe)).collect::<Result<_>>()?;
                Some(RankOne {
                    index: e0,
                    lambda,
                    coordinate,
                })
            } else {
                None
            }
        }
        _ => None,
    };
    Ok(SectionDescriptor {
        s: nb.s,
        closed: cf.u_dual[..nb.s].to_vec(),
        gammas,
        sigma,
        coefficients,
        alpha,
        rank_one,
    })
}

/// `lambda = -psi(e0)/2`, which is `-Tr(J ad e0)/2` on unimodular algebras.
pub fn explicit_rank_one<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
    e0: &[F],
) -> Result<F> {
    if let ObstructionStatus::ObstructedNotTorsion { pair: (a, b) } = obstruction_check(alg, j) {
        return Err(Error::Precondition(format!(
            "psi([{}, {}]) != 0",
            alg.label(a),
            alg.label(b)
        )));
    }
    let pe = psi(alg, j).eval(e0);
    if pe.is_zero() {
        return Err(Error::Precondition("e0 lies in ker psi".into()));
    }
    let lambda = -(pe * F::one().div(&F::from_i64(2))?);
    if alg.is_unimodular() {
        let tr = j.matrix().mul(&alg.ad(e0)).trace();
        debug_assert!(lambda == -(tr * F::one().div(&F::from_i64(2))?));
    }
    Ok(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result")]
pub enum SectionCheck {
    Pass,
    Fail { identity: String },
}

/// `d alpha = 0` and `alpha ^ sigma = d sigma`, so `d(e^{-f} sigma) = 0`.
pub fn verify_section<F: RealField>(
    alg: &LieAlgebra<F>,
    sigma: &Form<Complex<F>>,
    alpha: &Form<Complex<F>>,
) -> SectionCheck {
    if !ce_d(alg, alpha).is_zero() {
        return SectionCheck::Fail {
            identity: "d alpha = 0".into(),
        };
    }
    if alpha.w(sigma) != ce_d(alg, sigma) {
        return SectionCheck::Fail {
            identity: "alpha ^ sigma = d sigma".into(),
        };
    }
    SectionCheck::Pass
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result")]
pub enum Invariance {
    Invariant,
    TorsionOrder { k: u64 },
    NotPeriodic,
}

/// Invariance of `e^{i lambda t}` under `t -> t + p`.
pub fn lattice_invariance<F: RealField>(s: &SectionDescriptor<F>, period: &TimeValue) -> Result<Invariance> {
    let r = s.rank_one.as_ref().ok_or_else(|| {
        Error::Unsupported("invariance needs a rank-one section".into())
    })?;
    invariance_for(&r.lambda, period)
}

pub fn invariance_for<F: RealField>(lambda: &F, period: &TimeValue) -> Result<Invariance> {
    if lambda.is_zero() || period.is_zero() {
        return Ok(Invariance::Invariant);
    }
    let TimeValue::Pi { q } = period else {
        // lambda p / 2pi is irrational: p is algebraic or a log of a unit
        return Ok(Invariance::NotPeriodic);
    };
    let Some(l) = lambda.to_rational() else {
        return Ok(Invariance::NotPeriodic);
    };
    if !q.is_positive() {
        return Err(Error::Input("period must be positive".into()));
    }
    let x = l * q.clone() / crate::scalar::qi(2);
    if x.is_integer() {
        return Ok(Invariance::Invariant);
    }
    let k: BigInt = x.denom().abs();
    debug_assert!(!k.is_one());
    let k = u64::try_from(k).map_err(|_| Error::Unsupported("torsion order overflow".into()))?;
    Ok(Invariance::TorsionOrder { k })
}
