use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::{
    check_dims, complex_bracket, holomorphic_basis, is_integrable, is_zero_vec, nijenhuis_witness,
    ComplexStructure,
};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::forms::{ce_d, format_form, Form};
use crate::matrix::{vec, Matrix};
use crate::scalar::{Complex, Field, RealField, Ring, ToScalar};

/// The covector `psi(x) = Tr(J ad x) - Tr ad(Jx)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalOneForm<F> {
    pub values: Vec<F>,
}

impl<F: RealField> CanonicalOneForm<F> {
    pub fn at(&self, i: usize) -> &F {
        &self.values[i]
    }

    pub fn eval(&self, x: &[F]) -> F {
        vec::dot(&self.values, x)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.values.iter().position(|x| !x.is_zero())
    }

    pub fn to_form(&self) -> Form<F> {
        Form::from_covector(&self.values)
    }
}

pub fn psi<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> CanonicalOneForm<F> {
    check_dims(alg, j);
    let n = alg.dim();
    let tr: Vec<F> = (0..n).map(|l| alg.ad_basis(l).trace()).collect();
    let values = (0..n)
        .map(|i| {
            let a = j.matrix().mul(&alg.ad_basis(i)).trace();
            let b = vec::dot(&tr, &j.matrix().col(i));
            a - b
        })
        .collect();
    CanonicalOneForm { values }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum TrivialityVerdict {
    InvariantTrivial,
    /// `psi(e_witness) != 0`.
    NoInvariantSection { witness: usize },
    /// `N(e_j, e_k) != 0`.
    NotIntegrable { pair: (usize, usize) },
}

impl TrivialityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            TrivialityVerdict::InvariantTrivial => "InvariantTrivial",
            TrivialityVerdict::NoInvariantSection { .. } => "NoInvariantSection",
            TrivialityVerdict::NotIntegrable { .. } => "NotIntegrable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ObstructionStatus {
    PsiVanishesOnCommutator,
    /// `psi([e_j, e_k]) != 0`.
    ObstructedNotTorsion { pair: (usize, usize) },
}

impl ObstructionStatus {
    pub fn name(&self) -> &'static str {
        match self {
            ObstructionStatus::PsiVanishesOnCommutator => "PsiVanishesOnCommutator",
            ObstructionStatus::ObstructedNotTorsion { .. } => "ObstructedNotTorsion",
        }
    }

    pub fn describe<F: Field>(&self, alg: &LieAlgebra<F>) -> String {
        match self {
            ObstructionStatus::PsiVanishesOnCommutator => {
                "psi vanishes on [g,g]; compact quotients possibly have holomorphically torsion canonical bundle".into()
            }
            ObstructionStatus::ObstructedNotTorsion { pair: (a, b) } => format!(
                "psi([{}, {}]) != 0; no compact quotient has holomorphically torsion canonical bundle",
                alg.label(*a),
                alg.label(*b)
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrivialityReport<F> {
    pub integrable: bool,
    pub psi: CanonicalOneForm<F>,
    pub verdict: TrivialityVerdict,
    pub obstruction: Option<ObstructionStatus>,
    pub sigma: Form<Complex<F>>,
    pub dsigma: Form<Complex<F>>,
}

impl<F: RealField + ToScalar> TrivialityReport<F> {
    pub fn to_json(&self, alg: &LieAlgebra<F>) -> Value {
        let mut psi = Map::new();
        for (i, v) in self.psi.values.iter().enumerate() {
            if !v.is_zero() {
                psi.insert(alg.label(i), Value::String(v.to_scalar().to_string()));
            }
        }
        let mut out = json!({
            "integrable": self.integrable,
            "psi": psi,
            "verdict": self.verdict.name(),
            "obstruction": self.obstruction.map(|o| o.name()),
        });
        match self.verdict {
            TrivialityVerdict::NoInvariantSection { witness } => {
                out["witness"] = json!(alg.label(witness));
            }
            TrivialityVerdict::NotIntegrable { pair: (a, b) } => {
                out["witness"] = json!([alg.label(a), alg.label(b)]);
            }
            TrivialityVerdict::InvariantTrivial => {
                out["sigma"] = json!(format_form(&self.sigma.map(|z| z.to_scalar()), alg.base()));
            }
        }
        if let Some(ObstructionStatus::ObstructedNotTorsion { pair: (a, b) }) = self.obstruction {
            out["obstruction_witness"] = json!([alg.label(a), alg.label(b)]);
        }
        out
    }
}

/// Decides whether `(g, J)` has a nonzero closed invariant `(n,0)`-form.
///
/// The verdict comes from `N_J` and `psi`; `d sigma` is computed as well
/// and must agree.
pub fn decide_invariant_trivial<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
) -> Result<TrivialityReport<F>> {
    let integrable = is_integrable(alg, j)?;
    let p = psi(alg, j);
    let verdict = if !integrable {
        TrivialityVerdict::NotIntegrable {
            pair: nijenhuis_witness(alg, j).expect("non-integrable has a witness"),
        }
    } else if let Some(w) = p.first_nonzero() {
        TrivialityVerdict::NoInvariantSection { witness: w }
    } else {
        TrivialityVerdict::InvariantTrivial
    };
    let sigma = j.coframe().sigma();
    let dsigma = ce_d(alg, &sigma);
    if dsigma.is_zero() != (verdict == TrivialityVerdict::InvariantTrivial) {
        return Err(Error::Internal(format!(
            "verdict {} but d sigma is{} zero",
            verdict.name(),
            if dsigma.is_zero() { "" } else { " not" }
        )));
    }
    let obstruction = integrable.then(|| obstruction_check(alg, j));
    Ok(TrivialityReport {
        integrable,
        psi: p,
        verdict,
        obstruction,
        sigma,
        dsigma,
    })
}

fn require_integrable<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> Result<()> {
    match nijenhuis_witness(alg, j) {
        Some((a, b)) => Err(Error::NotIntegrable(a, b)),
        None => Ok(()),
    }
}

/// The `(0,1)`-form `beta` with `d sigma = beta ^ sigma`.
pub fn dsigma_beta<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
) -> Result<Form<Complex<F>>> {
    require_integrable(alg, j)?;
    let p = psi(alg, j);
    let cf = j.coframe();
    let quarter = Complex::from(F::one().div(&F::from_i64(4))?);
    let mut beta = Form::zero(alg.dim(), 1);
    for k in 0..cf.n() {
        let c = Complex::new(-p.eval(&cf.v[k]), p.eval(&cf.u[k]));
        beta = beta + cf.gamma_bar(k).scale(&(c * quarter.clone()));
    }
    let sigma = cf.sigma();
    if beta.w(&sigma) != ce_d(alg, &sigma) {
        return Err(Error::Internal("beta ^ sigma differs from d sigma".into()));
    }
    Ok(beta)
}

/// Whether `K^k` has an invariant trivializing section; `dbar sigma^k = k beta sigma^k`.
pub fn power_invariant_trivial<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
    k: u32,
) -> Result<bool> {
    if k < 1 {
        return Err(Error::Precondition("power must be at least 1".into()));
    }
    let beta = dsigma_beta(alg, j)?;
    Ok(beta.scale(&Complex::from_i64(k as i64)).is_zero())
}

/// Unimodularity of `g^{1,0}`, computed in the basis `u_k - i v_k`.
pub fn g10_unimodular<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> Result<bool> {
    if !alg.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    require_integrable(alg, j)?;
    let cf = j.coframe();
    let w = holomorphic_basis(&cf);
    let gammas: Vec<Vec<Complex<F>>> = (0..cf.n()).map(|k| cf.gamma_covector(k)).collect();
    let half = Complex::from(F::one().div(&F::from_i64(2))?);
    let mut unimodular = true;
    for wk in &w {
        let mut tr = Complex::zero();
        for (l, wl) in w.iter().enumerate() {
            let z = complex_bracket(alg, wk, wl);
            for g in &gammas {
                let bar: Vec<Complex<F>> = g.iter().map(|c| c.conj()).collect();
                if !vec::dot(&bar, &z).is_zero() {
                    return Err(Error::Internal("g^{1,0} is not a subalgebra".into()));
                }
            }
            tr = tr + vec::dot(&gammas[l], &z) * half.clone();
        }
        if !tr.is_zero() {
            unimodular = false;
        }
    }
    if unimodular != psi(alg, j).is_zero() {
        return Err(Error::Internal(
            "g^{1,0} unimodularity disagrees with psi".into(),
        ));
    }
    Ok(unimodular)
}

/// `rho(e_j, e_k)` as an antisymmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernRicciForm<F> {
    pub matrix: Matrix<F>,
}

impl<F: RealField> ChernRicciForm<F> {
    pub fn to_form(&self) -> Form<F> {
        Form::from_antisymmetric(&self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// `rho(x, y) = (Tr(J ad[x,y]) - Tr ad(J[x,y])) / 2`.
pub fn chern_ricci<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> ChernRicciForm<F> {
    check_dims(alg, j);
    let n = alg.dim();
    let half = F::one().div(&F::from_i64(2)).unwrap();
    let mut m = Matrix::zeros(n, n);
    for a in 0..n {
        for b in a + 1..n {
            let z = alg.bracket_basis(a, b);
            if is_zero_vec(&z) {
                continue;
            }
            let jz = j.apply(&z);
            let v = (j.matrix().mul(&alg.ad(&z)).trace() - alg.ad(&jz).trace()) * half.clone();
            m[(a, b)] = v.clone();
            m[(b, a)] = -v;
        }
    }
    ChernRicciForm { matrix: m }
}

/// Tests `psi([g, g]) = 0` on basis brackets.
pub fn obstruction_check<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> ObstructionStatus {
    let p = psi(alg, j);
    for (a, b, z) in alg.nonzero_brackets() {
        if !p.eval(&z).is_zero() {
            return ObstructionStatus::ObstructedNotTorsion { pair: (a, b) };
        }
    }
    ObstructionStatus::PsiVanishesOnCommutator
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstruct::is_abelian_cs;
    use crate::scalar::{qi, Rational};

    type C = Complex<Rational>;

    fn kodaira() -> (LieAlgebra<Rational>, ComplexStructure<Rational>) {
        let g = LieAlgebra::from_brackets(
            4,
            &[
                (1, 2, vec![(3, qi(1))]),
                (0, 1, vec![(2, qi(1))]),
                (0, 2, vec![(1, qi(-1))]),
            ],
        )
        .unwrap()
        .with_base(0);
        (g, ComplexStructure::from_pairs(4, &[(0, 3), (1, 2)]).unwrap())
    }

    /// `(e^{15}, -e^{25}, -e^{35}, e^{45}, 0, 0)` shifted to zero-based indices.
    fn g1() -> (LieAlgebra<Rational>, ComplexStructure<Rational>) {
        let g = LieAlgebra::from_brackets(
            6,
            &[
                (0, 4, vec![(0, qi(-1))]),
                (1, 4, vec![(1, qi(1))]),
                (2, 4, vec![(2, qi(1))]),
                (3, 4, vec![(3, qi(-1))]),
            ],
        )
        .unwrap();
        (g, ComplexStructure::from_pairs(6, &[(0, 3), (1, 2), (4, 5)]).unwrap())
    }

    #[test]
    fn kodaira_psi_and_verdict() {
        let (g, j) = kodaira();
        let p = psi(&g, &j);
        assert_eq!(p.values, vec![qi(-2), qi(0), qi(0), qi(0)]);
        let r = decide_invariant_trivial(&g, &j).unwrap();
        assert_eq!(r.verdict, TrivialityVerdict::NoInvariantSection { witness: 0 });
        assert_eq!(r.obstruction, Some(ObstructionStatus::PsiVanishesOnCommutator));
        let js = r.to_json(&g);
        assert_eq!(js["psi"], json!({"e0": "-2"}));
        assert_eq!(js["verdict"], "NoInvariantSection");
    }

    #[test]
    fn kodaira_beta() {
        let (g, j) = kodaira();
        let beta = dsigma_beta(&g, &j).unwrap();
        // -(i/2)(e0 - i e3)
        let c = |re, im| C::new(re, im);
        let half = crate::scalar::q(1, 2);
        let expected = Form::from_covector(&[
            c(qi(0), -half.clone()),
            C::zero(),
            C::zero(),
            c(-half, qi(0)),
        ]);
        assert_eq!(beta, expected);
        assert!(!power_invariant_trivial(&g, &j, 2).unwrap());
        assert!(power_invariant_trivial(&g, &j, 0).is_err());
        assert!(!g10_unimodular(&g, &j).unwrap());
        assert!(chern_ricci(&g, &j).is_zero());
    }

    #[test]
    fn g1_is_invariantly_trivial() {
        let (g, j) = g1();
        assert!(!is_abelian_cs(&g, &j));
        let r = decide_invariant_trivial(&g, &j).unwrap();
        assert_eq!(r.verdict, TrivialityVerdict::InvariantTrivial);
        assert!(g10_unimodular(&g, &j).unwrap());
        assert!(power_invariant_trivial(&g, &j, 5).unwrap());
        assert!(dsigma_beta(&g, &j).unwrap().is_zero());
    }

    #[test]
    fn chern_ricci_is_minus_half_dpsi() {
        // Inoue-type: ad e0 = diag(1, -1/2, -1/2) twisted, J e0 = e1, J e2 = e3
        let g = LieAlgebra::from_brackets(
            4,
            &[
                (0, 1, vec![(1, qi(1))]),
                (0, 2, vec![(2, crate::scalar::q(-1, 2)), (3, qi(1))]),
                (0, 3, vec![(2, qi(-1)), (3, crate::scalar::q(-1, 2))]),
            ],
        )
        .unwrap();
        let j = ComplexStructure::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(crate::cstruct::is_integrable(&g, &j).unwrap());
        let rho = chern_ricci(&g, &j);
        assert!(!rho.is_zero());
        let dpsi = ce_d(&g, &psi(&g, &j).to_form());
        assert!((rho.to_form().scale(&qi(2)) + dpsi).is_zero());
        assert!(matches!(
            obstruction_check(&g, &j),
            ObstructionStatus::ObstructedNotTorsion { .. }
        ));
    }

    #[test]
    fn non_integrable_is_reported() {
        let (g, _) = kodaira();
        let j = ComplexStructure::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let r = decide_invariant_trivial(&g, &j).unwrap();
        assert_eq!(r.verdict, TrivialityVerdict::NotIntegrable { pair: (0, 2) });
        assert_eq!(r.obstruction, None);
        assert_eq!(dsigma_beta(&g, &j), Err(Error::NotIntegrable(0, 2)));
    }
}
