//! Hypercomplex triples, the sphere `J_a = a1 J1 + a2 J2 + a3 J3`, and the
//! Obata connection.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::cstruct::{
    decide_invariant_trivial, nijenhuis_witness, psi, CanonicalOneForm, ComplexStructure, TrivialityVerdict,
};
use crate::error::{Error, Result};
use crate::matrix::{vec, Matrix};
use crate::scalar::{q, qi, FromScalar, RealField, Rational, Scalar, ToScalar};
use crate::subspace::SubspaceBasis;

#[derive(Clone, Debug, PartialEq)]
pub struct HypercomplexTriple<F> {
    pub j: [ComplexStructure<F>; 3],
}

impl<F: RealField> HypercomplexTriple<F> {
    pub fn new(j1: ComplexStructure<F>, j2: ComplexStructure<F>, j3: ComplexStructure<F>) -> Self {
        HypercomplexTriple { j: [j1, j2, j3] }
    }

    /// `J3 = J1 J2`.
    pub fn from_pair(j1: ComplexStructure<F>, j2: ComplexStructure<F>) -> Result<Self> {
        let j3 = ComplexStructure::new(j1.matrix().mul(j2.matrix()))?;
        Ok(Self::new(j1, j2, j3))
    }

    pub fn dim(&self) -> usize {
        self.j[0].dim()
    }

    /// `a1 J1 + a2 J2 + a3 J3`.
    pub fn sphere_matrix(&self, a: &SpherePoint) -> Matrix<F> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (k, ak) in a.coords().iter().enumerate() {
            m = m.add(&self.j[k].matrix().scale(&F::from_rational(ak)));
        }
        m
    }
}

/// Standard quaternionic triple on `R^{4n}`: `J1 e0 = e1, J2 e0 = e2, J3 e0 = e3` per block.
pub fn standard_triple<F: RealField>(n: usize) -> HypercomplexTriple<F> {
    let dim = 4 * n;
    let mut pairs1 = Vec::new();
    let mut pairs2 = Vec::new();
    for b in 0..n {
        let o = 4 * b;
        pairs1.extend([(o, o + 1), (o + 2, o + 3)]);
        pairs2.extend([(o, o + 2), (o + 3, o + 1)]);
    }
    let j1 = ComplexStructure::from_pairs(dim, &pairs1).expect("valid pairs");
    let j2 = ComplexStructure::from_pairs(dim, &pairs2).expect("valid pairs");
    HypercomplexTriple::from_pair(j1, j2).expect("quaternionic")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result")]
pub enum TripleCheck {
    Pass,
    Fail { reason: String },
}

/// Quaternion relations and integrability of `J1, J2, J3`.
pub fn validate_triple<F: RealField>(alg: &LieAlgebra<F>, t: &HypercomplexTriple<F>) -> Result<TripleCheck> {
    let n = alg.dim();
    if !n.is_multiple_of(4) {
        return Err(Error::Dimension(format!("hypercomplex needs dim divisible by 4, got {n}")));
    }
    if t.j.iter().any(|j| j.dim() != n) {
        return Err(Error::Dimension("triple and algebra dimensions differ".into()));
    }
    let [j1, j2, j3] = &t.j;
    let fail = |reason: String| Ok(TripleCheck::Fail { reason });
    if j1.matrix().mul(j2.matrix()) != *j3.matrix() {
        return fail("J1 J2 != J3".into());
    }
    if j2.matrix().mul(j1.matrix()) != j3.matrix().scale(&-F::one()) {
        return fail("J2 J1 != -J3".into());
    }
    for (k, j) in t.j.iter().enumerate() {
        if let Some((a, b)) = nijenhuis_witness(alg, j) {
            return fail(format!("J{} is not integrable: N(e{a}, e{b}) != 0", k + 1));
        }
    }
    Ok(TripleCheck::Pass)
}

/// Rational point of the unit sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpherePoint(
    #[serde(with = "crate::scalar::rational_str")] Rational,
    #[serde(with = "crate::scalar::rational_str")] Rational,
    #[serde(with = "crate::scalar::rational_str")] Rational,
);

impl SpherePoint {
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Result<Self> {
        let norm = a1.clone() * a1.clone() + a2.clone() * a2.clone() + a3.clone() * a3.clone();
        if !norm.is_one() {
            return Err(Error::Input(format!("({a1}, {a2}, {a3}) has squared norm {norm}")));
        }
        Ok(SpherePoint(a1, a2, a3))
    }

    pub fn pole(k: usize) -> Self {
        let mut c = [qi(0), qi(0), qi(0)];
        c[k] = qi(1);
        let [a, b, d] = c;
        SpherePoint(a, b, d)
    }

    pub fn coords(&self) -> [Rational; 3] {
        [self.0.clone(), self.1.clone(), self.2.clone()]
    }

    pub fn dot(&self, o: &Self) -> Rational {
        self.0.clone() * o.0.clone() + self.1.clone() * o.1.clone() + self.2.clone() * o.2.clone()
    }

    /// Inverse stereographic image of `(u, v)`.
    pub fn stereographic(u: Rational, v: Rational) -> Self {
        let s = u.clone() * u.clone() + v.clone() * v.clone();
        let d = s.clone() + qi(1);
        SpherePoint(qi(2) * u / d.clone(), qi(2) * v / d.clone(), (s - qi(1)) / d)
    }
}

/// `count` distinct rational sphere points, the three poles first.
pub fn sphere_samples(count: usize) -> Vec<SpherePoint> {
    let mut out: Vec<SpherePoint> = (0..3).map(SpherePoint::pole).collect();
    let mut k = 1i64;
    while out.len() < count {
        for (u, v) in [(q(1, k), q(k, k + 1)), (q(-k, 2), q(1, k + 2)), (q(k, 3), q(-1, k))] {
            let p = SpherePoint::stereographic(u, v);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        k += 1;
    }
    out.truncate(count);
    out
}

/// `J_a`; the square is checked.
pub fn sphere_cs<F: RealField>(t: &HypercomplexTriple<F>, a: &SpherePoint) -> Result<ComplexStructure<F>> {
    ComplexStructure::new(t.sphere_matrix(a))
}

/// `nabla_{e_i} e_j`, stored as `coeffs[i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ObataTable<F> {
    pub coeffs: Vec<Vec<Vec<F>>>,
}

impl<F: RealField> ObataTable<F> {
    pub fn nabla(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = x.len();
        let mut acc = vec::zero(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc = vec::add(&acc, &vec::scale(&self.coeffs[i][j], &(xi.clone() * yj.clone())));
                }
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|v| vec::is_zero(v))
    }
}

/// `nabla_X Y = 1/2([X,Y] + J1[J1 X, Y] - J2[X, J2 Y] + J3[J1 X, J2 Y])`, with
/// torsion-freeness and `nabla J_a = 0` checked on all basis pairs.
pub fn obata<F: RealField>(alg: &LieAlgebra<F>, t: &HypercomplexTriple<F>) -> Result<ObataTable<F>> {
    if let TripleCheck::Fail { reason } = validate_triple(alg, t)? {
        return Err(Error::Precondition(reason));
    }
    let n = alg.dim();
    let [j1, j2, j3] = &t.j;
    let half = F::one().div(&F::from_i64(2))?;
    let formula = |x: &[F], y: &[F]| {
        let j1x = j1.apply(x);
        let j2y = j2.apply(y);
        let mut v = alg.bracket(x, y);
        v = vec::add(&v, &j1.apply(&alg.bracket(&j1x, y)));
        v = vec::sub(&v, &j2.apply(&alg.bracket(x, &j2y)));
        v = vec::add(&v, &j3.apply(&alg.bracket(&j1x, &j2y)));
        vec::scale(&v, &half)
    };
    let e = |i: usize| vec::unit::<F>(n, i);
    let coeffs: Vec<Vec<Vec<F>>> = (0..n).map(|i| (0..n).map(|j| formula(&e(i), &e(j))).collect()).collect();
    let table = ObataTable { coeffs };
    for i in 0..n {
        for j in 0..n {
            let torsion = vec::sub(&vec::sub(&table.coeffs[i][j], &table.coeffs[j][i]), &alg.bracket(&e(i), &e(j)));
            if !vec::is_zero(&torsion) {
                return Err(Error::Validation {
                    equation: "nabla_x y - nabla_y x = [x, y]".into(),
                    witness: format!("({}, {})", alg.label(i), alg.label(j)),
                });
            }
            for (k, jk) in t.j.iter().enumerate() {
                let lhs = table.nabla(&e(i), &jk.apply(&e(j)));
                let rhs = jk.apply(&table.coeffs[i][j]);
                if lhs != rhs {
                    return Err(Error::Validation {
                        equation: format!("nabla J{} = 0", k + 1),
                        witness: format!("({}, {})", alg.label(i), alg.label(j)),
                    });
                }
            }
        }
    }
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct SphereReport<F> {
    pub psi: [CanonicalOneForm<F>; 3],
    /// Some `psi_a` vanishes identically.
    pub some_zero: bool,
    pub samples: usize,
    /// `psi_{J_a} = a1 psi1 + a2 psi2 + a3 psi3` on every sample.
    pub linear: bool,
}

/// The three canonical forms; when one vanishes, every sampled `J_a` is
/// checked to be invariantly trivial.
pub fn psi_sphere_check<F: RealField>(
    alg: &LieAlgebra<F>,
    t: &HypercomplexTriple<F>,
    samples: &[SpherePoint],
) -> Result<SphereReport<F>> {
    if let TripleCheck::Fail { reason } = validate_triple(alg, t)? {
        return Err(Error::Precondition(reason));
    }
    let psis = [psi(alg, &t.j[0]), psi(alg, &t.j[1]), psi(alg, &t.j[2])];
    let some_zero = psis.iter().any(|p| p.is_zero());
    let mut linear = true;
    for a in samples {
        let ja = sphere_cs(t, a)?;
        let pa = psi(alg, &ja);
        let combo: Vec<F> = (0..alg.dim())
            .map(|i| {
                a.coords()
                    .iter()
                    .zip(&psis)
                    .fold(F::zero(), |acc, (c, p)| acc + F::from_rational(c) * p.at(i).clone())
            })
            .collect();
        linear &= pa.values == combo;
        if some_zero {
            let rep = decide_invariant_trivial(alg, &ja)?;
            if rep.verdict != TrivialityVerdict::InvariantTrivial {
                return Err(Error::Internal(format!(
                    "psi vanishes for one J_k but J_a at {a:?} gives {}",
                    rep.verdict.name()
                )));
            }
        }
    }
    Ok(SphereReport {
        psi: psis,
        some_zero,
        samples: samples.len(),
        linear,
    })
}

/// `(g_C)_R` with basis `e_1..e_n, i e_1..i e_n` and the triple
/// `J1 = i` on `g_+`, `-i` on `J g_+`, `J2 = J + iJ`, `J3 = J1 J2`.
pub fn realification_double<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
    g_plus: &SubspaceBasis<F>,
) -> Result<(LieAlgebra<F>, HypercomplexTriple<F>)> {
    let n = alg.dim();
    let g_minus = g_plus.image(j.matrix());
    if !alg.is_subalgebra(g_plus) || !alg.is_subalgebra(&g_minus) {
        return Err(Error::Precondition("g+ and J g+ must be subalgebras".into()));
    }
    if 2 * g_plus.dim() != n || g_plus.sum(&g_minus).dim() != n {
        return Err(Error::Precondition("g is not g+ + J g+".into()));
    }
    if let Some((a, b)) = nijenhuis_witness(alg, j) {
        return Err(Error::NotIntegrable(a, b));
    }
    // S = 1 on g+, -1 on g-
    let basis: Vec<Vec<F>> = g_plus.basis().iter().chain(g_minus.basis()).cloned().collect();
    let b = Matrix::from_cols(n, &basis);
    let mut signs = Matrix::identity(n);
    for k in g_plus.dim()..n {
        signs[(k, k)] = -F::one();
    }
    let s = b.mul(&signs).mul(&b.inverse()?);

    let m = 2 * n;
    let mut out = LieAlgebra::abelian(m).with_base(alg.base());
    for a in 0..n {
        for c in a + 1..n {
            let v = alg.bracket_basis(a, c);
            if vec::is_zero(&v) {
                continue;
            }
            let mut re = vec::zero(m);
            let mut im = vec::zero(m);
            let mut neg = vec::zero(m);
            for (l, x) in v.iter().enumerate() {
                re[l] = x.clone();
                im[n + l] = x.clone();
                neg[l] = -x.clone();
            }
            out.set_bracket(a, c, re)?;
            out.set_bracket(n + a, n + c, neg)?;
            out.set_bracket(a, n + c, im.clone())?;
            // [i e_a, e_c] = i [e_a, e_c]
            out.set_bracket(c, n + a, vec::scale(&im, &-F::one()))?;
        }
    }
    out.validate()?;

    let mut j1 = Matrix::zeros(m, m);
    let mut j2 = Matrix::zeros(m, m);
    for r in 0..n {
        for c in 0..n {
            j1[(n + r, c)] = s[(r, c)].clone();
            j1[(r, n + c)] = -s[(r, c)].clone();
            j2[(r, c)] = j.matrix()[(r, c)].clone();
            j2[(n + r, n + c)] = j.matrix()[(r, c)].clone();
        }
    }
    let triple = HypercomplexTriple::from_pair(ComplexStructure::new(j1)?, ComplexStructure::new(j2)?)?;
    if let TripleCheck::Fail { reason } = validate_triple(&out, &triple)? {
        return Err(Error::Internal(format!("doubled triple fails: {reason}")));
    }
    Ok((out, triple))
}

/// Triple as three matrices of scalar strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleJson {
    pub j1: Vec<Vec<String>>,
    pub j2: Vec<Vec<String>>,
    pub j3: Vec<Vec<String>>,
}

impl<F: RealField + ToScalar> HypercomplexTriple<F> {
    pub fn to_json(&self) -> TripleJson {
        let rows = |m: &Matrix<F>| {
            m.to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_scalar().to_string()).collect())
                .collect()
        };
        TripleJson {
            j1: rows(self.j[0].matrix()),
            j2: rows(self.j[1].matrix()),
            j3: rows(self.j[2].matrix()),
        }
    }
}

impl<F: RealField + FromScalar> HypercomplexTriple<F> {
    pub fn from_json(js: &TripleJson) -> Result<Self> {
        let parse = |rows: &Vec<Vec<String>>| -> Result<ComplexStructure<F>> {
            let m = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| F::from_scalar(&x.parse::<Scalar>()?))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            ComplexStructure::new(Matrix::from_rows(m)?)
        };
        Ok(Self::new(parse(&js.j1)?, parse(&js.j2)?, parse(&js.j3)?))
    }
}
