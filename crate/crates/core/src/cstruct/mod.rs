//! Complex structures on Lie algebras and the canonical bundle.

mod almost_abelian;
mod canonical;

use crate::algebra::{bracket_over, LieAlgebra};
use crate::error::{Error, Result};
use crate::forms::{adapted_coframe, ce_d, Coframe};
use crate::matrix::{vec, Matrix};
use crate::scalar::{Complex, RealField};

pub use almost_abelian::{almost_abelian_report, AlmostAbelianReport};
pub use canonical::{
    chern_ricci, decide_invariant_trivial, dsigma_beta, g10_unimodular, obstruction_check,
    power_invariant_trivial, psi, CanonicalOneForm, ChernRicciForm, ObstructionStatus,
    TrivialityReport, TrivialityVerdict,
};

/// A linear map `J` with `J^2 = -I`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure<F> {
    j: Matrix<F>,
}

impl<F: RealField> ComplexStructure<F> {
    pub fn new(j: Matrix<F>) -> Result<Self> {
        crate::forms::check_almost_complex(&j)?;
        Ok(ComplexStructure { j })
    }

    /// `J e_a = e_b` and `J e_b = -e_a` for each listed pair.
    pub fn from_pairs(dim: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut j = Matrix::zeros(dim, dim);
        for &(a, b) in pairs {
            if a >= dim || b >= dim {
                return Err(Error::Input(format!("pair ({a}, {b}) out of range")));
            }
            j[(b, a)] = F::one();
            j[(a, b)] = -F::one();
        }
        Self::new(j)
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        self.j.mul_vec(x)
    }

    pub fn coframe(&self) -> Coframe<F> {
        adapted_coframe(&self.j).expect("validated on construction")
    }

    /// `-J`, the conjugate structure.
    pub fn conjugate(&self) -> Self {
        ComplexStructure {
            j: self.j.scale(&-F::one()),
        }
    }

    /// The structure seen in the basis `f_j = P e_j`.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let pinv = p.inverse()?;
        Self::new(pinv.mul(&self.j).mul(p))
    }
}

fn check_dims<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) {
    assert_eq!(alg.dim(), j.dim(), "algebra and J dimensions differ");
}

/// `N(x, y) = [x, y] + J([Jx, y] + [x, Jy]) - [Jx, Jy]`.
pub fn nijenhuis<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
    x: &[F],
    y: &[F],
) -> Vec<F> {
    let (jx, jy) = (j.apply(x), j.apply(y));
    let inner = vec::add(&alg.bracket(&jx, y), &alg.bracket(x, &jy));
    vec::sub(
        &vec::add(&alg.bracket(x, y), &j.apply(&inner)),
        &alg.bracket(&jx, &jy),
    )
}

/// First basis pair `j < k` with `N(e_j, e_k) != 0`.
pub fn nijenhuis_witness<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
) -> Option<(usize, usize)> {
    check_dims(alg, j);
    let n = alg.dim();
    for a in 0..n {
        for b in a + 1..n {
            let v = nijenhuis(alg, j, &vec::unit(n, a), &vec::unit(n, b));
            if !vec::is_zero(&v) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Whether `d` of some `(1,0)`-form has a `(0,2)` part.
fn bigrading_defect<F: RealField>(alg: &LieAlgebra<F>, cf: &Coframe<F>) -> Option<usize> {
    (0..cf.n()).find(|&k| {
        let dg = ce_d(alg, &cf.gamma(k));
        cf.bigrade(&dg).contains_key(&(0, 2))
    })
}

/// Integrability by the Nijenhuis tensor, confirmed through the bigrading
/// of `d` on `(1,0)`-forms.
pub fn is_integrable<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> Result<bool> {
    let tensor = nijenhuis_witness(alg, j).is_none();
    let forms = bigrading_defect(alg, &j.coframe()).is_none();
    if tensor != forms {
        return Err(Error::Internal(format!(
            "Nijenhuis tensor says integrable={tensor}, bigrading says {forms}"
        )));
    }
    Ok(tensor)
}

/// `[Jx, Jy] = [x, y]` on all basis pairs.
pub fn is_abelian_cs<F: RealField>(alg: &LieAlgebra<F>, j: &ComplexStructure<F>) -> bool {
    check_dims(alg, j);
    let n = alg.dim();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let (x, y) = (vec::unit(n, a), vec::unit(n, b));
            alg.bracket(&j.apply(&x), &j.apply(&y)) == alg.bracket(&x, &y)
        })
    })
}

/// Basis `w_k = u_k - i v_k` of `g^{1,0}`.
pub(crate) fn holomorphic_basis<F: RealField>(cf: &Coframe<F>) -> Vec<Vec<Complex<F>>> {
    (0..cf.n())
        .map(|k| {
            cf.u[k]
                .iter()
                .zip(&cf.v[k])
                .map(|(a, b)| Complex::new(a.clone(), -b.clone()))
                .collect()
        })
        .collect()
}

pub(crate) fn complex_bracket<F: RealField>(
    alg: &LieAlgebra<F>,
    x: &[Complex<F>],
    y: &[Complex<F>],
) -> Vec<Complex<F>> {
    bracket_over(alg, x, y, |c| Complex::from(c.clone()))
}

pub(crate) fn is_zero_vec<F: RealField>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};

    pub(crate) fn kodaira() -> LieAlgebra<Rational> {
        LieAlgebra::from_brackets(
            4,
            &[
                (1, 2, vec![(3, qi(1))]),
                (0, 1, vec![(2, qi(1))]),
                (0, 2, vec![(1, qi(-1))]),
            ],
        )
        .unwrap()
        .with_base(0)
    }

    #[test]
    fn kodaira_structure_is_integrable() {
        let g = kodaira();
        let j = ComplexStructure::from_pairs(4, &[(0, 3), (1, 2)]).unwrap();
        assert_eq!(nijenhuis_witness(&g, &j), None);
        assert!(is_integrable(&g, &j).unwrap());
        let x = vec::unit::<Rational>(4, 1);
        assert!(vec::is_zero(&nijenhuis(&g, &j, &x, &x)));
    }

    #[test]
    fn other_structure_on_kodaira_is_not() {
        let g = kodaira();
        let j = ComplexStructure::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let n = nijenhuis(&g, &j, &vec::unit(4, 0), &vec::unit(4, 2));
        assert_eq!(n, vec![qi(0), qi(-1), qi(-1), qi(0)]);
        assert!(!is_integrable(&g, &j).unwrap());
        assert_eq!(nijenhuis_witness(&g, &j), Some((0, 2)));
    }

    #[test]
    fn abelian_algebra() {
        let g = LieAlgebra::<Rational>::abelian(4);
        let j = ComplexStructure::from_pairs(4, &[(0, 2), (1, 3)]).unwrap();
        assert!(is_integrable(&g, &j).unwrap());
        assert!(is_abelian_cs(&g, &j));
    }

    #[test]
    fn rejects_non_complex_j() {
        assert!(ComplexStructure::new(Matrix::<Rational>::identity(2)).is_err());
        assert!(ComplexStructure::<Rational>::from_pairs(3, &[(0, 1)]).is_err());
    }
}
