use serde::Serialize;

use super::{check_dims, psi, ComplexStructure};
use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{vec, Matrix};
use crate::scalar::RealField;
use crate::subspace::SubspaceBasis;

/// `ad e_t` on the ideal `u = R f_1 + (u cap Ju)` with `f_1 = -J e_t`,
/// written as `[a 0; v A]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlmostAbelianReport<F> {
    pub a: F,
    pub trace_a: F,
    pub trace_j1a: F,
    /// `a + Tr A / 2 = 0` and `Tr(J_1 A) = 0`.
    pub conditions_hold: bool,
    pub unimodular: bool,
}

fn precondition(msg: &str) -> Error {
    Error::Precondition(msg.into())
}

/// Reads `a`, `Tr A` and `Tr(J_1 A)` off an almost abelian algebra whose
/// abelian ideal is spanned by every basis vector except `e_t`.
pub fn almost_abelian_report<F: RealField>(
    alg: &LieAlgebra<F>,
    j: &ComplexStructure<F>,
    t: usize,
) -> Result<AlmostAbelianReport<F>> {
    check_dims(alg, j);
    let n = alg.dim();
    if t >= n {
        return Err(Error::Input(format!("transversal index {t} out of range")));
    }
    let rest: Vec<usize> = (0..n).filter(|&i| i != t).collect();
    for (x, &p) in rest.iter().enumerate() {
        for &q in &rest[x + 1..] {
            if !vec::is_zero(&alg.bracket_basis(p, q)) {
                return Err(precondition("the complement of e_t is not abelian"));
            }
        }
        if !alg.bracket_basis(t, p)[t].is_zero() {
            return Err(precondition("the complement of e_t is not an ideal"));
        }
    }
    let u = SubspaceBasis::span(n, rest.iter().map(|&i| vec::unit(n, i)));
    let f1 = vec::scale(&j.apply(&vec::unit(n, t)), &-F::one());
    if !u.contains(&f1) {
        return Err(precondition("J e_t does not lie in the ideal"));
    }
    let w = u.intersection(&u.image(j.matrix()));
    if w.dim() + 2 != n {
        return Err(precondition("u cap Ju has the wrong dimension"));
    }
    let ub = SubspaceBasis::span(n, std::iter::once(f1.clone()).chain(w.basis().iter().cloned()));
    let ad = alg.ad_basis(t);
    let b_cols: Vec<Vec<F>> = ub
        .basis()
        .iter()
        .map(|x| ub.coordinates(&ad.mul_vec(x)).expect("u is an ideal"))
        .collect();
    let b = Matrix::from_cols(n - 1, &b_cols);
    if (1..n - 1).any(|c| !b[(0, c)].is_zero()) {
        return Err(precondition("ad e_t does not preserve u cap Ju"));
    }
    let idx: Vec<usize> = (1..n - 1).collect();
    let a_blk = b.select(&idx, &idx);
    let j1_cols: Vec<Vec<F>> = w
        .basis()
        .iter()
        .map(|x| w.coordinates(&j.apply(x)).expect("u cap Ju is J-invariant"))
        .collect();
    let j1 = Matrix::from_cols(n - 2, &j1_cols);
    if a_blk.mul(&j1) != j1.mul(&a_blk) {
        return Err(precondition("A does not commute with J_1"));
    }
    let a = b[(0, 0)].clone();
    let trace_a = a_blk.trace();
    let trace_j1a = j1.mul(&a_blk).trace();
    let two = F::from_i64(2);
    let half_tr = trace_a.div(&two)?;

    let p = psi(alg, j);
    if p.at(t).clone() != trace_j1a
        || p.eval(&f1) != -(a.clone() * two) - trace_a.clone()
        || w.basis().iter().any(|x| !p.eval(x).is_zero())
    {
        return Err(Error::Internal("block data disagrees with psi".into()));
    }
    Ok(AlmostAbelianReport {
        conditions_hold: (a.clone() + half_tr).is_zero() && trace_j1a.is_zero(),
        unimodular: (a.clone() + trace_a.clone()).is_zero(),
        a,
        trace_a,
        trace_j1a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi, Rational};

    #[test]
    fn inoue_type_fails() {
        let g = LieAlgebra::from_brackets(
            4,
            &[
                (0, 1, vec![(1, qi(1))]),
                (0, 2, vec![(2, q(-1, 2)), (3, qi(1))]),
                (0, 3, vec![(2, qi(-1)), (3, q(-1, 2))]),
            ],
        )
        .unwrap();
        let j = ComplexStructure::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let r = almost_abelian_report(&g, &j, 0).unwrap();
        assert_eq!(r.a, qi(1));
        assert_eq!(r.trace_a, qi(-1));
        assert!(!r.conditions_hold);
        assert!(r.unimodular);
    }

    #[test]
    fn g1_holds() {
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
        // e5 acts on the abelian ideal; -J e5 = -e6 lies in it
        let j = ComplexStructure::from_pairs(6, &[(0, 3), (1, 2), (4, 5)]).unwrap();
        let r = almost_abelian_report(&g, &j, 4).unwrap();
        assert!(r.conditions_hold);
        assert_eq!(r.a, qi(0));
        assert_eq!(r.trace_a, qi(0));
    }

    #[test]
    fn abelian_and_bad_splittings() {
        let g = LieAlgebra::<Rational>::abelian(4);
        let j = ComplexStructure::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(almost_abelian_report(&g, &j, 0).unwrap().conditions_hold);
        let h = LieAlgebra::from_brackets(4, &[(1, 2, vec![(3, qi(1))])]).unwrap();
        assert!(matches!(
            almost_abelian_report(&h, &j, 0),
            Err(Error::Precondition(_))
        ));
    }
}
