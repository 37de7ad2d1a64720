use super::Form;
use crate::algebra::LieAlgebra;
use crate::scalar::{Field, Ring};

/// `d e^l = -sum_{j<k} c_{jk}^l e^{jk}`, i.e. `d a(x, y) = -a([x, y])`.
pub fn ce_d_basis<F: Field, K: Ring + From<F>>(alg: &LieAlgebra<F>, l: usize) -> Form<K> {
    let n = alg.dim();
    let mut f = Form::zero(n, 2);
    for (j, k, c) in alg.nonzero_brackets() {
        if !c[l].is_zero() {
            f.add_term(vec![j, k], -K::from(c[l].clone()));
        }
    }
    f
}

/// Chevalley–Eilenberg differential, extended as an antiderivation.
pub fn ce_d<F: Field, K: Ring + From<F>>(alg: &LieAlgebra<F>, a: &Form<K>) -> Form<K> {
    let n = alg.dim();
    assert_eq!(a.dim(), n, "form and algebra dimensions differ");
    let de: Vec<Form<K>> = (0..n).map(|l| ce_d_basis(alg, l)).collect();
    let mut out = Form::zero(n, a.degree() + 1);
    for (idx, c) in a.terms() {
        for (r, &i) in idx.iter().enumerate() {
            if de[i].is_zero() {
                continue;
            }
            let left = Form::<K>::basis(n, &idx[..r]);
            let right = Form::<K>::basis(n, &idx[r + 1..]);
            let t = left.w(&de[i]).w(&right);
            let s = if r % 2 == 1 { -c.clone() } else { c.clone() };
            out = out + t.scale(&s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Complex, Rational};

    type C = Complex<Rational>;

    fn kodaira() -> LieAlgebra<Rational> {
        LieAlgebra::from_brackets(
            4,
            &[
                (1, 2, vec![(3, qi(1))]),
                (0, 1, vec![(2, qi(1))]),
                (0, 2, vec![(1, qi(-1))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn kodaira_differentials() {
        let g = kodaira();
        let d = |l| ce_d_basis::<_, Rational>(&g, l);
        assert_eq!(d(1), Form::basis(4, &[0, 2]));
        assert_eq!(d(2), -Form::basis(4, &[0, 1]));
        assert_eq!(d(3), -Form::basis(4, &[1, 2]));
        assert!(d(0).is_zero());
    }

    #[test]
    fn kodaira_sigma_not_closed() {
        let g = kodaira();
        let c = |re, im| C::new(qi(re), qi(im));
        let g1 = Form::from_covector(&[c(1, 0), c(0, 0), c(0, 0), c(0, 1)]);
        let g2 = Form::from_covector(&[c(0, 0), c(1, 0), c(0, 1), c(0, 0)]);
        let sigma = g1.w(&g2);
        let expected = Form::monomial(4, &[0, 2, 3], c(0, -1)) + Form::monomial(4, &[0, 1, 3], c(-1, 0));
        assert_eq!(ce_d(&g, &sigma), expected);
    }

    #[test]
    fn d_squared_vanishes_and_leibniz() {
        let g = kodaira();
        for l in 0..4 {
            let e = Form::<Rational>::basis(4, &[l]);
            assert!(ce_d(&g, &ce_d(&g, &e)).is_zero());
        }
        let a = Form::<Rational>::basis(4, &[1]) + Form::basis(4, &[3]).scale(&qi(2));
        let b = Form::<Rational>::basis(4, &[0, 2]);
        let lhs = ce_d(&g, &a.w(&b));
        let rhs = ce_d(&g, &a).w(&b) - a.w(&ce_d(&g, &b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn abelian_is_closed() {
        let g = LieAlgebra::<Rational>::abelian(5);
        assert!(ce_d(&g, &Form::<Rational>::basis(5, &[0, 3])).is_zero());
    }
}
