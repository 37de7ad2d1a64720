use num_traits::Zero;
use serde::Serialize;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{vec, Matrix};
use crate::poly::{char_poly, Poly};
use crate::scalar::{Field, Rational, Ring};
use crate::subspace::SubspaceBasis;

/// Canonical subspaces of a Lie algebra.
#[derive(Clone, Debug)]
pub struct StructureSubspaces<F> {
    pub commutator: SubspaceBasis<F>,
    pub derived_series: Vec<SubspaceBasis<F>>,
    pub lower_central_series: Vec<SubspaceBasis<F>>,
    pub center: SubspaceBasis<F>,
}

impl<F: Field> StructureSubspaces<F> {
    pub fn is_solvable(&self) -> bool {
        self.derived_series.last().is_some_and(|s| s.is_zero())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series.last().is_some_and(|s| s.is_zero())
    }
}

impl<F: Field> LieAlgebra<F> {
    /// `[U, W]`.
    pub fn bracket_spaces(&self, u: &SubspaceBasis<F>, w: &SubspaceBasis<F>) -> SubspaceBasis<F> {
        let mut out = SubspaceBasis::zero(self.dim());
        for a in u.basis() {
            for b in w.basis() {
                out.push_if_independent(self.bracket(a, b));
            }
        }
        out
    }

    pub fn commutator(&self) -> SubspaceBasis<F> {
        SubspaceBasis::span(
            self.dim(),
            self.nonzero_brackets().into_iter().map(|(_, _, v)| v),
        )
    }

    pub fn center(&self) -> SubspaceBasis<F> {
        let n = self.dim();
        // x central iff [x, e_i] = 0 for all i: stack ad-columns as equations
        let mut rows = Vec::new();
        for i in 0..n {
            for l in 0..n {
                rows.push((0..n).map(|j| self.c(j, i, l)).collect::<Vec<F>>());
            }
        }
        if n == 0 {
            return SubspaceBasis::zero(0);
        }
        SubspaceBasis::span(n, Matrix::from_rows(rows).unwrap().kernel())
    }

    pub fn structure_subspaces(&self) -> StructureSubspaces<F> {
        let n = self.dim();
        let full = SubspaceBasis::full(n);
        let mut derived = vec![full.clone()];
        loop {
            let last = derived.last().unwrap();
            let next = self.bracket_spaces(last, last);
            let stop = next.dim() == last.dim();
            derived.push(next);
            if stop || derived.last().unwrap().is_zero() {
                break;
            }
        }
        let mut lower = vec![full.clone()];
        loop {
            let last = lower.last().unwrap();
            let next = self.bracket_spaces(&full, last);
            let stop = next.dim() == last.dim();
            lower.push(next);
            if stop || lower.last().unwrap().is_zero() {
                break;
            }
        }
        StructureSubspaces {
            commutator: derived[1].clone(),
            derived_series: derived,
            lower_central_series: lower,
            center: self.center(),
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.structure_subspaces().is_solvable()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.structure_subspaces().is_nilpotent()
    }

    pub fn is_ideal(&self, w: &SubspaceBasis<F>) -> bool {
        let full = SubspaceBasis::full(self.dim());
        w.contains_space(&self.bracket_spaces(&full, w))
    }

    pub fn is_subalgebra(&self, w: &SubspaceBasis<F>) -> bool {
        w.contains_space(&self.bracket_spaces(w, w))
    }

    /// Is the subalgebra `w` nilpotent?
    pub fn is_nilpotent_subalgebra(&self, w: &SubspaceBasis<F>) -> bool {
        let mut cur = w.clone();
        for _ in 0..=w.dim() {
            if cur.is_zero() {
                return true;
            }
            cur = self.bracket_spaces(w, &cur);
        }
        cur.is_zero()
    }
}

/// Outcome of checking a candidate nilradical.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum NilradicalCheck {
    /// Nilpotent ideal containing `[g, g]` and provably maximal.
    Verified,
    /// Necessary conditions hold; maximality was not decided.
    NecessaryOnly,
    Rejected(String),
}

impl LieAlgebra<Rational> {
    /// Checks that `w` is the nilradical of a solvable algebra.
    ///
    /// Maximality is decided exactly when `codim w <= 2`: the nilpotent
    /// directions in a complement form a rational subspace, located through
    /// the characteristic polynomial of `ad` along a pencil.
    pub fn verify_nilradical(&self, w: &SubspaceBasis<Rational>) -> Result<NilradicalCheck> {
        let s = self.structure_subspaces();
        if !s.is_solvable() {
            return Err(Error::NotSolvable);
        }
        if !self.is_ideal(w) {
            return Ok(NilradicalCheck::Rejected("not an ideal".into()));
        }
        if !w.contains_space(&s.commutator) {
            return Ok(NilradicalCheck::Rejected("does not contain [g, g]".into()));
        }
        if !self.is_nilpotent_subalgebra(w) {
            return Ok(NilradicalCheck::Rejected("not nilpotent".into()));
        }
        let n = self.dim();
        let comp = w.complement_in(&SubspaceBasis::full(n), &[]);
        match comp.len() {
            0 => Ok(NilradicalCheck::Verified),
            1 => {
                if self.ad(&comp[0]).is_nilpotent() {
                    Ok(NilradicalCheck::Rejected(
                        "a complementary direction acts nilpotently".into(),
                    ))
                } else {
                    Ok(NilradicalCheck::Verified)
                }
            }
            2 => {
                let (a, b) = (self.ad(&comp[0]), self.ad(&comp[1]));
                if b.is_nilpotent() {
                    return Ok(NilradicalCheck::Rejected(
                        "a complementary direction acts nilpotently".into(),
                    ));
                }
                match pencil_nilpotent_point(&a, &b) {
                    Some(r) => {
                        let x = vec::add(&comp[0], &vec::scale(&comp[1], &r));
                        debug_assert!(self.ad(&x).is_nilpotent());
                        Ok(NilradicalCheck::Rejected(format!(
                            "direction {} acts nilpotently",
                            fmt_vec(&x)
                        )))
                    }
                    None => Ok(NilradicalCheck::Verified),
                }
            }
            _ => Ok(NilradicalCheck::NecessaryOnly),
        }
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(", "))
}

/// Rational `s` with `a + s b` nilpotent, if any.
fn pencil_nilpotent_point(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Option<Rational> {
    let n = a.rows();
    let samples: Vec<Rational> = (0..=n as i64).map(Rational::from_i64).collect();
    let polys: Vec<Vec<Rational>> = samples
        .iter()
        .map(|s| char_poly(&a.add(&b.scale(s))))
        .collect();
    // coefficient of x^(n-k), k >= 1, as a polynomial in s
    let mut g = Poly::zero();
    for k in 0..n {
        let pts: Vec<(Rational, Rational)> = samples
            .iter()
            .zip(&polys)
            .map(|(s, c)| (s.clone(), c[k].clone()))
            .collect();
        g = g.gcd(&Poly::interpolate(&pts));
    }
    if g.is_zero() {
        // every point of the pencil is nilpotent
        return Some(Rational::zero());
    }
    let sq = g.div_exact(&g.gcd(&g.derivative()));
    match sq.degree() {
        Some(1) => {
            let c = sq.coeffs();
            let r = -c[0].clone() / c[1].clone();
            a.add(&b.scale(&r)).is_nilpotent().then_some(r)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

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

    fn span(n: usize, idx: &[usize]) -> SubspaceBasis<Rational> {
        SubspaceBasis::span(n, idx.iter().map(|&i| vec::unit(n, i)))
    }

    #[test]
    fn kodaira_subspaces() {
        let g = kodaira();
        let s = g.structure_subspaces();
        assert!(s.commutator.same_as(&span(4, &[1, 2, 3])));
        assert!(s.center.same_as(&span(4, &[3])));
        assert!(s.is_solvable());
        assert!(!s.is_nilpotent());
    }

    #[test]
    fn kodaira_nilradical_is_heisenberg() {
        let g = kodaira();
        assert_eq!(g.verify_nilradical(&span(4, &[1, 2, 3])), Ok(NilradicalCheck::Verified));
        assert!(matches!(
            g.verify_nilradical(&span(4, &[1, 3])),
            Ok(NilradicalCheck::Rejected(_))
        ));
    }

    #[test]
    fn codimension_two_pencil_finds_hidden_nilpotent_direction() {
        // R^2 acting on R^2 by diag(1,0) and diag(1,0): t1 - t2 is central
        let n = LieAlgebra::<Rational>::abelian(2);
        let mut a = Matrix::zeros(2, 2);
        a[(0, 0)] = qi(1);
        let g = LieAlgebra::semidirect(2, &n, &[a.clone(), a]).unwrap();
        let w = span(4, &[2, 3]);
        assert!(matches!(g.verify_nilradical(&w), Ok(NilradicalCheck::Rejected(_))));
        let w3 = SubspaceBasis::span(
            4,
            [vec![qi(1), qi(-1), qi(0), qi(0)], vec::unit(4, 2), vec::unit(4, 3)],
        );
        assert_eq!(g.verify_nilradical(&w3), Ok(NilradicalCheck::Verified));
    }

    #[test]
    fn codimension_two_with_independent_actions_is_verified() {
        let n = LieAlgebra::<Rational>::abelian(2);
        let mut a = Matrix::zeros(2, 2);
        a[(0, 0)] = qi(1);
        let mut b = Matrix::zeros(2, 2);
        b[(1, 1)] = qi(1);
        let g = LieAlgebra::semidirect(2, &n, &[a, b]).unwrap();
        assert_eq!(g.verify_nilradical(&span(4, &[2, 3])), Ok(NilradicalCheck::Verified));
    }

    #[test]
    fn non_solvable_input_is_an_error() {
        // sl(2): [h,e]=2e, [h,f]=-2f, [e,f]=h
        let g = LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vec![(1, qi(2))]),
                (0, 2, vec![(2, qi(-2))]),
                (1, 2, vec![(0, qi(1))]),
            ],
        )
        .unwrap();
        assert_eq!(g.verify_nilradical(&span(3, &[1, 2])), Err(Error::NotSolvable));
    }
}
