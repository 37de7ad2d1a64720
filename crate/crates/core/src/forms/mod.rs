//! Exterior algebra on the dual of a Lie algebra.
//!
//! A `k`-form is a sparse map from strictly increasing index lists to
//! coefficients; `e^{jk}` means `e^j ^ e^k`.

mod coframe;
mod differential;
mod notation;

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;

pub use coframe::{adapted_coframe, Coframe};
pub(crate) use coframe::check_almost_complex;
pub use differential::{ce_d, ce_d_basis};
pub use notation::{format_form, format_one_form, format_wedge, parse_form};

#[derive(Clone, Debug, PartialEq)]
pub struct Form<K> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, K>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` on a
/// repeated index.
fn sort_sign(idx: &mut [usize]) -> Option<bool> {
    let mut neg = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(neg)
    }
}

/// Merge of two sorted index lists with the sign of the shuffle.
fn merge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut neg = false;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i < a.len() && a[i] == b[j] {
            return None;
        } else {
            // b[j] jumps over the a's still waiting
            if (a.len() - i) % 2 == 1 {
                neg = !neg;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    Some((out, neg))
}

impl<K: Ring> Form<K> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: K) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(Vec::new(), c);
        f
    }

    /// `c e^{idx}`; the indices may come in any order.
    pub fn monomial(dim: usize, idx: &[usize], c: K) -> Self {
        assert!(idx.iter().all(|&i| i < dim), "index out of range");
        let mut f = Self::zero(dim, idx.len());
        let mut v = idx.to_vec();
        if let Some(neg) = sort_sign(&mut v) {
            f.add_term(v, if neg { -c } else { c });
        }
        f
    }

    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        Self::monomial(dim, idx, K::one())
    }

    /// The 1-form `sum c_i e^i`.
    pub fn from_covector(c: &[K]) -> Self {
        let mut f = Self::zero(c.len(), 1);
        for (i, x) in c.iter().enumerate() {
            f.add_term(vec![i], x.clone());
        }
        f
    }

    /// The 2-form with `a(e_j, e_k) = m[(j, k)]`; `m` must be antisymmetric.
    pub fn from_antisymmetric(m: &Matrix<K>) -> Self {
        let n = m.rows();
        let mut f = Self::zero(n, 2);
        for j in 0..n {
            for k in j + 1..n {
                f.add_term(vec![j, k], m[(j, k)].clone());
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &K)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `e^{idx}` for sorted `idx`.
    pub fn coeff(&self, idx: &[usize]) -> K {
        self.terms.get(idx).cloned().unwrap_or_else(K::zero)
    }

    /// Adds `c e^{idx}` for a sorted index list.
    pub fn add_term(&mut self, idx: Vec<usize>, c: K) {
        debug_assert_eq!(idx.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&idx);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(idx, c);
            }
        }
    }

    fn check_same(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "forms on different spaces");
        assert!(
            self.degree == o.degree || self.is_zero() || o.is_zero(),
            "adding forms of different degree"
        );
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut f = Self::zero(self.dim, self.degree);
        for (i, x) in &self.terms {
            f.add_term(i.clone(), x.clone() * c.clone());
        }
        f
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> Form<L> {
        let mut out = Form::zero(self.dim, self.degree);
        for (i, x) in &self.terms {
            out.add_term(i.clone(), f(x));
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.dim != o.dim {
            return Err(Error::Dimension(format!(
                "wedge of forms on dimensions {} and {}",
                self.dim, o.dim
            )));
        }
        let mut f = Self::zero(self.dim, self.degree + o.degree);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((idx, neg)) = merge(a, b) {
                    let c = x.clone() * y.clone();
                    f.add_term(idx, if neg { -c } else { c });
                }
            }
        }
        Ok(f)
    }

    /// Wedge for forms known to live on the same space.
    pub fn w(&self, o: &Self) -> Self {
        self.wedge(o).expect("forms on different spaces")
    }

    /// `a(x_1, ..., x_k)` with `e^{jk}(e_j, e_k) = 1`.
    pub fn eval(&self, xs: &[Vec<K>]) -> K {
        assert_eq!(xs.len(), self.degree);
        let mut acc = K::zero();
        for (idx, c) in &self.terms {
            let m = Matrix::from_rows(
                idx.iter()
                    .map(|&i| xs.iter().map(|x| x[i].clone()).collect())
                    .collect(),
            )
            .unwrap();
            let d = if idx.is_empty() { K::one() } else { m.det_ring() };
            acc = acc + c.clone() * d;
        }
        acc
    }

    /// Replaces each `e^i` by the 1-form `images[i]` and expands.
    pub fn pullback(&self, images: &[Form<K>]) -> Self {
        assert_eq!(images.len(), self.dim);
        let target = images.first().map_or(self.dim, |f| f.dim);
        let mut out = Self::zero(target, self.degree);
        for (idx, c) in &self.terms {
            let mut acc = Form::constant(target, c.clone());
            for &i in idx {
                acc = acc.w(&images[i]);
                if acc.is_zero() {
                    break;
                }
            }
            out = out + acc;
        }
        out
    }
}

impl<K: Ring> Add for Form<K> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.check_same(&o);
        if self.is_zero() && !o.is_zero() {
            return o;
        }
        for (i, x) in o.terms {
            self.add_term(i, x);
        }
        self
    }
}

impl<K: Ring> Neg for Form<K> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-K::one())
    }
}

impl<K: Ring> Sub for Form<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Complex, Rational};
    use proptest::prelude::*;

    type C = Complex<Rational>;

    fn c(re: i64, im: i64) -> C {
        Complex::new(qi(re), qi(im))
    }

    #[test]
    fn basic_wedges() {
        let e1 = Form::<Rational>::basis(4, &[1]);
        let e2 = Form::basis(4, &[2]);
        assert_eq!(e1.w(&e2), Form::basis(4, &[1, 2]));
        assert_eq!(e2.w(&e1), -Form::basis(4, &[1, 2]));
        let e12 = Form::<Rational>::basis(4, &[1, 2]);
        assert!(e12.w(&e12).is_zero());
        assert!(Form::<Rational>::basis(3, &[0]).wedge(&Form::basis(4, &[0])).is_err());
    }

    #[test]
    fn gaussian_one_forms() {
        // (e0 - i e3) ^ (e0 + i e3) = 2i e03
        let a = Form::from_covector(&[c(1, 0), c(0, 0), c(0, 0), c(0, -1)]);
        let b = Form::from_covector(&[c(1, 0), c(0, 0), c(0, 0), c(0, 1)]);
        assert_eq!(a.w(&b), Form::monomial(4, &[0, 3], c(0, 2)));
    }

    #[test]
    fn monomial_sorts_with_sign() {
        let f = Form::<Rational>::basis(5, &[3, 0, 2]);
        assert_eq!(f.coeff(&[0, 2, 3]), qi(1));
        let g = Form::<Rational>::basis(5, &[3, 2, 0]);
        assert_eq!(g.coeff(&[0, 2, 3]), qi(-1));
        assert!(Form::<Rational>::basis(5, &[1, 1]).is_zero());
    }

    #[test]
    fn evaluation_matches_coefficients() {
        let f = Form::<Rational>::monomial(3, &[0, 2], qi(5));
        let e = |i| crate::matrix::vec::unit::<Rational>(3, i);
        assert_eq!(f.eval(&[e(0), e(2)]), qi(5));
        assert_eq!(f.eval(&[e(2), e(0)]), qi(-5));
        assert_eq!(f.eval(&[e(0), e(1)]), qi(0));
    }

    fn arb_form(dim: usize, deg: usize) -> impl Strategy<Value = Form<Rational>> {
        proptest::collection::vec((proptest::sample::subsequence((0..dim).collect::<Vec<_>>(), deg), -3i64..=3), 0..5)
            .prop_map(move |ts| {
                let mut f = Form::zero(dim, deg);
                for (i, x) in ts {
                    f.add_term(i, qi(x));
                }
                f
            })
    }

    proptest! {
        #[test]
        fn graded_anticommutativity(
            a1 in arb_form(6, 1), b1 in arb_form(6, 1),
            a2 in arb_form(6, 2), b3 in arb_form(6, 3),
        ) {
            prop_assert_eq!(a1.w(&b1), -b1.w(&a1));
            prop_assert_eq!(a1.w(&a2), a2.w(&a1));
            prop_assert_eq!(a1.w(&b3), -b3.w(&a1));
            prop_assert_eq!(a2.w(&b3), b3.w(&a2));
            prop_assert!(a1.w(&a1).is_zero());
        }

        #[test]
        fn wedge_is_associative(a in arb_form(6, 1), b in arb_form(6, 2), c in arb_form(6, 2)) {
            prop_assert_eq!(a.w(&b).w(&c), a.w(&b.w(&c)));
        }
    }
}
