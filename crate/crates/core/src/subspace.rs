//! Linear subspaces of `F^n` given by a basis.

use crate::matrix::{vec, Matrix};
use crate::scalar::Field;

/// A subspace of `F^ambient`, stored as a list of independent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| vec::unit(ambient, i)))
    }

    /// Span of the given vectors; keeps the first independent ones, in order.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.push_if_independent(v);
        }
        s
    }

    /// Adds `v` if it is not already in the span; returns whether it was added.
    pub fn push_if_independent(&mut self, v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        if vec::is_zero(&v) || self.contains(&v) {
            return false;
        }
        self.basis.push(v);
        true
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn matrix(&self) -> Matrix<F> {
        Matrix::from_cols(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if self.basis.is_empty() {
            return vec::is_zero(v).then(Vec::new);
        }
        self.matrix().solve(v)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, o: &Self) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, o: &Self) -> bool {
        self.dim() == o.dim() && self.contains_space(o)
    }

    pub fn sum(&self, o: &Self) -> Self {
        Self::span(
            self.ambient,
            self.basis.iter().chain(o.basis.iter()).cloned(),
        )
    }

    pub fn intersection(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ambient);
        }
        // a.u - b.w = 0
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().map(|w| vec::scale(w, &-F::one())));
        let m = Matrix::from_cols(self.ambient, &cols);
        let vs = m.kernel().into_iter().map(|c| {
            let mut v = vec::zero(self.ambient);
            for (i, u) in self.basis.iter().enumerate() {
                v = vec::add(&v, &vec::scale(u, &c[i]));
            }
            v
        });
        Self::span(self.ambient, vs)
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        Self::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }

    pub fn is_invariant(&self, m: &Matrix<F>) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// Extends `self` by vectors from `candidates` until it spans `target`.
    ///
    /// Returns only the added vectors.
    pub fn complement_in(&self, target: &Self, candidates: &[Vec<F>]) -> Vec<Vec<F>> {
        let mut acc = self.clone();
        let mut added = Vec::new();
        for c in candidates.iter().chain(target.basis.iter()) {
            if acc.dim() >= target.dim() {
                break;
            }
            if target.contains(c) && acc.push_if_independent(c.clone()) {
                added.push(c.clone());
            }
        }
        added
    }

    /// Vectors `x` with `f(x) = 0` for every row `f` of `forms`.
    pub fn annihilated_by(ambient: usize, forms: &[Vec<F>]) -> Self {
        if forms.is_empty() {
            return Self::full(ambient);
        }
        let rows: Vec<Vec<F>> = forms.to_vec();
        let m = Matrix::from_rows(rows).expect("forms have equal length");
        Self::span(ambient, m.kernel())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| qi(a)).collect()
    }

    #[test]
    fn intersection_of_planes() {
        let a = SubspaceBasis::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = SubspaceBasis::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&v(&[0, 5, 0])));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn complement_prefers_candidates() {
        let a = SubspaceBasis::span(3, [v(&[1, 1, 0])]);
        let full = SubspaceBasis::full(3);
        let added = a.complement_in(&full, &[v(&[1, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(added[0], v(&[0, 0, 1]));
        assert_eq!(added.len(), 2);
    }
}
