use std::collections::BTreeMap;

use super::Form;
use crate::error::{Error, Result};
use crate::matrix::{vec, Matrix};
use num_traits::One;

use crate::scalar::{Complex, RealField};
use crate::subspace::SubspaceBasis;

/// Real basis `u_1, Ju_1, ..., u_n, Ju_n` with its dual basis and the
/// (1,0)-forms `gamma_j = u^j + i v^j`.
#[derive(Clone, Debug)]
pub struct Coframe<F> {
    pub u: Vec<Vec<F>>,
    pub v: Vec<Vec<F>>,
    pub u_dual: Vec<Vec<F>>,
    pub v_dual: Vec<Vec<F>>,
}

pub(crate) fn check_almost_complex<F: RealField>(j: &Matrix<F>) -> Result<()> {
    if !j.is_square() || j.rows() % 2 == 1 {
        return Err(Error::NotComplexStructure(format!(
            "J is {}x{}, need an even square matrix",
            j.rows(),
            j.cols()
        )));
    }
    let sq = j.mul(j);
    let n = j.rows();
    for r in 0..n {
        for c in 0..n {
            let want = if r == c { -F::one() } else { F::zero() };
            if sq[(r, c)] != want {
                return Err(Error::NotComplexStructure(format!(
                    "J^2 has entry {} at ({r}, {c})",
                    sq[(r, c)]
                )));
            }
        }
    }
    Ok(())
}

/// Pairs `(e_i, J e_i)` greedily: each step takes the first basis vector
/// outside the span of the pairs chosen so far.
pub fn adapted_coframe<F: RealField>(j: &Matrix<F>) -> Result<Coframe<F>> {
    check_almost_complex(j)?;
    let dim = j.rows();
    let mut span = SubspaceBasis::zero(dim);
    let mut u = Vec::new();
    for i in 0..dim {
        let e = vec::unit::<F>(dim, i);
        if span.contains(&e) {
            continue;
        }
        let je = j.mul_vec(&e);
        span.push_if_independent(e.clone());
        span.push_if_independent(je);
        u.push(e);
    }
    debug_assert_eq!(span.dim(), dim);
    Coframe::from_first_vectors(u, j)
}

impl<F: RealField> Coframe<F> {
    /// Coframe for the real basis `x_1, J x_1, ..., x_n, J x_n`.
    pub fn from_first_vectors(first: Vec<Vec<F>>, j: &Matrix<F>) -> Result<Self> {
        let dim = j.rows();
        let v: Vec<Vec<F>> = first.iter().map(|x| j.mul_vec(x)).collect();
        let cols: Vec<Vec<F>> = first
            .iter()
            .zip(&v)
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        if cols.len() != dim {
            return Err(Error::Dimension(format!(
                "{} vectors for a coframe of dimension {dim}",
                cols.len()
            )));
        }
        let inv = Matrix::from_cols(dim, &cols).inverse()?;
        let n = dim / 2;
        Ok(Coframe {
            u_dual: (0..n).map(|k| inv.row(2 * k)).collect(),
            v_dual: (0..n).map(|k| inv.row(2 * k + 1)).collect(),
            u: first,
            v,
        })
    }

    /// Complex dimension.
    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.u.len()
    }

    pub fn gamma_covector(&self, k: usize) -> Vec<Complex<F>> {
        self.u_dual[k]
            .iter()
            .zip(&self.v_dual[k])
            .map(|(a, b)| Complex::new(a.clone(), b.clone()))
            .collect()
    }

    pub fn gamma(&self, k: usize) -> Form<Complex<F>> {
        Form::from_covector(&self.gamma_covector(k))
    }

    pub fn gamma_bar(&self, k: usize) -> Form<Complex<F>> {
        Form::from_covector(&vec::map(&self.gamma_covector(k), |z| z.conj()))
    }

    /// `sigma = gamma_1 ^ ... ^ gamma_n`.
    pub fn sigma(&self) -> Form<Complex<F>> {
        let mut s = Form::constant(self.dim(), Complex::one());
        for k in 0..self.n() {
            s = s.w(&self.gamma(k));
        }
        s
    }

    /// Rewrites `a` in the basis `gamma_1..gamma_n, conj(gamma_1)..conj(gamma_n)`.
    pub fn to_gamma_basis(&self, a: &Form<Complex<F>>) -> Form<Complex<F>> {
        let (n, dim) = (self.n(), self.dim());
        let half = F::one().div(&F::from_i64(2)).unwrap();
        let images: Vec<Form<Complex<F>>> = (0..dim)
            .map(|i| {
                let mut f = Form::zero(dim, 1);
                for k in 0..n {
                    let (x, y) = (self.u[k][i].clone(), self.v[k][i].clone());
                    f.add_term(vec![k], Complex::new(x.clone(), -y.clone()).scale(&half));
                    f.add_term(vec![n + k], Complex::new(x, y).scale(&half));
                }
                f
            })
            .collect();
        a.pullback(&images)
    }

    /// Inverse of [`Coframe::to_gamma_basis`].
    pub fn from_gamma_basis(&self, a: &Form<Complex<F>>) -> Form<Complex<F>> {
        let n = self.n();
        let images: Vec<Form<Complex<F>>> = (0..n)
            .map(|k| self.gamma(k))
            .chain((0..n).map(|k| self.gamma_bar(k)))
            .collect();
        a.pullback(&images)
    }

    /// `(p, q)` components of `a`, each written back in the `e` basis.
    pub fn bigrade(&self, a: &Form<Complex<F>>) -> BTreeMap<(usize, usize), Form<Complex<F>>> {
        let n = self.n();
        let g = self.to_gamma_basis(a);
        let mut parts: BTreeMap<(usize, usize), Form<Complex<F>>> = BTreeMap::new();
        for (idx, c) in g.terms() {
            let p = idx.iter().filter(|&&i| i < n).count();
            parts
                .entry((p, idx.len() - p))
                .or_insert_with(|| Form::zero(self.dim(), a.degree()))
                .add_term(idx.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|(k, f)| (k, self.from_gamma_basis(&f)))
            .collect()
    }
}
