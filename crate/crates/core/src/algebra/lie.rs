use crate::error::{Error, Result};
use crate::matrix::{vec, Matrix};
use crate::scalar::{Field, Ring};

/// `(j, k, [(l, c)])`: `[e_j, e_k] = sum c e_l`.
pub type BracketSpec<F> = (usize, usize, Vec<(usize, F)>);

/// Finite dimensional Lie algebra given by structure constants.
///
/// `[e_j, e_k] = sum_l c_{jk}^l e_l`; only `j < k` is stored, so
/// antisymmetry holds by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F> {
    dim: usize,
    base: usize,
    labels: Option<Vec<String>>,
    consts: Vec<Vec<F>>,
}

/// Outcome of checking the Jacobi identity on basis triples.
#[derive(Clone, Debug, PartialEq)]
pub enum JacobiReport<F> {
    Holds,
    /// First failing triple `i < j < k` in lexicographic order, with the
    /// value of the cyclic sum.
    Fails { triple: (usize, usize, usize), value: Vec<F> },
}

fn pair_index(dim: usize, j: usize, k: usize) -> usize {
    debug_assert!(j < k && k < dim);
    j * dim - j * (j + 1) / 2 + (k - j - 1)
}

impl<F: Field> LieAlgebra<F> {
    /// Abelian algebra of dimension `dim`, labels `e1..e_dim`.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            base: 1,
            labels: None,
            consts: vec![vec::zero(dim); dim * dim.saturating_sub(1) / 2],
        }
    }

    /// Builds from `(j, k, [(l, c)])` triples with zero-based indices and
    /// checks the Jacobi identity.
    pub fn from_brackets(dim: usize, brackets: &[BracketSpec<F>]) -> Result<Self> {
        let alg = Self::from_brackets_unchecked(dim, brackets)?;
        alg.validate()?;
        Ok(alg)
    }

    pub fn from_brackets_unchecked(
        dim: usize,
        brackets: &[BracketSpec<F>],
    ) -> Result<Self> {
        let mut alg = Self::abelian(dim);
        for (j, k, coeffs) in brackets {
            let mut v = vec::zero::<F>(dim);
            for (l, c) in coeffs {
                if *l >= dim {
                    return Err(Error::Dimension(format!("index {l} out of range {dim}")));
                }
                v[*l] = v[*l].clone() + c.clone();
            }
            alg.set_bracket(*j, *k, v)?;
        }
        Ok(alg)
    }

    /// Sets `[e_j, e_k]`; `j > k` is stored with a sign flip.
    pub fn set_bracket(&mut self, j: usize, k: usize, v: Vec<F>) -> Result<()> {
        if j >= self.dim || k >= self.dim || v.len() != self.dim {
            return Err(Error::Dimension(format!("bracket ({j},{k}) in dimension {}", self.dim)));
        }
        match j.cmp(&k) {
            std::cmp::Ordering::Less => {
                let p = pair_index(self.dim, j, k);
                self.consts[p] = v;
            }
            std::cmp::Ordering::Greater => {
                let p = pair_index(self.dim, k, j);
                self.consts[p] = vec::scale(&v, &-F::one());
            }
            std::cmp::Ordering::Equal => {
                if !vec::is_zero(&v) {
                    return Err(Error::Input(format!("[e{j}, e{j}] must vanish")));
                }
            }
        }
        Ok(())
    }

    pub fn with_base(mut self, base: usize) -> Self {
        self.base = base;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim, "label count");
        self.labels = Some(labels);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Index offset used for default labels (`e0..` or `e1..`).
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + self.base),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim).map(|i| self.label(i)).collect()
    }

    pub fn custom_labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Zero-based index for a label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        (0..self.dim).find(|&i| self.label(i) == label)
    }

    /// `[e_j, e_k]`.
    pub fn bracket_basis(&self, j: usize, k: usize) -> Vec<F> {
        match j.cmp(&k) {
            std::cmp::Ordering::Less => self.consts[pair_index(self.dim, j, k)].clone(),
            std::cmp::Ordering::Greater => {
                vec::scale(&self.consts[pair_index(self.dim, k, j)], &-F::one())
            }
            std::cmp::Ordering::Equal => vec::zero(self.dim),
        }
    }

    /// Structure constant `c_{jk}^l`.
    pub fn c(&self, j: usize, k: usize, l: usize) -> F {
        self.bracket_basis(j, k)[l].clone()
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec::zero::<F>(n);
        for j in 0..n {
            for k in j + 1..n {
                let w = x[j].clone() * y[k].clone() - x[k].clone() * y[j].clone();
                if w.is_zero() {
                    continue;
                }
                let c = &self.consts[pair_index(n, j, k)];
                for l in 0..n {
                    if !c[l].is_zero() {
                        out[l] = out[l].clone() + w.clone() * c[l].clone();
                    }
                }
            }
        }
        out
    }

    /// `ad x` as a matrix: column `i` is `[x, e_i]`.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim)
            .map(|i| self.bracket(x, &vec::unit(self.dim, i)))
            .collect();
        Matrix::from_cols(self.dim, &cols)
    }

    pub fn ad_basis(&self, j: usize) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim).map(|i| self.bracket_basis(j, i)).collect();
        Matrix::from_cols(self.dim, &cols)
    }

    pub fn jacobi(&self) -> JacobiReport<F> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&self.bracket_basis(i, j), &vec::unit(n, k));
                    let b = self.bracket(&self.bracket_basis(j, k), &vec::unit(n, i));
                    let c = self.bracket(&self.bracket_basis(k, i), &vec::unit(n, j));
                    let s = vec::add(&vec::add(&a, &b), &c);
                    if !vec::is_zero(&s) {
                        return JacobiReport::Fails {
                            triple: (i, j, k),
                            value: s,
                        };
                    }
                }
            }
        }
        JacobiReport::Holds
    }

    pub fn validate(&self) -> Result<()> {
        match self.jacobi() {
            JacobiReport::Holds => Ok(()),
            JacobiReport::Fails { triple: (i, j, k), .. } => Err(Error::Jacobi(i, j, k)),
        }
    }

    /// `tr ad x = 0` for every `x`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|j| self.ad_basis(j).trace().is_zero())
    }

    /// Is `d` a derivation?
    pub fn is_derivation(&self, d: &Matrix<F>) -> bool {
        self.derivation_defect(d).is_none()
    }

    /// First pair `(j, k)` where `d` fails the Leibniz rule.
    pub fn derivation_defect(&self, d: &Matrix<F>) -> Option<(usize, usize)> {
        let n = self.dim;
        for j in 0..n {
            for k in j + 1..n {
                let lhs = d.mul_vec(&self.bracket_basis(j, k));
                let rhs = vec::add(
                    &self.bracket(&d.col(j), &vec::unit(n, k)),
                    &self.bracket(&vec::unit(n, j), &d.col(k)),
                );
                if lhs != rhs {
                    return Some((j, k));
                }
            }
        }
        None
    }

    /// Basis of the derivation algebra, as matrices.
    pub fn derivations(&self) -> Vec<Matrix<F>> {
        let n = self.dim;
        // unknown d[a][b] at index a*n + b; one equation per (j<k, l)
        let mut rows = Vec::new();
        for j in 0..n {
            for k in j + 1..n {
                let c = self.bracket_basis(j, k);
                for l in 0..n {
                    let mut row = vec::zero::<F>(n * n);
                    // D[e_j,e_k]_l = sum_m d[l][m] c_jk^m
                    for m in 0..n {
                        row[l * n + m] = row[l * n + m].clone() + c[m].clone();
                    }
                    // - [D e_j, e_k]_l = - sum_m d[m][j] c_mk^l
                    for m in 0..n {
                        let v = self.c(m, k, l);
                        row[m * n + j] = row[m * n + j].clone() - v;
                        let w = self.c(j, m, l);
                        row[m * n + k] = row[m * n + k].clone() - w;
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return (0..n * n)
                .map(|i| {
                    let mut m = Matrix::zeros(n, n);
                    m[(i / n, i % n)] = F::one();
                    m
                })
                .collect();
        }
        Matrix::from_rows(rows)
            .unwrap()
            .kernel()
            .into_iter()
            .map(|v| {
                let mut m = Matrix::zeros(n, n);
                for (i, x) in v.into_iter().enumerate() {
                    m[(i / n, i % n)] = x;
                }
                m
            })
            .collect()
    }

    /// The same algebra in the basis `f_j = P e_j`.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let n = self.dim;
        let pinv = p.inverse()?;
        let mut out = Self::abelian(n).with_base(self.base);
        for j in 0..n {
            for k in j + 1..n {
                let b = self.bracket(&p.col(j), &p.col(k));
                out.set_bracket(j, k, pinv.mul_vec(&b))?;
            }
        }
        Ok(out)
    }

    /// Subalgebra spanned by the given basis indices, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let m = indices.len();
        let mut out = Self::abelian(m);
        for (a, &j) in indices.iter().enumerate() {
            for (b, &k) in indices.iter().enumerate().skip(a + 1) {
                let v = self.bracket_basis(j, k);
                let mut w = vec::zero(m);
                for (l, x) in v.into_iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let pos = indices
                        .iter()
                        .position(|&i| i == l)
                        .ok_or_else(|| Error::Input(format!("span of {indices:?} is not a subalgebra")))?;
                    w[pos] = x;
                }
                out.set_bracket(a, b, w)?;
            }
        }
        let labels = indices.iter().map(|&i| self.label(i)).collect();
        Ok(out.with_labels(labels))
    }

    /// `R^k ⋉_B n` with basis `t_1..t_k, x_1..x_m`.
    ///
    /// The `B_j` must be pairwise commuting derivations of `n`.
    pub fn semidirect(k: usize, n: &Self, derivations: &[Matrix<F>]) -> Result<Self> {
        if derivations.len() != k {
            return Err(Error::Dimension(format!("{} derivations for k = {k}", derivations.len())));
        }
        let m = n.dim;
        for (j, d) in derivations.iter().enumerate() {
            if d.rows() != m || d.cols() != m {
                return Err(Error::Dimension(format!("B_{} is not {m}x{m}", j + 1)));
            }
            if let Some((a, b)) = n.derivation_defect(d) {
                return Err(Error::NotDerivation(format!("B_{} fails on (x{}, x{})", j + 1, a + 1, b + 1)));
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                if !derivations[a].commutator(&derivations[b]).is_zero() {
                    return Err(Error::NotCommuting(format!("B_{} and B_{}", a + 1, b + 1)));
                }
            }
        }
        let dim = k + m;
        let mut out = Self::abelian(dim);
        for (j, d) in derivations.iter().enumerate() {
            for i in 0..m {
                let mut v = vec::zero(dim);
                for (l, x) in d.col(i).into_iter().enumerate() {
                    v[k + l] = x;
                }
                out.set_bracket(j, k + i, v)?;
            }
        }
        for a in 0..m {
            for b in a + 1..m {
                let mut v = vec::zero(dim);
                for (l, x) in n.bracket_basis(a, b).into_iter().enumerate() {
                    v[k + l] = x;
                }
                out.set_bracket(k + a, k + b, v)?;
            }
        }
        Ok(out)
    }

    /// Maps structure constants into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> LieAlgebra<G> {
        LieAlgebra {
            dim: self.dim,
            base: self.base,
            labels: self.labels.clone(),
            consts: self.consts.iter().map(|v| vec::map(v, &f)).collect(),
        }
    }

    /// Nonzero brackets `(j, k, [e_j, e_k])` with `j < k`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<F>)> {
        let mut out = Vec::new();
        for j in 0..self.dim {
            for k in j + 1..self.dim {
                let v = self.bracket_basis(j, k);
                if !vec::is_zero(&v) {
                    out.push((j, k, v));
                }
            }
        }
        out
    }
}

/// Bracket of vectors with coefficients in a ring `R` containing `F`.
pub fn bracket_over<F: Field, R: Ring>(alg: &LieAlgebra<F>, x: &[R], y: &[R], embed: impl Fn(&F) -> R) -> Vec<R> {
    let n = alg.dim();
    let mut out = vec::zero::<R>(n);
    for (j, k, c) in alg.nonzero_brackets() {
        let w = x[j].clone() * y[k].clone() - x[k].clone() * y[j].clone();
        if w.is_zero() {
            continue;
        }
        for l in 0..n {
            if !c[l].is_zero() {
                out[l] = out[l].clone() + w.clone() * embed(&c[l]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};

    /// [e1,e2]=e3, [e0,e1]=e2, [e0,e2]=-e1
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
        .with_base(0)
    }

    #[test]
    fn kodaira_is_unimodular_lie_algebra() {
        let g = kodaira();
        assert_eq!(g.jacobi(), JacobiReport::Holds);
        assert!(g.is_unimodular());
        assert_eq!(g.label(0), "e0");
    }

    #[test]
    fn jacobi_failure_reports_first_triple() {
        let bad = LieAlgebra::from_brackets_unchecked(
            4,
            &[
                (1, 2, vec![(3, qi(1))]),
                (0, 1, vec![(2, qi(1))]),
                (0, 2, vec![(1, qi(-1))]),
                (0, 3, vec![(3, qi(1))]),
            ],
        )
        .unwrap();
        match bad.jacobi() {
            JacobiReport::Fails { triple, .. } => assert_eq!(triple, (0, 1, 2)),
            JacobiReport::Holds => panic!("expected failure"),
        }
        assert_eq!(bad.validate(), Err(Error::Jacobi(0, 1, 2)));
    }

    #[test]
    fn semidirect_rotation_over_heisenberg_is_kodaira() {
        let h3 = LieAlgebra::from_brackets(3, &[(0, 1, vec![(2, qi(1))])]).unwrap();
        let mut b = Matrix::zeros(3, 3);
        b[(1, 0)] = qi(1);
        b[(0, 1)] = qi(-1);
        let g = LieAlgebra::semidirect(1, &h3, &[b]).unwrap();
        assert_eq!(g.with_base(0), kodaira());
    }

    #[test]
    fn semidirect_rejects_non_derivations() {
        let h3 = LieAlgebra::from_brackets(3, &[(0, 1, vec![(2, qi(1))])]).unwrap();
        let mut b = Matrix::zeros(3, 3);
        b[(0, 0)] = qi(1);
        assert!(matches!(
            LieAlgebra::semidirect(1, &h3, &[b]),
            Err(Error::NotDerivation(_))
        ));
    }

    #[test]
    fn derivation_space_of_heisenberg() {
        let h3 = LieAlgebra::<Rational>::from_brackets(3, &[(0, 1, vec![(2, qi(1))])]).unwrap();
        let ders = h3.derivations();
        // gl(2) on the plane plus maps into the center
        assert_eq!(ders.len(), 6);
        for d in ders {
            assert!(h3.is_derivation(&d));
        }
    }

    #[test]
    fn change_basis_preserves_jacobi() {
        let g = kodaira();
        let p = Matrix::from_rows(vec![
            vec![qi(1), qi(1), qi(0), qi(0)],
            vec![qi(0), qi(1), qi(2), qi(0)],
            vec![qi(0), qi(0), qi(1), qi(0)],
            vec![qi(1), qi(0), qi(0), qi(1)],
        ])
        .unwrap();
        let h = g.change_basis(&p).unwrap();
        assert_eq!(h.jacobi(), JacobiReport::Holds);
        assert!(h.is_unimodular());
    }
}
