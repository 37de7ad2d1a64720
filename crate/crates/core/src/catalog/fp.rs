//! Almost nilpotent Hermitian data `g = R e_{2n} x| n` with `dim [n,n] = 1`.
//!
//! Both builders index `g` as `e_1, k_1, e_{2n}` (0-based: `0`, `1..2n-1`,
//! `2n-1`), where `e_1` spans `[n,n]` and `[Y, Z] = -eta(Y, Z) e_1` on `k_1`.

use num_traits::Zero;

use crate::algebra::LieAlgebra;
use crate::cstruct::ComplexStructure;
use crate::error::{Error, Result};
use crate::matrix::{vec, Matrix};
use crate::scalar::{qi, Rational};

/// Case `J[n,n]` orthogonal to `n`: `J e_1 = e_{2n}`, `ad e_{2n}|n = a + A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fp1Data {
    pub a: Rational,
    /// On `k_1`.
    pub a_mat: Matrix<Rational>,
    /// Antisymmetric Gram matrix of `eta` on `k_1`.
    pub eta: Matrix<Rational>,
    pub j1: ComplexStructure<Rational>,
}

/// Case `J[n,n]` inside `n`, in the splitting `n = R e_1 + R e_2 + k_2 + R e_{2n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fp2Data {
    pub a: Rational,
    pub a1: Rational,
    pub a2: Rational,
    /// On `k_2`.
    pub a_mat: Matrix<Rational>,
    pub v1: Rational,
    pub v2: Rational,
    pub alpha: Vec<Rational>,
    pub gamma: Vec<Rational>,
    pub v: Vec<Rational>,
    /// Antisymmetric Gram matrix of `xi` on `k_2`.
    pub xi: Matrix<Rational>,
    pub j2: ComplexStructure<Rational>,
}

fn violation(equation: &str, witness: String) -> Error {
    Error::Validation {
        equation: equation.into(),
        witness,
    }
}

/// First entry where `lhs` and `rhs` differ.
fn first_diff(lhs: &Matrix<Rational>, rhs: &Matrix<Rational>, shift: usize) -> Option<String> {
    for r in 0..lhs.rows() {
        for c in 0..lhs.cols() {
            if lhs[(r, c)] != rhs[(r, c)] {
                return Some(format!(
                    "entry (e{}, e{}): {} != {}",
                    r + shift,
                    c + shift,
                    lhs[(r, c)],
                    rhs[(r, c)]
                ));
            }
        }
    }
    None
}

fn check_antisymmetric(m: &Matrix<Rational>, name: &str) -> Result<()> {
    if !m.add(&m.transpose()).is_zero() {
        return Err(Error::Input(format!("{name} is not antisymmetric")));
    }
    Ok(())
}

/// `(A^* w)(X, Y) = w(AX, Y) + w(X, AY)` on Gram matrices.
fn pull_two_form(a: &Matrix<Rational>, w: &Matrix<Rational>) -> Matrix<Rational> {
    a.transpose().mul(w).add(&w.mul(a))
}

/// Appends `t` with `[t, x] = B x` to `n`.
fn extend(n: &LieAlgebra<Rational>, b: &Matrix<Rational>) -> Result<LieAlgebra<Rational>> {
    let m = n.dim();
    let mut out = LieAlgebra::abelian(m + 1);
    for (j, k, v) in n.nonzero_brackets() {
        let mut w = v.clone();
        w.push(qi(0));
        out.set_bracket(j, k, w)?;
    }
    for i in 0..m {
        let mut w = b.col(i);
        if vec::is_zero(&w) {
            continue;
        }
        w.push(qi(0));
        out.set_bracket(m, i, w)?;
    }
    out.validate().map_err(|e| Error::Internal(format!("validated data failed Jacobi: {e}")))?;
    Ok(out)
}

/// Heisenberg-type `n = R e_1 + k` with `[Y, Z] = -eta(Y, Z) e_1`.
fn central_extension(eta: &Matrix<Rational>) -> Result<LieAlgebra<Rational>> {
    let k = eta.rows();
    let mut n = LieAlgebra::abelian(k + 1);
    for y in 0..k {
        for z in y + 1..k {
            if !eta[(y, z)].is_zero() {
                let mut v = vec::zero(k + 1);
                v[0] = -eta[(y, z)].clone();
                n.set_bracket(y + 1, z + 1, v)?;
            }
        }
    }
    Ok(n)
}

impl Fp1Data {
    pub fn k1_dim(&self) -> usize {
        self.a_mat.rows()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k1_dim();
        if !k.is_multiple_of(2) || !self.a_mat.is_square() || self.eta.rows() != k || self.eta.cols() != k || self.j1.dim() != k {
            return Err(Error::Dimension(format!("k1 data must be square of one even size, got {k}")));
        }
        check_antisymmetric(&self.eta, "eta")?;
        let j = self.j1.matrix();
        // k_1 starts at e_2
        if let Some(w) = first_diff(&self.a_mat.mul(j), &j.mul(&self.a_mat), 2) {
            return Err(violation("A J1 = J1 A", w));
        }
        if let Some(w) = first_diff(&j.transpose().mul(&self.eta).mul(j), &self.eta, 2) {
            return Err(violation("eta(J., J.) = eta", w));
        }
        if let Some(w) = first_diff(&pull_two_form(&self.a_mat, &self.eta), &self.eta.scale(&self.a), 2) {
            return Err(violation("A^*eta = a eta", w));
        }
        Ok(())
    }

    /// `a + Tr A / 2 = 0` and `Tr(J1 A) = 0`.
    pub fn predicts_trivial(&self) -> bool {
        let t = self.a_mat.trace();
        (self.a.clone() + t / qi(2)).is_zero() && self.j1.matrix().mul(&self.a_mat).trace().is_zero()
    }

    pub fn unimodular(&self) -> bool {
        self.a.is_zero() && self.a_mat.trace().is_zero()
    }
}

/// Builds `(g, J)` from validated case-one data.
pub fn fp1_construct(d: &Fp1Data) -> Result<(LieAlgebra<Rational>, ComplexStructure<Rational>)> {
    d.validate()?;
    let k = d.k1_dim();
    let n = central_extension(&d.eta)?;
    let mut b = Matrix::zeros(k + 1, k + 1);
    b[(0, 0)] = d.a.clone();
    for r in 0..k {
        for c in 0..k {
            b[(r + 1, c + 1)] = d.a_mat[(r, c)].clone();
        }
    }
    let g = extend(&n, &b)?;
    let dim = k + 2;
    let mut jm = Matrix::zeros(dim, dim);
    jm[(dim - 1, 0)] = qi(1);
    jm[(0, dim - 1)] = qi(-1);
    for r in 0..k {
        for c in 0..k {
            jm[(r + 1, c + 1)] = d.j1.matrix()[(r, c)].clone();
        }
    }
    Ok((g, ComplexStructure::new(jm)?))
}

impl Fp2Data {
    pub fn k2_dim(&self) -> usize {
        self.a_mat.rows()
    }

    /// `gamma + alpha o J` on `k_2`.
    fn c_form(&self) -> Vec<Rational> {
        let aj = self.j2.matrix().transpose().mul_vec(&self.alpha);
        vec::add(&self.gamma, &aj)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k2_dim();
        if !k.is_multiple_of(2)
            || !self.a_mat.is_square()
            || self.xi.rows() != k
            || self.xi.cols() != k
            || self.j2.dim() != k
            || self.alpha.len() != k
            || self.gamma.len() != k
            || self.v.len() != k
        {
            return Err(Error::Dimension(format!("k2 data must share one even size, got {k}")));
        }
        check_antisymmetric(&self.xi, "xi")?;
        let j = self.j2.matrix();
        // k_2 starts at e_3
        if let Some(w) = first_diff(&self.a_mat.mul(j), &j.mul(&self.a_mat), 3) {
            return Err(violation("[A, J] = 0", w));
        }
        let d = self.a2.clone() - self.a1.clone();
        let e1 = d.clone() * (self.a.clone() + d.clone());
        if !e1.is_zero() {
            return Err(violation("0 = (a2 - a1)(a + a2 - a1)", format!("right side is {e1}")));
        }
        let lhs = pull_two_form(&self.a_mat, &self.xi).sub(&self.xi.scale(&self.a1));
        if let Some(w) = first_diff(&lhs, &Matrix::zeros(k, k), 3) {
            return Err(violation("0 = A^*xi - a1 xi", w));
        }
        let c = self.c_form();
        let mut e3 = vec::scale(&c, &(self.a.clone() - self.a1.clone()));
        e3 = vec::add(&e3, &self.a_mat.transpose().mul_vec(&c));
        e3 = vec::add(&e3, &vec::scale(&self.gamma, &d));
        // i_v xi = xi(v, .)
        e3 = vec::sub(&e3, &self.xi.transpose().mul_vec(&self.v));
        if let Some(i) = e3.iter().position(|x| !x.is_zero()) {
            return Err(violation(
                "0 = (a - a1)(gamma + alpha J) + A^*(gamma + alpha J) + (a2 - a1) gamma - i_v xi",
                format!("component e{} is {}", i + 3, e3[i]),
            ));
        }
        Ok(())
    }

    /// `Tr A = -2(a + a1)` and `Tr(J A) = 0`.
    pub fn predicts_trivial(&self) -> bool {
        let t = self.a_mat.trace();
        (t + qi(2) * (self.a.clone() + self.a1.clone())).is_zero()
            && self.j2.matrix().mul(&self.a_mat).trace().is_zero()
    }

    /// Gram matrix of `eta` on `k_1 = R e_2 + k_2 + R e_{2n-1}`.
    fn eta(&self) -> Matrix<Rational> {
        let k = self.k2_dim();
        let m = k + 2;
        let last = m - 1;
        let mut eta = Matrix::zeros(m, m);
        for r in 0..k {
            for c in 0..k {
                eta[(r + 1, c + 1)] = self.xi[(r, c)].clone();
            }
        }
        for (y, cy) in self.c_form().into_iter().enumerate() {
            eta[(y + 1, last)] = cy.clone();
            eta[(last, y + 1)] = -cy;
        }
        let d = self.a2.clone() - self.a1.clone();
        eta[(0, last)] = d.clone();
        eta[(last, 0)] = -d;
        eta
    }
}

/// Builds `(g, J)` from validated case-two data; `J e_{2j-1} = e_{2j}` outside `k_2`.
pub fn fp2_construct(d: &Fp2Data) -> Result<(LieAlgebra<Rational>, ComplexStructure<Rational>)> {
    d.validate()?;
    let k = d.k2_dim();
    let n = central_extension(&d.eta())?;
    let m = k + 3;
    let last = m - 1;
    let mut b = Matrix::zeros(m, m);
    b[(0, 0)] = d.a1.clone();
    b[(1, 1)] = d.a2.clone();
    for y in 0..k {
        b[(0, y + 2)] = d.alpha[y].clone();
        b[(1, y + 2)] = d.gamma[y].clone();
        b[(y + 2, last)] = d.v[y].clone();
        for c in 0..k {
            b[(y + 2, c + 2)] = d.a_mat[(y, c)].clone();
        }
    }
    b[(0, last)] = d.v1.clone();
    b[(1, last)] = d.v2.clone();
    b[(last, last)] = d.a.clone();
    let g = extend(&n, &b)?;
    let dim = m + 1;
    let mut jm = Matrix::zeros(dim, dim);
    for (x, y) in [(0, 1), (dim - 2, dim - 1)] {
        jm[(y, x)] = qi(1);
        jm[(x, y)] = qi(-1);
    }
    for r in 0..k {
        for c in 0..k {
            jm[(r + 2, c + 2)] = d.j2.matrix()[(r, c)].clone();
        }
    }
    Ok((g, ComplexStructure::new(jm)?))
}

fn standard_pairs(k: usize) -> ComplexStructure<Rational> {
    let pairs: Vec<(usize, usize)> = (0..k / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    ComplexStructure::from_pairs(k, &pairs).expect("even size")
}

fn rotations(angles: &[Rational]) -> Matrix<Rational> {
    let k = 2 * angles.len();
    let mut m = Matrix::zeros(k, k);
    for (i, a) in angles.iter().enumerate() {
        m[(2 * i + 1, 2 * i)] = a.clone();
        m[(2 * i, 2 * i + 1)] = -a.clone();
    }
    m
}

fn split_identity(half: usize) -> Matrix<Rational> {
    let mut m = Matrix::identity(2 * half);
    for i in half..2 * half {
        m[(i, i)] = qi(-1);
    }
    m
}

/// `eta` pairing `i` with `i + half`.
fn shifted_pairing(half: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(2 * half, 2 * half);
    for i in 0..half {
        m[(i, i + half)] = qi(1);
        m[(i + half, i)] = qi(-1);
    }
    m
}

fn block_pairing(k: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(k, k);
    for i in 0..k / 2 {
        m[(2 * i, 2 * i + 1)] = qi(1);
        m[(2 * i + 1, 2 * i)] = qi(-1);
    }
    m
}

/// `B = 0 + I_{2n} + (-I_{2n})` on `h_{4n+1}`.
pub fn an1_i_data(n: usize) -> Fp1Data {
    Fp1Data {
        a: qi(0),
        a_mat: split_identity(2 * n),
        eta: shifted_pairing(2 * n),
        j1: standard_pairs(4 * n),
    }
}

/// `B = 0 + rot(a_1) + ... + rot(a_n)` on `h_{2n+1}`.
pub fn an1_ii_data(angles: &[Rational]) -> Fp1Data {
    let k = 2 * angles.len();
    Fp1Data {
        a: qi(0),
        a_mat: rotations(angles),
        eta: block_pairing(k),
        j1: standard_pairs(k),
    }
}

fn an2_base(a_mat: Matrix<Rational>, xi: Matrix<Rational>, v1: Rational, v2: Rational) -> Fp2Data {
    let k = a_mat.rows();
    Fp2Data {
        a: qi(0),
        a1: qi(0),
        a2: qi(0),
        a_mat,
        v1,
        v2,
        alpha: vec::zero(k),
        gamma: vec::zero(k),
        v: vec::zero(k),
        xi,
        j2: standard_pairs(k),
    }
}

/// Shears `e_{4n-1} -> v1 e_1 + v2 e_2` and `I_{2n-2} + (-I_{2n-2})` on `k_2`.
pub fn an2_i_data(n: usize, v1: Rational, v2: Rational) -> Fp2Data {
    let half = 2 * n - 2;
    an2_base(split_identity(half), shifted_pairing(half), v1, v2)
}

/// Shears and rotations `rot(a_1) + ... ` on `k_2`.
pub fn an2_ii_data(angles: &[Rational], v1: Rational, v2: Rational) -> Fp2Data {
    let k = 2 * angles.len();
    an2_base(rotations(angles), block_pairing(k), v1, v2)
}
