//! Seeded random solvable Lie algebras with integrable complex structures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::fp::{fp1_construct, Fp1Data};
use super::{build, list, Params};
use crate::algebra::LieAlgebra;
use crate::cstruct::{is_integrable, ComplexStructure};
use crate::matrix::{vec, Matrix};
use crate::scalar::{q, qi, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    /// `R e_t x| R^{2n-1}` with `J e_t` in the ideal.
    AlmostAbelian,
    /// `R^2 x| R^{2k}` by commuting complex linear maps.
    TwoStep,
    /// Central extensions from valid case-one data.
    AlmostNilpotent,
    /// `R x| n` by a random derivation of a small nilpotent `n`.
    Semidirect,
    /// A catalog structure in a random unimodular integer basis.
    CatalogBasis,
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub kind: SampleKind,
    pub label: String,
    pub algebra: LieAlgebra<Rational>,
    pub j: ComplexStructure<Rational>,
}

const KINDS: [SampleKind; 5] = [
    SampleKind::AlmostAbelian,
    SampleKind::TwoStep,
    SampleKind::AlmostNilpotent,
    SampleKind::Semidirect,
    SampleKind::CatalogBasis,
];

fn small(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(-2i64..=2);
    if rng.gen_bool(0.2) {
        q(n, 2)
    } else {
        qi(n)
    }
}

fn standard_pairs(offset: usize, count: usize) -> Vec<(usize, usize)> {
    (0..count).map(|i| (offset + 2 * i, offset + 2 * i + 1)).collect()
}

/// Block diagonal `x_b I + y_b J` on `R^{2k}`.
fn complex_linear(rng: &mut ChaCha8Rng, k: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(2 * k, 2 * k);
    for b in 0..k {
        let (x, y) = (small(rng), small(rng));
        m[(2 * b, 2 * b)] = x.clone();
        m[(2 * b + 1, 2 * b + 1)] = x;
        m[(2 * b + 1, 2 * b)] = y.clone();
        m[(2 * b, 2 * b + 1)] = -y;
    }
    m
}

fn almost_abelian(rng: &mut ChaCha8Rng) -> Sample {
    let k = rng.gen_range(1..=3);
    let dim = 2 * k + 2;
    let t = dim - 1;
    // ideal: e_0 = -J e_t, then the complex block on 1..=2k
    let a = complex_linear(rng, k);
    let mut alg = LieAlgebra::abelian(dim);
    // ad e_t: e_0 -> a e_0 + v with v in the complex block, which is invariant
    let mut col0 = vec::zero(dim);
    col0[0] = small(rng);
    for x in col0.iter_mut().skip(1).take(2 * k) {
        *x = small(rng);
    }
    alg.set_bracket(t, 0, col0).expect("in range");
    for i in 0..2 * k {
        let mut v = vec::zero(dim);
        for r in 0..2 * k {
            v[r + 1] = a[(r, i)].clone();
        }
        alg.set_bracket(t, i + 1, v).expect("in range");
    }
    let mut pairs = vec![(t, 0)];
    pairs.extend(standard_pairs(1, k));
    let j = ComplexStructure::from_pairs(dim, &pairs).expect("valid pairs");
    Sample {
        kind: SampleKind::AlmostAbelian,
        label: format!("almost abelian, dim {dim}"),
        algebra: alg,
        j,
    }
}

fn two_step(rng: &mut ChaCha8Rng) -> Sample {
    let k = rng.gen_range(1..=3);
    let a = complex_linear(rng, k);
    let b = complex_linear(rng, k);
    let alg = LieAlgebra::semidirect(2, &LieAlgebra::abelian(2 * k), &[a, b]).expect("commuting derivations");
    let dim = 2 * k + 2;
    let j = ComplexStructure::from_pairs(dim, &standard_pairs(0, k + 1)).expect("valid pairs");
    Sample {
        kind: SampleKind::TwoStep,
        label: format!("R^2 x| R^{}", 2 * k),
        algebra: alg,
        j,
    }
}

fn almost_nilpotent(rng: &mut ChaCha8Rng) -> Sample {
    let x = small(rng);
    let z = if rng.gen_bool(0.5) { x.clone() } else { small(rng) };
    let a_mat = {
        let mut m = complex_linear(rng, 2);
        for (i, v) in [(0, &x), (1, &x), (2, &z), (3, &z)] {
            m[(i, i)] = v.clone();
        }
        m
    };
    let mut eta = Matrix::zeros(4, 4);
    eta[(0, 1)] = qi(1);
    eta[(1, 0)] = qi(-1);
    if x == z && rng.gen_bool(0.5) {
        eta[(2, 3)] = small(rng);
        eta[(3, 2)] = -eta[(2, 3)].clone();
    }
    let d = Fp1Data {
        a: qi(2) * x,
        a_mat,
        eta,
        j1: ComplexStructure::from_pairs(4, &standard_pairs(0, 2)).expect("valid pairs"),
    };
    let (algebra, j) = fp1_construct(&d).expect("data satisfies the validation equations");
    Sample {
        kind: SampleKind::AlmostNilpotent,
        label: "R x| (h3 + R^2)".into(),
        algebra,
        j,
    }
}

fn nilpotent_pool() -> Vec<(&'static str, LieAlgebra<Rational>)> {
    let b = |dim, br: &[(usize, usize, usize)]| {
        let list: Vec<_> = br.iter().map(|&(j, k, l)| (j, k, vec![(l, qi(1))])).collect();
        LieAlgebra::from_brackets(dim, &list).expect("nilpotent seed")
    };
    vec![
        ("R^3", LieAlgebra::abelian(3)),
        ("h3", b(3, &[(0, 1, 2)])),
        ("h3 + R^2", b(5, &[(0, 1, 2)])),
        ("h5", b(5, &[(0, 1, 4), (2, 3, 4)])),
        ("n5", b(5, &[(0, 1, 2), (0, 2, 3), (1, 2, 4)])),
        ("n4 + R", b(5, &[(0, 1, 2), (0, 2, 3)])),
    ]
}

fn random_pairs(rng: &mut ChaCha8Rng, dim: usize) -> Vec<(usize, usize)> {
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.shuffle(rng);
    idx.chunks(2).map(|c| (c[0], c[1])).collect()
}

fn semidirect(rng: &mut ChaCha8Rng) -> Option<Sample> {
    let pool = nilpotent_pool();
    for _ in 0..200 {
        let (name, n) = pool.choose(rng).expect("nonempty");
        let ders = n.derivations();
        let dim = n.dim();
        let mut d = Matrix::zeros(dim, dim);
        for der in &ders {
            d = d.add(&der.scale(&qi(rng.gen_range(-2i64..=2))));
        }
        let alg = LieAlgebra::semidirect(1, n, &[d]).expect("a derivation");
        let j = ComplexStructure::from_pairs(dim + 1, &random_pairs(rng, dim + 1)).expect("valid pairs");
        if is_integrable(&alg, &j).unwrap_or(false) {
            return Some(Sample {
                kind: SampleKind::Semidirect,
                label: format!("R x| {name}"),
                algebra: alg,
                j,
            });
        }
    }
    None
}

/// Product of elementary integer matrices, so `det = 1`.
fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    let mut p = Matrix::identity(n);
    for _ in 0..n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(n);
        e[(i, j)] = qi(if rng.gen_bool(0.5) { 1 } else { -1 });
        p = p.mul(&e);
    }
    p
}

fn catalog_basis(rng: &mut ChaCha8Rng) -> Sample {
    let names = list();
    let name = names.choose(rng).expect("nonempty").name;
    let inst = build(name, &Params::new()).expect("defaults build");
    let s = inst.structures.choose(rng).expect("at least one structure");
    let p = unimodular(rng, inst.algebra.dim());
    Sample {
        kind: SampleKind::CatalogBasis,
        label: format!("{name} / {}", s.label),
        algebra: inst.algebra.change_basis(&p).expect("invertible"),
        j: s.j.change_basis(&p).expect("invertible"),
    }
}

/// `count` samples of dimension at most 8, cycling through the kinds.
pub fn sample_pairs(count: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| match KINDS[i % KINDS.len()] {
            SampleKind::AlmostAbelian => almost_abelian(&mut rng),
            SampleKind::TwoStep => two_step(&mut rng),
            SampleKind::AlmostNilpotent => almost_nilpotent(&mut rng),
            SampleKind::Semidirect => semidirect(&mut rng).unwrap_or_else(|| almost_abelian(&mut rng)),
            SampleKind::CatalogBasis => catalog_basis(&mut rng),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_valid() {
        let samples = sample_pairs(60, 7);
        assert_eq!(samples.len(), 60);
        for s in &samples {
            assert!(s.algebra.dim() <= 8, "{}", s.label);
            s.algebra.validate().unwrap();
            assert!(s.algebra.is_solvable(), "{}", s.label);
            assert!(is_integrable(&s.algebra, &s.j).unwrap(), "{}", s.label);
        }
        for k in KINDS {
            assert!(samples.iter().any(|s| s.kind == k), "{k:?} missing");
        }
    }

    #[test]
    fn seeded() {
        let a: Vec<_> = sample_pairs(10, 3).into_iter().map(|s| s.algebra.nonzero_brackets()).collect();
        let b: Vec<_> = sample_pairs(10, 3).into_iter().map(|s| s.algebra.nonzero_brackets()).collect();
        assert_eq!(a, b);
    }
}
