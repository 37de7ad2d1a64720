use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::matrix::vec;
use crate::scalar::{Field, FromScalar, Scalar, ToScalar};

/// One nonzero bracket `[e_j, e_k] = sum coeffs[l] e_l`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketJson {
    pub j: usize,
    pub k: usize,
    pub coeffs: BTreeMap<String, String>,
}

/// Serialized algebra. Indices are offset by `base` (default 1).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub base: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<BracketJson>,
}

fn one() -> usize {
    1
}

fn is_one(b: &usize) -> bool {
    *b == 1
}

impl<F: Field + ToScalar> LieAlgebra<F> {
    pub fn to_json(&self) -> AlgebraJson {
        let base = self.base();
        let brackets = self
            .nonzero_brackets()
            .into_iter()
            .map(|(j, k, v)| BracketJson {
                j: j + base,
                k: k + base,
                coeffs: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(l, c)| ((l + base).to_string(), c.to_scalar().to_string()))
                    .collect(),
            })
            .collect();
        AlgebraJson {
            dim: self.dim(),
            base,
            labels: self.custom_labels().map(|l| l.to_vec()),
            brackets,
        }
    }
}

impl<F: Field + FromScalar> LieAlgebra<F> {
    /// Builds and validates an algebra; coefficient strings may use `params`.
    pub fn from_json(
        js: &AlgebraJson,
        params: &dyn Fn(&str) -> Option<Scalar>,
    ) -> Result<Self> {
        let n = js.dim;
        let base = js.base;
        let idx = |i: usize| -> Result<usize> {
            i.checked_sub(base)
                .filter(|&x| x < n)
                .ok_or_else(|| Error::Input(format!("index {i} out of range for base {base}, dim {n}")))
        };
        let mut alg = LieAlgebra::abelian(n).with_base(base);
        for b in &js.brackets {
            let (j, k) = (idx(b.j)?, idx(b.k)?);
            let mut v = vec::zero::<F>(n);
            for (key, val) in &b.coeffs {
                let l: usize = key
                    .parse()
                    .map_err(|_| Error::Input(format!("bad coefficient index `{key}`")))?;
                let l = idx(l)?;
                let s = Scalar::parse_with(val, params)?;
                v[l] = v[l].clone() + F::from_scalar(&s)?;
            }
            let prev = alg.bracket_basis(j, k);
            if !vec::is_zero(&prev) {
                return Err(Error::Input(format!("bracket ({}, {}) given twice", b.j, b.k)));
            }
            alg.set_bracket(j, k, v)?;
        }
        if let Some(l) = &js.labels {
            if l.len() != n {
                return Err(Error::Input("label count differs from dim".into()));
            }
            alg = alg.with_labels(l.clone());
        }
        alg.validate()?;
        Ok(alg)
    }

    pub fn from_json_str(src: &str) -> Result<Self> {
        let js: AlgebraJson = serde_json::from_str(src)?;
        Self::from_json(&js, &|_| None)
    }
}
