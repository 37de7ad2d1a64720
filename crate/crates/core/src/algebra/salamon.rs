//! Tuples `(de^1, ..., de^n)` of 2-forms, e.g. `(0,0,-e^{12})`.
//!
//! The bracket is read off with `d a(x, y) = -a([x, y])`, so `de^3 = -e^{12}`
//! means `[e_1, e_2] = e_3`.

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::forms::{format_form, parse_form, Form};
use crate::matrix::vec;
use crate::scalar::{Field, FromScalar, Scalar, ToScalar};

/// Splits the inside of the outer parentheses at top-level commas, returning
/// each component with its character offset.
fn components(src: &str) -> Result<Vec<(usize, String)>> {
    let chars: Vec<char> = src.chars().collect();
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into() };
    let open = chars
        .iter()
        .position(|c| !c.is_whitespace())
        .ok_or_else(|| err(chars.len(), "empty input"))?;
    if chars[open] != '(' {
        return Err(err(open, "expected `(`"));
    }
    let mut out: Vec<(usize, String)> = Vec::new();
    let mut depth = 0i32;
    let mut start = open + 1;
    let mut close = None;
    for (i, &c) in chars.iter().enumerate().skip(open + 1) {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' if depth > 0 => depth -= 1,
            ')' => {
                close = Some(i);
                break;
            }
            ',' if depth == 0 => {
                out.push((start, chars[start..i].iter().collect()));
                start = i + 1;
            }
            _ => {}
        }
    }
    let close = close.ok_or_else(|| err(chars.len(), "missing `)` at end of input"))?;
    out.push((start, chars[start..close].iter().collect()));
    if let Some(p) = chars[close + 1..].iter().position(|c| !c.is_whitespace()) {
        return Err(err(close + 1 + p, "trailing input after `)`"));
    }
    for (off, s) in &out {
        if s.trim().is_empty() {
            return Err(err(*off, "empty component"));
        }
    }
    Ok(out)
}

/// Parses a tuple of differentials into a Lie algebra with basis `e_1..e_n`.
pub fn parse_salamon<F: Field + FromScalar>(
    src: &str,
    params: &dyn Fn(&str) -> Option<Scalar>,
) -> Result<LieAlgebra<F>> {
    let comps = components(src)?;
    let n = comps.len();
    let mut alg = LieAlgebra::<F>::abelian(n).with_base(1);
    let mut brackets = vec![vec![vec::zero::<F>(n); n]; n];
    for (l, (off, text)) in comps.iter().enumerate() {
        let f = parse_form(text, n, 1, params).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + off, msg },
            other => other,
        })?;
        if f.is_zero() {
            continue;
        }
        if f.degree() != 2 {
            return Err(Error::Parse {
                pos: *off,
                msg: format!("de^{} must be a 2-form", l + 1),
            });
        }
        for (idx, c) in f.terms() {
            let c = F::from_scalar(c)?;
            let slot = &mut brackets[idx[0]][idx[1]][l];
            *slot = slot.clone() - c;
        }
    }
    for (j, row) in brackets.into_iter().enumerate() {
        for (k, v) in row.into_iter().enumerate() {
            if !vec::is_zero(&v) {
                alg.set_bracket(j, k, v)?;
            }
        }
    }
    alg.validate()?;
    Ok(alg)
}

/// The tuple of `de^l`, indices starting at 1.
pub fn format_salamon<F: Field + ToScalar>(alg: &LieAlgebra<F>) -> String {
    let n = alg.dim();
    let mut parts = Vec::with_capacity(n);
    for l in 0..n {
        let mut f = Form::<Scalar>::zero(n, 2);
        for j in 0..n {
            for k in j + 1..n {
                let c = alg.c(j, k, l);
                if !c.is_zero() {
                    f.add_term(vec![j, k], -c.to_scalar());
                }
            }
        }
        parts.push(format_form(&f, 1).replace(' ', ""));
    }
    format!("({})", parts.join(","))
}
