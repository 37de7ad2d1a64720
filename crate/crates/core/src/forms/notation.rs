use std::fmt::Display;

use super::Form;
use crate::error::{Error, Result};
use crate::scalar::{parse_expr, Ring, Scalar};

fn index_block(idx: &[usize], base: usize) -> String {
    let shifted: Vec<usize> = idx.iter().map(|i| i + base).collect();
    if shifted.iter().any(|&i| i >= 10) {
        shifted.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    } else {
        shifted.iter().map(|i| i.to_string()).collect()
    }
}

/// Whether a printed coefficient needs parentheses before `*`.
fn compound(s: &str) -> bool {
    s.char_indices().skip(1).any(|(_, c)| c == '+' || c == '-')
}

/// Prints `a` as e.g. `-i*e{023} - e{013}`; indices are shifted by `base`.
pub fn format_form<K: Ring + Display>(a: &Form<K>, base: usize) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (idx, c)) in a.terms().enumerate() {
        let body = if idx.is_empty() {
            String::new()
        } else {
            format!("e{{{}}}", index_block(idx, base))
        };
        let s = c.to_string();
        let term = if body.is_empty() {
            s
        } else if s == "1" {
            body
        } else if s == "-1" {
            format!("-{body}")
        } else if compound(&s) {
            format!("({s})*{body}")
        } else {
            format!("{s}*{body}")
        };
        if n == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

/// Prints a 1-form compactly, e.g. `e0+ie3`.
pub fn format_one_form<K: Ring + Display>(a: &Form<K>, base: usize) -> String {
    let mut out = String::new();
    for (idx, c) in a.terms() {
        let s = c.to_string();
        let e = format!("e{}", idx[0] + base);
        let term = match s.as_str() {
            "1" => e,
            "-1" => format!("-{e}"),
            "i" | "-i" => format!("{s}{e}"),
            _ if compound(&s) => format!("({s}){e}"),
            _ => format!("{s}{e}"),
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Parses a sum of monomials like `-i*e{023} - e{013}` or `2e^{15}`.
///
/// All monomials must share one degree. `base` is the index of the first
/// basis vector in the text.
pub fn parse_form(
    src: &str,
    dim: usize,
    base: usize,
    params: &dyn Fn(&str) -> Option<Scalar>,
) -> Result<Form<Scalar>> {
    let terms = parse_expr(src)?.eval_linear(params)?;
    let degree = terms.first().map_or(0, |(i, _)| i.len());
    let mut f = Form::zero(dim, degree);
    for (idx, c) in terms {
        if idx.len() != degree {
            return Err(Error::Input(format!("mixed degrees in `{src}`")));
        }
        let mut shifted = Vec::with_capacity(idx.len());
        for i in idx {
            match i.checked_sub(base).filter(|&x| x < dim) {
                Some(x) => shifted.push(x),
                None => return Err(Error::Input(format!("index {i} out of range"))),
            }
        }
        f = f + Form::monomial(dim, &shifted, c);
    }
    Ok(f)
}

/// Wedge of 1-forms printed as `(e0+ie3)^(e1+ie2)`.
pub fn format_wedge<K: Ring + Display>(factors: &[Form<K>], base: usize) -> String {
    factors
        .iter()
        .map(|f| format!("({})", format_one_form(f, base)))
        .collect::<Vec<_>>()
        .join("^")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Complex, Rational};

    type C = Complex<Rational>;

    #[test]
    fn prints_in_compact_notation() {
        let c = |re, im| C::new(qi(re), qi(im));
        let f = Form::monomial(4, &[0, 2, 3], c(0, -1)) + Form::monomial(4, &[0, 1, 3], c(-1, 0));
        assert_eq!(format_form(&f, 0), "-e{013} - i*e{023}");
        let g = Form::monomial(12, &[0, 11], c(1, 2));
        assert_eq!(format_form(&g, 1), "(1+2i)*e{1,12}");
        let one = Form::from_covector(&[c(1, 0), c(0, 0), c(0, 0), c(0, 1)]);
        let two = Form::from_covector(&[c(0, 0), c(1, 0), c(0, 1), c(0, 0)]);
        assert_eq!(format_wedge(&[one, two], 0), "(e0+ie3)^(e1+ie2)");
    }

    #[test]
    fn parse_round_trip() {
        let src = "-i*e{023} - e{013}";
        let f = parse_form(src, 4, 0, &|_| None).unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(format_form(&f, 0), "-e{013} - i*e{023}");
        let g = parse_form("e^{21} + 3e^{12}", 3, 1, &|_| None).unwrap();
        assert_eq!(g.coeff(&[0, 1]), "2".parse().unwrap());
        assert!(parse_form("e{1} + e{12}", 3, 1, &|_| None).is_err());
        assert!(parse_form("e{5}", 3, 1, &|_| None).is_err());
    }
}
