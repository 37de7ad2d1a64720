//! Small arithmetic expression language shared by every text format.
//!
//! Numbers are integers (fractions via `/`), `i` is the imaginary unit,
//! `√n` or `sqrt(n)` a square root, `pi`/`π` and `t` are formal symbols, and
//! `e^{jk}` / `e{023}` / `e15` are basis monomials. Juxtaposition multiplies.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Complex, Field, Laurent, Quadratic, Rational, Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Ident(String),
    Sqrt(Box<Expr>),
    Basis(Vec<usize>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Basis(Vec<usize>),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().unwrap())));
        } else if c == 'e' && is_basis_start(&chars, i + 1) {
            let start = i;
            i += 1;
            let (idx, next) = lex_indices(&chars, i).map_err(|m| err(start, &m))?;
            i = next;
            out.push((start, Tok::Basis(idx)));
        } else if c.is_alphabetic() && c != '√' {
            let start = i;
            i += 1;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_')
                && chars[i] != '√'
                && !(chars[i] == 'e' && is_basis_start(&chars, i + 1))
            {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Ident(s)));
        } else {
            let op = match c {
                '−' | '–' => '-',
                '·' | '×' => '*',
                _ => c,
            };
            if !"+-*/^()√".contains(op) {
                return Err(err(i, &format!("unexpected character `{c}`")));
            }
            out.push((i, Tok::Op(op)));
            i += 1;
        }
    }
    Ok(out)
}

fn is_basis_start(chars: &[char], i: usize) -> bool {
    match chars.get(i) {
        Some('^') | Some('_') => matches!(chars.get(i + 1), Some('{') | Some('0'..='9')),
        Some('{') => true,
        Some(c) => c.is_ascii_digit(),
        None => false,
    }
}

fn lex_indices(chars: &[char], mut i: usize) -> std::result::Result<(Vec<usize>, usize), String> {
    if matches!(chars.get(i), Some('^') | Some('_')) {
        i += 1;
    }
    let braced = chars.get(i) == Some(&'{');
    if braced {
        i += 1;
    }
    let start = i;
    while i < chars.len() && (chars[i].is_ascii_digit() || (braced && (chars[i] == ',' || chars[i] == ' ')))
    {
        i += 1;
    }
    let body: String = chars[start..i].iter().collect();
    if braced {
        if chars.get(i) != Some(&'}') {
            return Err("unterminated basis index".into());
        }
        i += 1;
    }
    let idx: Vec<usize> = if body.contains(',') {
        body.split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| format!("bad index `{s}`")))
            .collect::<std::result::Result<_, _>>()?
    } else {
        body.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_digit(10).unwrap() as usize)
            .collect()
    };
    if idx.is_empty() {
        return Err("empty basis index".into());
    }
    Ok((idx, i))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.here(),
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Basis(_)) | Some(Tok::Op('(')) | Some(Tok::Op('√'))
        )
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if self.starts_factor() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: i32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Basis(b)) => {
                self.pos += 1;
                Ok(Expr::Basis(b))
            }
            Some(Tok::Ident(s)) if s == "sqrt" => {
                self.pos += 1;
                if !self.eat('(') {
                    return Err(self.err("expected `(` after sqrt"));
                }
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(Expr::Sqrt(Box::new(inner)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::Op('√')) => {
                self.pos += 1;
                Ok(Expr::Sqrt(Box::new(self.atom()?)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

/// Parse a complete expression.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        len: src.chars().count(),
    };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

fn sqrt_of(q: &Rational) -> Result<Quadratic> {
    if q < &Rational::zero() {
        return Err(Error::NotInField(format!("sqrt of negative {q}")));
    }
    // sqrt(p/q) = sqrt(p q) / q
    let n = q.numer() * q.denom();
    let n: u64 = n
        .try_into()
        .map_err(|_| Error::NotInField(format!("sqrt argument {q} too large")))?;
    let s = Quadratic::sqrt(n);
    Ok(s * Quadratic::rational(Rational::from_integer(q.denom().clone()).recip()))
}

impl Expr {
    /// Evaluate to a [`Scalar`], resolving identifiers through `params`.
    pub fn eval_scalar(&self, params: &dyn Fn(&str) -> Option<Scalar>) -> Result<Scalar> {
        use Expr::*;
        Ok(match self {
            Num(n) => Scalar::from(Rational::from_integer(n.clone())),
            Ident(s) if s == "i" => Scalar::from(Complex::<Quadratic>::i()),
            Ident(s) => params(s).ok_or_else(|| Error::UnknownParameter(s.clone()))?,
            Sqrt(inner) => {
                let v = inner.eval_scalar(params)?;
                let q = v
                    .to_rational()
                    .ok_or_else(|| Error::NotInField(format!("sqrt of {v}")))?;
                Scalar::from(sqrt_of(&q)?)
            }
            Basis(_) => return Err(Error::Input("basis element in scalar expression".into())),
            Neg(a) => -a.eval_scalar(params)?,
            Add(a, b) => a.eval_scalar(params)?.checked_add(&b.eval_scalar(params)?)?,
            Sub(a, b) => a.eval_scalar(params)?.checked_add(&-b.eval_scalar(params)?)?,
            Mul(a, b) => a.eval_scalar(params)?.checked_mul(&b.eval_scalar(params)?)?,
            Div(a, b) => {
                let d = b.eval_scalar(params)?.inv()?;
                a.eval_scalar(params)?.checked_mul(&d)?
            }
            Pow(a, e) => {
                let base = a.eval_scalar(params)?;
                let base = if *e < 0 { base.inv()? } else { base };
                let mut acc = Scalar::one();
                for _ in 0..e.unsigned_abs() {
                    acc = acc.checked_mul(&base)?;
                }
                acc
            }
        })
    }

    /// Evaluate to a Laurent polynomial in `pi` and `t` over a real quadratic field.
    pub fn eval_laurent(&self) -> Result<Laurent<Quadratic>> {
        use Expr::*;
        type L = Laurent<Quadratic>;
        Ok(match self {
            Num(n) => L::from_rational(&Rational::from_integer(n.clone())),
            Ident(s) if s == "pi" || s == "π" => L::pi(),
            Ident(s) if s == "t" => L::t(),
            Ident(s) => return Err(Error::UnknownParameter(s.clone())),
            Sqrt(inner) => {
                let v = inner.eval_laurent()?;
                let q = v
                    .to_rational()
                    .ok_or_else(|| Error::NotInField(format!("sqrt of {v}")))?;
                L::constant(sqrt_of(&q)?)
            }
            Basis(_) => return Err(Error::Input("basis element in matrix entry".into())),
            Neg(a) => -a.eval_laurent()?,
            Add(a, b) => checked(a.eval_laurent()?, b.eval_laurent()?, |x, y| x + y)?,
            Sub(a, b) => checked(a.eval_laurent()?, b.eval_laurent()?, |x, y| x - y)?,
            Mul(a, b) => checked(a.eval_laurent()?, b.eval_laurent()?, |x, y| x * y)?,
            Div(a, b) => {
                let (x, y) = (a.eval_laurent()?, b.eval_laurent()?);
                compatible_laurent(&x, &y)?;
                x.checked_div(&y)?
            }
            Pow(a, e) => {
                let base = a.eval_laurent()?;
                let base = if *e < 0 {
                    L::one().checked_div(&base)?
                } else {
                    base
                };
                base.pow(e.unsigned_abs())
            }
        })
    }

    /// Evaluate a linear combination of basis monomials.
    ///
    /// Returns `(indices, coefficient)` pairs; coefficients never multiply
    /// two basis monomials together.
    pub fn eval_linear(
        &self,
        params: &dyn Fn(&str) -> Option<Scalar>,
    ) -> Result<Vec<(Vec<usize>, Scalar)>> {
        use Expr::*;
        Ok(match self {
            Basis(b) => vec![(b.clone(), Scalar::one())],
            Neg(a) => scale(a.eval_linear(params)?, &-Scalar::one())?,
            Add(a, b) => {
                let mut v = a.eval_linear(params)?;
                v.extend(b.eval_linear(params)?);
                v
            }
            Sub(a, b) => {
                let mut v = a.eval_linear(params)?;
                v.extend(scale(b.eval_linear(params)?, &-Scalar::one())?);
                v
            }
            Mul(a, b) => match (a.has_basis(), b.has_basis()) {
                (false, true) => scale(b.eval_linear(params)?, &a.eval_scalar(params)?)?,
                (true, false) => scale(a.eval_linear(params)?, &b.eval_scalar(params)?)?,
                (true, true) => {
                    return Err(Error::Input("product of two basis monomials".into()))
                }
                (false, false) => {
                    return Err(Error::Input("scalar where a form was expected".into()))
                }
            },
            Div(a, b) if !b.has_basis() => {
                scale(a.eval_linear(params)?, &b.eval_scalar(params)?.inv()?)?
            }
            Num(n) if n.is_zero() => Vec::new(),
            _ => return Err(Error::Input("expected a combination of basis monomials".into())),
        })
    }

    fn has_basis(&self) -> bool {
        use Expr::*;
        match self {
            Basis(_) => true,
            Num(_) | Ident(_) => false,
            Sqrt(a) | Neg(a) | Pow(a, _) => a.has_basis(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.has_basis() || b.has_basis(),
        }
    }
}

fn scale(v: Vec<(Vec<usize>, Scalar)>, c: &Scalar) -> Result<Vec<(Vec<usize>, Scalar)>> {
    v.into_iter()
        .map(|(k, x)| Ok((k, x.checked_mul(c)?)))
        .collect()
}

fn compatible_laurent(x: &Laurent<Quadratic>, y: &Laurent<Quadratic>) -> Result<()> {
    for (_, a) in x.terms() {
        for (_, b) in y.terms() {
            if !a.compatible(b) {
                return Err(Error::IncompatibleFields(a.radicand() as i64, b.radicand() as i64));
            }
        }
    }
    Ok(())
}

fn checked(
    x: Laurent<Quadratic>,
    y: Laurent<Quadratic>,
    f: impl Fn(Laurent<Quadratic>, Laurent<Quadratic>) -> Laurent<Quadratic>,
) -> Result<Laurent<Quadratic>> {
    compatible_laurent(&x, &y)?;
    Ok(f(x, y))
}
