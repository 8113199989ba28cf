//! A small expression language for algebra elements, module vectors,
//! polynomials and rational functions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor | factor)*
//! factor := atom ("^" int)? | "-" factor
//! atom   := scalar | "L[" int "]" | "C" | "v0" | "v[" int "]" | "t" | "(" expr ")"
//! scalar := int ("/" posint)? | "z" ("^" int)?
//! ```
//!
//! Juxtaposition (`L[-2]L[-1]v0`) is composition and is only legal in the
//! Verma context; `/` between factors is only legal for rational functions.
//! Whitespace is insignificant. `z` is the primitive root of the session field.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::intseries::IntSeriesVector;
use crate::poly::{Poly, RationalFn};
use crate::scalar::{Field, Rational, Scalar};
use crate::verma::{VermaModule, VermaVector};
use crate::vir::{Gen, VirElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    Algebra,
    Verma,
    IntSeries,
    Poly,
    Rational,
}

impl Context {
    fn allows(self, atom: &Atom) -> bool {
        use Context::*;
        match atom {
            Atom::Int(_) | Atom::Rat(..) | Atom::Zeta(_) => true,
            Atom::L(_) | Atom::C => matches!(self, Algebra | Verma),
            Atom::Vacuum => self == Verma,
            Atom::V(_) => self == IntSeries,
            Atom::T => matches!(self, Poly | Rational),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Context::Algebra => "algebra",
            Context::Verma => "verma",
            Context::IntSeries => "intseries",
            Context::Poly => "poly",
            Context::Rational => "rational",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: expected {}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<String> },
    #[error("at byte {position}: {message}")]
    Context { position: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::Context { position, .. } => *position,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Int(BigInt),
    Rat(BigInt, BigInt),
    Zeta(i64),
    L(i64),
    C,
    Vacuum,
    V(i64),
    T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Atom(Atom),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Juxtaposition.
    Compose(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Syntax tree node with the byte offset where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: Context,
}

const ATOM_START: &[&str] = &[
    "integer", "\"z\"", "\"L[\"", "\"C\"", "\"v0\"", "\"v[\"", "\"t\"", "\"(\"", "\"-\"",
];

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&[&format!("\"{}\"", c as char)])
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail(&["digit"]);
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    /// Optionally signed integer that must fit in `i64`.
    fn small_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let v = self.digits()?;
        let v = if neg { -v } else { v };
        v.to_i64().ok_or(ParseError::Context {
            position: start,
            message: "integer out of range".into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let p = lhs.pos;
                    lhs = node(ExprKind::Add(Box::new(lhs), Box::new(rhs)), p);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let p = lhs.pos;
                    lhs = node(ExprKind::Sub(Box::new(lhs), Box::new(rhs)), p);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b'z' | b'L' | b'C' | b'v' | b't' | b'('))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let p = lhs.pos;
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = node(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), p);
                }
                Some(b'/') if self.ctx == Context::Rational => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = node(ExprKind::Div(Box::new(lhs), Box::new(rhs)), p);
                }
                _ if self.ctx == Context::Verma && self.starts_atom() => {
                    let rhs = self.factor()?;
                    lhs = node(ExprKind::Compose(Box::new(lhs), Box::new(rhs)), p);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            let p = self.pos;
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(node(ExprKind::Neg(Box::new(inner)), p));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.small_int()?;
            let p = base.pos;
            return Ok(node(ExprKind::Pow(Box::new(base), e), p));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(c) = self.peek() else {
            return self.fail(ATOM_START);
        };
        let start = self.pos;
        let atom = match c {
            b'0'..=b'9' => {
                let n = self.digits()?;
                // A literal fraction needs the digits immediately after "/".
                let mut look = self.pos;
                while look < self.src.len() && self.src[look].is_ascii_whitespace() {
                    look += 1;
                }
                let is_frac = self.src.get(look) == Some(&b'/')
                    && self.src[look + 1..]
                        .iter()
                        .find(|b| !b.is_ascii_whitespace())
                        .is_some_and(u8::is_ascii_digit);
                if is_frac {
                    self.pos = look + 1;
                    let dpos = {
                        self.skip_ws();
                        self.pos
                    };
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(ParseError::Context {
                            position: dpos,
                            message: "zero denominator".into(),
                        });
                    }
                    Atom::Rat(n, d)
                } else {
                    Atom::Int(n)
                }
            }
            b'z' => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    Atom::Zeta(self.small_int()?)
                } else {
                    Atom::Zeta(1)
                }
            }
            b'L' => {
                self.pos += 1;
                // "L[" is one token.
                if self.src.get(self.pos) != Some(&b'[') {
                    return self.fail(&["\"[\""]);
                }
                self.pos += 1;
                let k = self.small_int()?;
                self.expect(b']')?;
                Atom::L(k)
            }
            b'C' => {
                self.pos += 1;
                Atom::C
            }
            b'v' => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(b'0') => {
                        self.pos += 1;
                        Atom::Vacuum
                    }
                    Some(b'[') => {
                        self.pos += 1;
                        let j = self.small_int()?;
                        self.expect(b']')?;
                        Atom::V(j)
                    }
                    _ => return self.fail(&["\"0\"", "\"[\""]),
                }
            }
            b't' => {
                self.pos += 1;
                Atom::T
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.fail(&["\"+\"", "\"-\"", "\"*\"", "\")\""]);
                }
                self.pos += 1;
                return Ok(Expr { pos: start, ..inner });
            }
            _ => return self.fail(ATOM_START),
        };
        if !self.ctx.allows(&atom) {
            return Err(ParseError::Context {
                position: start,
                message: format!("not allowed in {} context", self.ctx.name()),
            });
        }
        Ok(node(ExprKind::Atom(atom), start))
    }
}

fn node(kind: ExprKind, pos: usize) -> Expr {
    Expr { kind, pos }
}

/// Parses `input` into a syntax tree, rejecting generators that are illegal
/// in `ctx`.
pub fn parse(input: &str, ctx: Context) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        ctx,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        let mut expected = vec!["\"+\"", "\"-\"", "\"*\""];
        if ctx == Context::Rational {
            expected.push("\"/\"");
        }
        expected.push("end of input");
        return p.fail(&expected);
    }
    Ok(e)
}

/// Formal combination of words in `L_k` and `C`.
#[derive(Clone, Debug)]
struct Words(Vec<(Vec<Gen>, Scalar)>);

#[derive(Clone, Debug)]
enum Val {
    S(Scalar),
    Vir(VirElement),
    W(Words),
    Verma(VermaVector),
    Int(IntSeriesVector),
    P(Poly),
    R(RationalFn),
}

impl Val {
    fn kind(&self) -> &'static str {
        match self {
            Val::S(_) => "scalar",
            Val::Vir(_) => "algebra element",
            Val::W(_) => "operator word",
            Val::Verma(_) => "Verma vector",
            Val::Int(_) => "intermediate-series vector",
            Val::P(_) => "polynomial",
            Val::R(_) => "rational function",
        }
    }
}

struct Eval<'a> {
    field: &'a Field,
    ctx: Context,
    module: Option<&'a VermaModule>,
}

fn ctx_err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Context {
        position: pos,
        message: message.into(),
    })
}

impl Eval<'_> {
    fn scalar_rat(&self, r: Rational) -> Scalar {
        self.field.rational(r)
    }

    fn atom(&self, a: &Atom) -> Val {
        let f = self.field;
        match a {
            Atom::Int(n) => Val::S(self.scalar_rat(Rational::from_integer(n.clone()))),
            Atom::Rat(n, d) => Val::S(self.scalar_rat(Rational::new(n.clone(), d.clone()))),
            Atom::Zeta(k) => Val::S(f.zeta().powi(*k)),
            Atom::L(k) => match self.ctx {
                Context::Algebra => Val::Vir(VirElement::l(f, *k)),
                _ => Val::W(Words(vec![(vec![Gen::L(*k)], f.one())])),
            },
            Atom::C => match self.ctx {
                Context::Algebra => Val::Vir(VirElement::c(f)),
                _ => Val::W(Words(vec![(vec![Gen::C], f.one())])),
            },
            Atom::Vacuum => Val::Verma(VermaVector::vacuum(f)),
            Atom::V(j) => Val::Int(IntSeriesVector::basis(*j, f.one())),
            Atom::T => match self.ctx {
                Context::Poly => Val::P(Poly::t(f)),
                _ => Val::R(RationalFn::from_poly(Poly::t(f))),
            },
        }
    }

    /// Lifts a scalar into the context's main value type.
    fn lift(&self, s: Scalar) -> Val {
        match self.ctx {
            Context::Poly => Val::P(Poly::constant(s)),
            Context::Rational => Val::R(RationalFn::constant(s)),
            Context::Algebra | Context::Verma | Context::IntSeries => Val::S(s),
        }
    }

    fn scale(&self, s: &Scalar, v: Val) -> Val {
        match v {
            Val::S(x) => Val::S(&x * s),
            Val::Vir(x) => Val::Vir(x.scale(s)),
            Val::W(Words(ws)) => Val::W(Words(ws.into_iter().map(|(w, c)| (w, &c * s)).collect())),
            Val::Verma(x) => Val::Verma(x.scale(s)),
            Val::Int(x) => Val::Int(x.scale(s)),
            Val::P(x) => Val::P(x.scale(s)),
            Val::R(x) => Val::R(x.scale(s)),
        }
    }

    fn apply_words(&self, ws: &Words, v: &VermaVector, pos: usize) -> Result<VermaVector, ParseError> {
        let Some(m) = self.module else {
            return ctx_err(pos, "operators need a Verma module to act on");
        };
        let mut out = VermaVector::zero(self.field);
        for (word, c) in &ws.0 {
            let mut acc = v.clone();
            for g in word.iter().rev() {
                acc = match g {
                    Gen::L(k) => m.act(*k, &acc),
                    Gen::C => m.act_c(&acc),
                };
            }
            out = out.add(&acc.scale(c));
        }
        Ok(out)
    }

    fn add(&self, a: Val, b: Val, pos: usize) -> Result<Val, ParseError> {
        Ok(match (a, b) {
            (Val::S(x), Val::S(y)) => Val::S(&x + &y),
            (Val::Vir(x), Val::Vir(y)) => Val::Vir(x.add(&y)),
            (Val::W(Words(mut x)), Val::W(Words(y))) => {
                x.extend(y);
                Val::W(Words(x))
            }
            (Val::Verma(x), Val::Verma(y)) => Val::Verma(x.add(&y)),
            (Val::Int(x), Val::Int(y)) => Val::Int(x.add(&y)),
            (Val::P(x), Val::P(y)) => Val::P(x.add(&y)),
            (Val::R(x), Val::R(y)) => Val::R(x.add(&y)),
            (Val::S(s), other) | (other, Val::S(s)) if matches!(other, Val::P(_) | Val::R(_)) => {
                return self.add(self.lift(s), other, pos);
            }
            (Val::S(s), Val::Vir(x)) | (Val::Vir(x), Val::S(s)) if s.is_zero() => Val::Vir(x),
            (Val::S(s), Val::Verma(x)) | (Val::Verma(x), Val::S(s)) if s.is_zero() => Val::Verma(x),
            (Val::S(s), Val::Int(x)) | (Val::Int(x), Val::S(s)) if s.is_zero() => Val::Int(x),
            (x, y) => return ctx_err(pos, format!("cannot add {} and {}", x.kind(), y.kind())),
        })
    }

    fn mul(&self, a: Val, b: Val, pos: usize) -> Result<Val, ParseError> {
        Ok(match (a, b) {
            (Val::S(s), v) | (v, Val::S(s)) => self.scale(&s, v),
            (Val::P(x), Val::P(y)) => Val::P(x.mul(&y)),
            (Val::R(x), Val::R(y)) => Val::R(x.mul(&y)),
            (Val::W(Words(x)), Val::W(Words(y))) => {
                let mut out = Vec::with_capacity(x.len() * y.len());
                for (wx, cx) in &x {
                    for (wy, cy) in &y {
                        let mut w = wx.clone();
                        w.extend(wy.iter().copied());
                        out.push((w, cx * cy));
                    }
                }
                Val::W(Words(out))
            }
            (Val::W(ws), Val::Verma(v)) => Val::Verma(self.apply_words(&ws, &v, pos)?),
            (x, y) => return ctx_err(pos, format!("cannot multiply {} by {}", x.kind(), y.kind())),
        })
    }

    fn eval(&self, e: &Expr) -> Result<Val, ParseError> {
        match &e.kind {
            ExprKind::Atom(a) => Ok(self.atom(a)),
            ExprKind::Neg(x) => {
                let v = self.eval(x)?;
                Ok(self.scale(&self.field.int(-1), v))
            }
            ExprKind::Add(x, y) => {
                let (a, b) = (self.eval(x)?, self.eval(y)?);
                self.add(a, b, y.pos)
            }
            ExprKind::Sub(x, y) => {
                let (a, b) = (self.eval(x)?, self.eval(y)?);
                let b = self.scale(&self.field.int(-1), b);
                self.add(a, b, y.pos)
            }
            ExprKind::Mul(x, y) | ExprKind::Compose(x, y) => {
                let (a, b) = (self.eval(x)?, self.eval(y)?);
                self.mul(a, b, y.pos)
            }
            ExprKind::Div(x, y) => {
                let a = self.to_rational(self.eval(x)?);
                let b = self.to_rational(self.eval(y)?);
                match a.div(&b) {
                    Ok(r) => Ok(Val::R(r)),
                    Err(_) => ctx_err(y.pos, "division by zero"),
                }
            }
            ExprKind::Pow(x, k) => self.pow(x, *k, e.pos),
        }
    }

    fn to_rational(&self, v: Val) -> RationalFn {
        match v {
            Val::S(s) => RationalFn::constant(s),
            Val::P(p) => RationalFn::from_poly(p),
            Val::R(r) => r,
            _ => unreachable!("rational context only produces scalars and rational functions"),
        }
    }

    fn pow(&self, base: &Expr, k: i64, pos: usize) -> Result<Val, ParseError> {
        let v = self.eval(base)?;
        if k < 0 {
            // Negative powers are reserved for t and linear factors in t.
            let linear = match &v {
                Val::R(r) => r.is_poly() && r.num().degree() == Some(1),
                _ => false,
            };
            if !linear {
                return ctx_err(pos, "negative exponent is only allowed on t or a linear factor in t");
            }
        }
        let e = k.unsigned_abs();
        let Ok(e32) = u32::try_from(e) else {
            return ctx_err(pos, "exponent out of range");
        };
        Ok(match v {
            Val::S(s) => Val::S(s.powi(k)),
            Val::P(p) => Val::P(p.pow(e32)),
            Val::R(r) => Val::R(r.pow(k).expect("linear base is nonzero")),
            Val::W(ws) => {
                let mut acc = Val::S(self.field.one());
                for _ in 0..e {
                    acc = self.mul(acc, Val::W(ws.clone()), pos)?;
                }
                acc
            }
            other => return ctx_err(pos, format!("cannot raise {} to a power", other.kind())),
        })
    }
}

fn evaluate(input: &str, ctx: Context, field: &Field, module: Option<&VermaModule>) -> Result<Val, ParseError> {
    let e = parse(input, ctx)?;
    Eval { field, ctx, module }.eval(&e)
}

fn expected_kind<T>(v: &Val, want: &str) -> Result<T, ParseError> {
    ctx_err(0, format!("expected {want}, found {}", v.kind()))
}

pub fn parse_scalar(input: &str, field: &Field) -> Result<Scalar, ParseError> {
    match evaluate(input, Context::Algebra, field, None)? {
        Val::S(s) => Ok(s),
        other => expected_kind(&other, "a scalar"),
    }
}

pub fn parse_vir(input: &str, field: &Field) -> Result<VirElement, ParseError> {
    match evaluate(input, Context::Algebra, field, None)? {
        Val::Vir(x) => Ok(x),
        Val::S(s) if s.is_zero() => Ok(VirElement::zero(field)),
        other => expected_kind(&other, "an algebra element"),
    }
}

/// Parses a Verma vector; operators are applied through `module`.
pub fn parse_verma(input: &str, module: &VermaModule) -> Result<VermaVector, ParseError> {
    let field = module.highest_weight().h.field().clone();
    match evaluate(input, Context::Verma, &field, Some(module))? {
        Val::Verma(v) => Ok(v),
        Val::S(s) if s.is_zero() => Ok(VermaVector::zero(&field)),
        other => expected_kind(&other, "a vector ending in v0"),
    }
}

pub fn parse_intseries(input: &str, field: &Field) -> Result<IntSeriesVector, ParseError> {
    match evaluate(input, Context::IntSeries, field, None)? {
        Val::Int(v) => Ok(v),
        Val::S(s) if s.is_zero() => Ok(IntSeriesVector::zero(field)),
        other => expected_kind(&other, "a combination of v[j]"),
    }
}

pub fn parse_poly(input: &str, field: &Field) -> Result<Poly, ParseError> {
    match evaluate(input, Context::Poly, field, None)? {
        Val::P(p) => Ok(p),
        Val::S(s) => Ok(Poly::constant(s)),
        other => expected_kind(&other, "a polynomial"),
    }
}

pub fn parse_rational(input: &str, field: &Field) -> Result<RationalFn, ParseError> {
    match evaluate(input, Context::Rational, field, None)? {
        Val::R(r) => Ok(r),
        Val::S(s) => Ok(RationalFn::constant(s)),
        other => expected_kind(&other, "a rational function"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Atom(a) => match a {
                Atom::Int(n) => write!(f, "{n}"),
                Atom::Rat(n, d) => write!(f, "{n}/{d}"),
                Atom::Zeta(k) => write!(f, "z^{k}"),
                Atom::L(k) => write!(f, "L[{k}]"),
                Atom::C => f.write_str("C"),
                Atom::Vacuum => f.write_str("v0"),
                Atom::V(j) => write!(f, "v[{j}]"),
                Atom::T => f.write_str("t"),
            },
            ExprKind::Neg(x) => write!(f, "-({x})"),
            ExprKind::Add(x, y) => write!(f, "({x} + {y})"),
            ExprKind::Sub(x, y) => write!(f, "({x} - {y})"),
            ExprKind::Mul(x, y) => write!(f, "({x} * {y})"),
            ExprKind::Compose(x, y) => write!(f, "({x} {y})"),
            ExprKind::Div(x, y) => write!(f, "({x} / {y})"),
            ExprKind::Pow(x, k) => write!(f, "({x})^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verma::{HighestWeight, PBWMonomial};

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn algebra_examples() {
        let f = q();
        let x = parse_vir("3*L[-2] + 1/2*C", &f).unwrap();
        assert_eq!(x.coeff(Gen::L(-2)), f.int(3));
        assert_eq!(x.coeff(Gen::C), f.frac(1, 2));
        let y = parse_vir("-4*L[0] + 1/2*C", &f).unwrap();
        assert_eq!(y.to_string(), "-4*L[0] + 1/2*C");
        assert!(matches!(
            parse("v0", Context::Algebra),
            Err(ParseError::Context { position: 0, .. })
        ));
        assert!(parse_vir("L[1]*L[2]", &f).is_err());
    }

    #[test]
    fn verma_examples() {
        let f = q();
        let m = VermaModule::new(HighestWeight::new(f.frac(1, 3), f.int(2)));
        let v = parse_verma("L[-2]L[-1]v0 - 2*v0", &m).unwrap();
        let mono = |p: &[u32]| PBWMonomial::new(p.to_vec()).unwrap();
        assert_eq!(v.coeff(&mono(&[2, 1])), f.one());
        assert_eq!(v.coeff(&PBWMonomial::vacuum()), f.int(-2));
        // Out-of-order words are straightened.
        let w = parse_verma("L[-1]L[-2]v0", &m).unwrap();
        assert_eq!(w, parse_verma("L[-2]L[-1]v0 - L[-3]v0", &m).unwrap());
        let x = parse_verma("L[1]L[-1]v0", &m).unwrap();
        assert_eq!(x, VermaVector::vacuum(&f).scale(&f.frac(-2, 3)));
        assert!(parse_verma("L[-1]", &m).is_err());
    }

    #[test]
    fn rational_examples() {
        let f = q();
        let r = parse_rational("(t-2)^-1 * (t^2 + 1)", &f).unwrap();
        assert_eq!(r.to_string(), "(t^2 + 1) / (t + -2)");
        assert_eq!(parse_rational(&r.to_string(), &f).unwrap(), r);
        assert!(parse_rational("(t^2+1)^-1", &f).is_err());
        assert_eq!(
            parse_rational("t^-2", &f).unwrap(),
            RationalFn::laurent_monomial(f.one(), -2)
        );
        assert!(matches!(parse_poly("t^-1", &f), Err(ParseError::Context { .. })));
        assert!(parse_poly("t / 2", &f).is_err());
    }

    #[test]
    fn scalars() {
        let z = Field::new(4).unwrap();
        let s = parse_scalar("1/2 + 1*z^1", &z).unwrap();
        assert_eq!(s, &z.frac(1, 2) + &z.zeta());
        assert_eq!(parse_scalar("z^-1", &z).unwrap(), z.zeta().powi(-1));
        assert_eq!(parse_scalar(" - 3 / 4 ", &z).unwrap(), z.frac(-3, 4));
        assert!(parse_scalar("1/0", &z).is_err());
    }

    #[test]
    fn syntax_errors() {
        let e = parse("3 + * L[1]", Context::Algebra).unwrap_err();
        assert_eq!(e.position(), 4);
        let e = parse("L[1", Context::Algebra).unwrap_err();
        assert_eq!(e.position(), 3);
        let e = parse("L[1] L[2]", Context::Algebra).unwrap_err();
        assert_eq!(e.position(), 5);
        let e = parse("", Context::Poly).unwrap_err();
        assert_eq!(e.position(), 0);
        let e = parse("t $", Context::Poly).unwrap_err();
        assert_eq!(e.position(), 2);
        assert!(matches!(e, ParseError::Syntax { .. }));
    }

    #[test]
    fn intseries() {
        let f = q();
        let v = parse_intseries("3*v[2] - v[-1]", &f).unwrap();
        assert_eq!(v.to_string(), "-v[-1] + 3*v[2]");
    }

    mod roundtrip {
        use super::*;
        use proptest::prelude::*;

        fn fields() -> [Field; 2] {
            [Field::rationals(), Field::new(3).unwrap()]
        }

        fn scalar(field: Field) -> impl Strategy<Value = Scalar> {
            let deg = field.degree();
            prop::collection::vec((-9i64..=9, 1i64..=6), deg).prop_map(move |cs| {
                field.from_coeffs(cs.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect())
            })
        }

        fn any_field() -> impl Strategy<Value = Field> {
            prop::sample::select(fields().to_vec())
        }

        fn vir() -> impl Strategy<Value = VirElement> {
            any_field().prop_flat_map(|f| {
                let g = prop_oneof![(-8i64..=8).prop_map(Gen::L), Just(Gen::C)];
                prop::collection::vec((g, scalar(f.clone())), 0..5).prop_map(move |ts| {
                    let mut x = VirElement::zero(&f);
                    for (g, c) in ts {
                        x.add_term(g, c);
                    }
                    x
                })
            })
        }

        fn poly() -> impl Strategy<Value = Poly> {
            any_field().prop_flat_map(|f| {
                prop::collection::vec(scalar(f.clone()), 0..5).prop_map(move |cs| Poly::from_coeffs(&f, cs))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn scalars_round_trip(s in any_field().prop_flat_map(scalar)) {
                prop_assert_eq!(parse_scalar(&s.to_string(), s.field()).unwrap(), s);
            }

            #[test]
            fn vir_round_trip(x in vir()) {
                prop_assert_eq!(parse_vir(&x.to_string(), x.field()).unwrap(), x);
            }

            #[test]
            fn verma_round_trip(
                f in any_field(),
                terms in prop::collection::vec((prop::collection::vec(1u32..=4, 0..4), -5i64..=5), 0..5),
                zc in -3i64..=3,
            ) {
                let m = VermaModule::new(HighestWeight::new(f.frac(1, 2), f.int(1)));
                let mut v = VermaVector::zero(&f);
                for (parts, c) in terms {
                    let c = &f.int(c) + &f.zeta().scale_int(zc);
                    v.add_term(PBWMonomial::new(parts).unwrap(), c);
                }
                prop_assert_eq!(parse_verma(&v.to_string(), &m).unwrap(), v);
            }

            #[test]
            fn intseries_round_trip(
                f in any_field(),
                terms in prop::collection::vec((-6i64..=6, -5i64..=5, 1i64..=4), 0..5),
            ) {
                let mut v = IntSeriesVector::zero(&f);
                for (j, p, q) in terms {
                    v.add_term(j, f.frac(p, q));
                }
                prop_assert_eq!(parse_intseries(&v.to_string(), &f).unwrap(), v);
            }

            #[test]
            fn poly_round_trip(p in poly()) {
                prop_assert_eq!(parse_poly(&p.to_string(), p.field()).unwrap(), p);
            }

            #[test]
            fn rational_round_trip(num in poly(), roots in prop::collection::vec(-4i64..=4, 0..3), tpow in -2i64..=2) {
                let f = num.field().clone();
                let mut r = RationalFn::from_poly(num).mul_t_pow(tpow);
                for a in roots {
                    r = r.mul(&RationalFn::linear_power(&f.int(a), -1));
                }
                prop_assert_eq!(parse_rational(&r.to_string(), &f).unwrap(), r);
            }

            /// Leading whitespace shifts the error position and nothing else.
            #[test]
            fn error_positions_are_stable(src in "[Lt0-9v\\[\\]()+*^ -]{0,12}", pad in 0usize..4) {
                for ctx in [Context::Algebra, Context::Verma, Context::Poly] {
                    let a = parse(&src, ctx);
                    let b = parse(&format!("{}{}", " ".repeat(pad), src), ctx);
                    match (a, b) {
                        (Ok(_), Ok(_)) => {}
                        (Err(x), Err(y)) => {
                            prop_assert_eq!(x.position() + pad, y.position());
                            prop_assert!(x.position() <= src.len());
                        }
                        (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
                    }
                }
            }
        }
    }
}
