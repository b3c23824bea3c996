//! Expression parsing and printing.
//!
//! Grammar (one free variable, no implicit multiplication):
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := unary (('*'|'/') unary)*
//! unary    := ('-'|'+') unary | factor
//! factor   := base ('^' rational)?
//! base     := number | symbol | '(' expr ')' | func '(' expr ')'
//! rational := ['-'] integer ['/' integer] | '(' ['-'] integer ['/' integer] ')'
//! func     := sqrt | cbrt | log | ln | arctan | atan
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{fmt_factor, FieldElement};
use crate::num::{fmt_q, Q};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Log,
    Arctan,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// `base^exp`; `text` is the base's source without whitespace and
    /// without one pair of enclosing parentheses.
    Pow { base: Box<Expr>, exp: Q, text: String },
    Call(Func, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Lexer<'a>> {
        let mut toks = Vec::new();
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let text = &src[start..i];
                let q = parse_decimal(text).ok_or(Error::Parse { pos: start, msg: format!("bad number '{text}'") })?;
                toks.push((Tok::Num(q), start, i));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(String::from(&src[start..i])), start, i));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Op(c), i, i + 1));
                i += 1;
            } else {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character '{c}'") });
            }
        }
        Ok(Lexer { src, toks })
    }
}

fn parse_decimal(s: &str) -> Option<Q> {
    let mut parts = s.split('.');
    let int = parts.next()?;
    let frac = parts.next().unwrap_or("");
    if parts.next().is_some() || (int.is_empty() && frac.is_empty()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().ok()?;
    let d = BigInt::from(10).pow(frac.len() as u32);
    Some(Q::new(n, d))
}

struct Parser<'a> {
    lx: Lexer<'a>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.lx.toks.get(self.pos).map_or(self.lx.src.len(), |t| t.1)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: String::from(msg) })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let start = self.offset();
        let base = self.base()?;
        let end = self.lx.toks.get(self.pos - 1).map_or(self.lx.src.len(), |t| t.2);
        if self.eat('^') {
            let exp = self.rational()?;
            let text = match &base {
                Expr::Pow { exp, text, .. } if is_radical_sugar(&self.lx.src[start..end], exp) => text.clone(),
                _ => source_text(&self.lx.src[start..end]),
            };
            return Ok(Expr::Pow { base: Box::new(base), exp, text });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(q)) if q.is_integer() => {
                self.pos += 1;
                let n = q.to_integer();
                Ok(if neg { -n } else { n })
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn rational(&mut self) -> Result<Q> {
        if self.eat('(') {
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { BigInt::one() };
            self.expect(')')?;
            if d.is_zero() {
                return self.err("zero denominator in exponent");
            }
            return Ok(Q::new(n, d));
        }
        let n = self.integer()?;
        if self.peek() == Some(&Tok::Op('/')) && matches!(self.lx.toks.get(self.pos + 1), Some((Tok::Num(q), _, _)) if q.is_integer()) {
            self.pos += 1;
            let d = self.integer()?;
            if d.is_zero() {
                return self.err("zero denominator in exponent");
            }
            return Ok(Q::new(n, d));
        }
        Ok(Q::from_integer(n))
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Expr::Num(q))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let func = match name.as_str() {
                    "sqrt" | "cbrt" | "log" | "ln" | "arctan" | "atan" => Some(name.clone()),
                    _ => None,
                };
                match func {
                    None => Ok(Expr::Sym(name)),
                    Some(f) => {
                        if self.peek() != Some(&Tok::Op('(')) {
                            return self.err("expected '(' after function name");
                        }
                        let inner_start = self.offset();
                        self.pos += 1;
                        let e = self.expr()?;
                        let inner_end = self.offset();
                        self.expect(')')?;
                        let text = source_text(&self.lx.src[inner_start..inner_end + 1]);
                        Ok(match f.as_str() {
                            "sqrt" => Expr::Pow { base: Box::new(e), exp: Q::new(1.into(), 2.into()), text },
                            "cbrt" => Expr::Pow { base: Box::new(e), exp: Q::new(1.into(), 3.into()), text },
                            "log" | "ln" => Expr::Call(Func::Log, Box::new(e)),
                            _ => Expr::Call(Func::Arctan, Box::new(e)),
                        })
                    }
                }
            }
            _ => self.err("expected a number, symbol or '('"),
        }
    }
}

fn is_radical_sugar(src: &str, _exp: &Q) -> bool {
    let s = src.trim_start();
    s.starts_with("sqrt") || s.starts_with("cbrt")
}

/// Removes whitespace and one pair of enclosing parentheses.
fn source_text(s: &str) -> String {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    strip_outer_parens(&compact)
}

fn strip_outer_parens(s: &str) -> String {
    if !(s.starts_with('(') && s.ends_with(')')) {
        return String::from(s);
    }
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != s.len() - 1 {
                    return String::from(s);
                }
            }
            _ => {}
        }
    }
    String::from(&s[1..s.len() - 1])
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let lx = Lexer::run(text)?;
    if lx.toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: String::from("empty expression") });
    }
    let mut p = Parser { lx, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.lx.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Evaluates an expression that must be a rational function of `var`.
pub fn eval_ratfun(e: &Expr, var: &str) -> Result<RationalFunction> {
    Ok(match e {
        Expr::Num(q) => RationalFunction::constant(FieldElement::from(q.clone())),
        Expr::Sym(s) if s == var => RationalFunction::x(),
        Expr::Sym(s) => return Err(Error::UnsupportedExpression(format!("unknown symbol '{s}'"))),
        Expr::Neg(a) => -eval_ratfun(a, var)?,
        Expr::Add(a, b) => eval_ratfun(a, var)? + eval_ratfun(b, var)?,
        Expr::Sub(a, b) => eval_ratfun(a, var)? - eval_ratfun(b, var)?,
        Expr::Mul(a, b) => eval_ratfun(a, var)? * eval_ratfun(b, var)?,
        Expr::Div(a, b) => eval_ratfun(a, var)?.checked_div(&eval_ratfun(b, var)?)?,
        Expr::Pow { base, exp, .. } => {
            if !exp.is_integer() {
                return Err(Error::UnsupportedExpression(String::from("radical in a rational context")));
            }
            let b = eval_ratfun(base, var)?;
            let k = exp.to_integer();
            let k: i64 = k.try_into().map_err(|_| Error::UnsupportedExpression(String::from("exponent too large")))?;
            if k < 0 && b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            b.pow(k)
        }
        Expr::Call(..) => return Err(Error::UnsupportedExpression(String::from("transcendental function in a rational context"))),
    })
}

pub fn parse_ratfun(text: &str, var: &str) -> Result<RationalFunction> {
    eval_ratfun(&parse_expr(text)?, var)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Half,
    Third,
    TwoThirds,
}

impl Exponent {
    /// Radical index `n` in `R^(m/n)`.
    pub fn index(self) -> u32 {
        match self {
            Exponent::Half => 2,
            _ => 3,
        }
    }

    /// Numerator `m` in `R^(m/n)`.
    pub fn power(self) -> u32 {
        match self {
            Exponent::TwoThirds => 2,
            _ => 1,
        }
    }

    pub fn from_q(p: &Q) -> Option<Exponent> {
        let (n, d) = (p.numer().clone(), p.denom().clone());
        match (i64::try_from(n).ok()?, i64::try_from(d).ok()?) {
            (1, 2) => Some(Exponent::Half),
            (1, 3) => Some(Exponent::Third),
            (2, 3) => Some(Exponent::TwoThirds),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Exponent> {
        let q = parse_ratfun(s, "_")?
            .as_constant()
            .and_then(|c| c.as_rational().cloned())
            .ok_or_else(|| Error::UnsupportedExponent(String::from(s)))?;
        Exponent::from_q(&q.abs()).ok_or_else(|| Error::UnsupportedExponent(String::from(s)))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exponent::Half => "1/2",
            Exponent::Third => "1/3",
            Exponent::TwoThirds => "2/3",
        })
    }
}

/// `F(t) · R(t)^(-p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrandSpec {
    pub f: RationalFunction,
    pub r: Poly,
    pub exponent: Exponent,
    pub var: String,
    /// How the radicand is displayed inside radicals.
    pub radicand_text: String,
}

impl IntegrandSpec {
    pub fn new(f: RationalFunction, r: Poly, exponent: Exponent, var: &str) -> Result<IntegrandSpec> {
        if r.deg() < 1 {
            return Err(Error::UnsupportedIntegrand(String::from("constant radicand")));
        }
        if !r.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let radicand_text = r.to_compact_text(var);
        Ok(IntegrandSpec { f, r, exponent, var: String::from(var), radicand_text })
    }
}

impl fmt::Display for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})^({})", self.f.to_text(&self.var), self.radicand_text, self.exponent)
    }
}

struct Collected {
    rational: RationalFunction,
    radicals: Vec<(Poly, Q, String)>,
}

fn collect(e: &Expr, mult: &Q, var: &str, out: &mut Collected) -> Result<()> {
    let rational_factor = |e: &Expr, out: &mut Collected| -> Result<()> {
        let f = eval_ratfun(e, var).map_err(|err| match err {
            Error::UnsupportedExpression(m) => Error::UnsupportedIntegrand(m),
            other => other,
        })?;
        let k: i64 = mult.to_integer().try_into().map_err(|_| Error::UnsupportedIntegrand(String::from("exponent too large")))?;
        if k < 0 && f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        out.rational = &out.rational * &f.pow(k);
        Ok(())
    };
    match e {
        Expr::Mul(a, b) => {
            collect(a, mult, var, out)?;
            collect(b, mult, var, out)
        }
        Expr::Div(a, b) => {
            collect(a, mult, var, out)?;
            collect(b, &-mult, var, out)
        }
        Expr::Neg(a) => {
            if mult.to_integer().is_odd() {
                out.rational = -&out.rational;
            }
            collect(a, mult, var, out)
        }
        Expr::Pow { base, exp, text } => {
            let m = mult * exp;
            if exp.is_integer() {
                return collect(base, &m, var, out);
            }
            let p = eval_ratfun(base, var).map_err(|err| match err {
                Error::UnsupportedExpression(msg) => Error::UnsupportedIntegrand(msg),
                other => other,
            })?;
            if !p.is_polynomial() {
                return Err(Error::UnsupportedIntegrand(String::from("radicand must be a polynomial")));
            }
            let p = p.num().clone();
            if let Some(slot) = out.radicals.iter_mut().find(|(q, _, _)| q == &p) {
                slot.1 += &m;
            } else {
                out.radicals.push((p, m, text.clone()));
            }
            Ok(())
        }
        _ => {
            if mult.is_integer() {
                rational_factor(e, out)
            } else {
                Err(Error::UnsupportedIntegrand(String::from("fractional power of a non-polynomial")))
            }
        }
    }
}

/// Extracts `F`, `R` and `p` from text of the form `F(t) R(t)^(-p)`.
pub fn parse_integrand(text: &str, var: &str) -> Result<IntegrandSpec> {
    let e = parse_expr(text)?;
    let mut c = Collected { rational: RationalFunction::one(), radicals: Vec::new() };
    collect(&e, &Q::one(), var, &mut c)?;
    let mut radicals = Vec::new();
    for (p, m, text) in c.radicals {
        if m.is_integer() {
            let k: i64 = m.to_integer().try_into().map_err(|_| Error::UnsupportedIntegrand(String::from("exponent too large")))?;
            c.rational = &c.rational * &RationalFunction::from(p).pow(k);
        } else {
            radicals.push((p, m, text));
        }
    }
    match radicals.len() {
        0 => return Err(Error::NotARadicalIntegrand),
        1 => {}
        _ => return Err(Error::Ambiguous),
    }
    let (r, m, rtext) = radicals.pop().unwrap();
    let exponent = if m.is_negative() { Exponent::from_q(&-&m) } else { None };
    let exponent = exponent.ok_or_else(|| Error::UnsupportedExponent(fmt_q(&m)))?;
    if r.deg() < 1 {
        return Err(Error::UnsupportedIntegrand(String::from("constant radicand")));
    }
    if !r.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(IntegrandSpec { f: c.rational, r, exponent, var: String::from(var), radicand_text: rtext })
}

fn monomial_text(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => String::from(var),
        _ => format!("{var}^{k}"),
    }
}

/// Terms of a polynomial from the highest degree down, as (negative, text).
fn poly_terms(p: &Poly, var: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = monomial_text(var, k);
        let term = match c.as_rational() {
            Some(r) => {
                let a = r.abs();
                let body = if k == 0 {
                    fmt_q(&a)
                } else if a.is_one() {
                    mono
                } else if a.is_integer() {
                    format!("{}*{}", fmt_q(&a), mono)
                } else {
                    format!("({})*{}", fmt_q(&a), mono)
                };
                (r.is_negative(), body)
            }
            None => {
                let body = if k == 0 { c.to_string() } else { format!("{c}*{mono}") };
                (false, body)
            }
        };
        out.push(term);
    }
    out
}

fn join_terms(terms: &[(bool, String)], spaced: bool) -> String {
    if terms.is_empty() {
        return String::from("0");
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        if i == 0 {
            if *neg {
                s.push('-');
            }
        } else if spaced {
            s.push_str(if *neg { " - " } else { " + " });
        } else {
            s.push(if *neg { '-' } else { '+' });
        }
        s.push_str(body);
    }
    s
}

pub fn format_poly(p: &Poly, var: &str, spaced: bool) -> String {
    join_terms(&poly_terms(p, var), spaced)
}

/// Scale making all coefficients of both polynomials coprime integers.
fn clearing_scale(num: &Poly, den: &Poly) -> Option<Q> {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for c in num.coeffs().iter().chain(den.coeffs()) {
        let r = c.as_rational()?;
        l = l.lcm(r.denom());
    }
    for c in num.coeffs().iter().chain(den.coeffs()) {
        let r = c.as_rational().unwrap() * Q::from_integer(l.clone());
        g = g.gcd(&r.to_integer());
    }
    if g.is_zero() {
        return None;
    }
    Some(Q::new(l, g))
}

pub fn format_ratfun(f: &RationalFunction, var: &str) -> String {
    if f.is_polynomial() {
        return format_poly(f.num(), var, true);
    }
    let (num, den) = match clearing_scale(f.num(), f.den()) {
        Some(s) => {
            let s = FieldElement::from(s);
            (f.num().scale(&s), f.den().scale(&s))
        }
        None => (f.num().clone(), f.den().clone()),
    };
    let nt = poly_terms(&num, var);
    let dt = poly_terms(&den, var);
    let ns = join_terms(&nt, true);
    let ds = join_terms(&dt, true);
    let ns = if nt.len() > 1 { format!("({ns})") } else { ns };
    let atom = dt.len() == 1 && !dt[0].0 && (den.deg() == 0 || dt[0].1 == var);
    let ds = if atom { ds } else { format!("({ds})") };
    format!("{ns}/{ds}")
}

/// Numerator and denominator texts of `f` after clearing rational
/// denominators, each with its number of terms. The denominator is `None`
/// for polynomials.
pub fn ratfun_text_parts(f: &RationalFunction, var: &str) -> ((String, usize), Option<(String, usize)>) {
    let (num, den) = match clearing_scale(f.num(), f.den()) {
        Some(s) if !f.is_polynomial() => {
            let s = FieldElement::from(s);
            (f.num().scale(&s), f.den().scale(&s))
        }
        _ => (f.num().clone(), f.den().clone()),
    };
    let nt = poly_terms(&num, var);
    let ns = (join_terms(&nt, true), nt.len());
    if f.is_polynomial() {
        return (ns, None);
    }
    let dt = poly_terms(&den, var);
    (ns, Some((join_terms(&dt, true), dt.len())))
}

/// Formats `c·(text)` where `text` is already a valid factor.
pub fn scaled_text(c: &FieldElement, text: &str) -> String {
    if c.is_one() {
        return String::from(text);
    }
    if let Some(r) = c.as_rational() {
        if (-r).is_one() {
            return format!("-{text}");
        }
    }
    format!("{}*{}", fmt_factor(c), text)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => {
                if q.is_integer() && !q.is_negative() {
                    f.write_str(&fmt_q(q))
                } else {
                    write!(f, "({})", fmt_q(q))
                }
            }
            Expr::Sym(s) => f.write_str(s),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/({b})"),
            Expr::Pow { base, exp, .. } => write!(f, "({base})^({})", fmt_q(exp)),
            Expr::Call(Func::Log, a) => write!(f, "log({a})"),
            Expr::Call(Func::Arctan, a) => write!(f, "arctan({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qr;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn integrand_examples() {
        let s = parse_integrand("t/((t^2-1)*(t^2-4))^(1/2)", "t").unwrap();
        assert_eq!(s.f, RationalFunction::x());
        assert_eq!(s.r, Poly::from_ints(&[4, 0, -5, 0, 1]));
        assert_eq!(s.exponent, Exponent::Half);
        assert_eq!(s.radicand_text, "(t^2-1)*(t^2-4)");
        let s = parse_integrand("1/(t^3-1)^(1/3)", "t").unwrap();
        assert_eq!(s.f, RationalFunction::one());
        assert_eq!(s.exponent, Exponent::Third);
        assert_eq!(s.radicand_text, "t^3-1");
        let s = parse_integrand("t^2/(t^3-1)^(1/3)", "t").unwrap();
        assert_eq!(s.f, rf(&[0, 0, 1], &[1]));
        let s = parse_integrand("t*(t^3-1)^(-2/3)", "t").unwrap();
        assert_eq!(s.exponent, Exponent::TwoThirds);
        let s = parse_integrand("1/sqrt(t^3 - t)", "t").unwrap();
        assert_eq!(s.radicand_text, "t^3-t");
    }

    #[test]
    fn integrand_errors() {
        assert_eq!(parse_integrand("t/(t^2+1)", "t"), Err(Error::NotARadicalIntegrand));
        assert_eq!(parse_integrand("1/((t^2-1)^(1/2)*(t^2-4)^(1/2))", "t"), Err(Error::Ambiguous));
        assert!(matches!(parse_integrand("1/(t^3-1)^(1/4)", "t"), Err(Error::UnsupportedExponent(_))));
        assert!(matches!(parse_integrand("(t^3-1)^(1/3)", "t"), Err(Error::UnsupportedExponent(_))));
        assert_eq!(parse_integrand("1/((t-1)^2*(t+1))^(1/2)", "t"), Err(Error::NotSquarefree));
        assert!(matches!(parse_integrand("(1+sqrt(t))/(t^3-1)^(1/3)", "t"), Err(Error::UnsupportedIntegrand(_))));
        assert!(matches!(parse_integrand("1/(t^3-1)^(1/3) +", "t"), Err(Error::Parse { .. })));
    }

    #[test]
    fn exponent_grammar() {
        let e = parse_expr("t^2/3").unwrap();
        assert!(matches!(e, Expr::Pow { ref exp, .. } if *exp == qr(2, 3)));
        let e = parse_expr("t^2/(t+1)").unwrap();
        assert!(matches!(e, Expr::Div(..)));
    }

    #[test]
    fn ratfun_printing() {
        assert_eq!(format_ratfun(&rf(&[2, 0, 1], &[0, 2]), "t"), "(t^2 + 2)/(2*t)");
        assert_eq!(format_ratfun(&rf(&[0, 1], &[1, 0, 0, -1]), "w"), "-w/(w^3 - 1)");
        assert_eq!(format_ratfun(&rf(&[1], &[0, 1]), "x"), "1/x");
        assert_eq!(format_poly(&Poly::from_ints(&[-1, 0, 0, 1]), "t", false), "t^3-1");
        let f = rf(&[1, 2], &[3]);
        assert_eq!(format_ratfun(&f, "t"), "(2/3)*t + 1/3");
        assert_eq!(parse_ratfun(&format_ratfun(&f, "t"), "t").unwrap(), f);
    }

    #[test]
    fn spec_round_trip() {
        let s = parse_integrand("(t^2 + 2)/(2*t*(t^4-5*t^2+4)^(1/2))", "t").unwrap();
        let again = parse_integrand(&s.to_string(), "t").unwrap();
        assert_eq!(s, again);
    }
}
