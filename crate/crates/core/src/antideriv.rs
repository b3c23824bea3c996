//! Antiderivatives over the radical algebra: back-substitution of rational
//! antiderivatives, differentiation, verification and printing.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::{AlgElem, RadicalAlgebra};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, ratfun_text_parts, Expr, Func, IntegrandSpec};
use crate::field::{fmt_factor, FieldElement, FieldTower};
use crate::lazy::{Lazy, LazyRing};
use crate::num::{q_cbrt, Q};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::ratint::{atan_text, coef_text, format_cleared, join_sum, AtanTerm, RationalAntiderivative};

#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Alg(AlgElem),
    Log { coef: FieldElement, arg: AlgElem },
    /// `coef · sqrt(s) · arctan(sqrt(s) · arg)`.
    Atan { coef: FieldElement, s: Q, arg: AlgElem },
    /// An unevaluated sum over resolvent roots; only its derivative is
    /// available in closed form.
    RootSum { text: String, derivative: AlgElem },
}

/// `c^(-m/n) · prefactor · Σ terms`, where the terms live in
/// `K(t)[Y]/(Y^n − R/c)` and `Y = y / c^(1/n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub algebra: RadicalAlgebra,
    pub c: FieldElement,
    /// `c^(1/n)` when it lies in the field.
    pub root: Option<FieldElement>,
    pub m: u32,
    pub prefactor: FieldElement,
    pub terms: Vec<Term>,
    /// The piece differentiates to `target · Y^(-m)` (up to the unit).
    pub target: RationalFunction,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntiderivativeExpr {
    pub var: String,
    pub radicand_text: String,
    pub pieces: Vec<Piece>,
    /// Integrals left unevaluated, already formatted.
    pub remainder: Vec<String>,
}

/// Maps a rational antiderivative in `x` through `x ↦ sub`.
pub fn back_substitute(ra: &RationalAntiderivative, alg: &RadicalAlgebra, sub: &AlgElem, sub_text: &str) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    if !ra.rational.is_zero() {
        out.push(Term::Alg(alg.eval_ratfun(&ra.rational, sub)?));
    }
    for l in &ra.logs {
        out.push(Term::Log { coef: l.coef.clone(), arg: alg.eval_poly(&l.arg, sub) });
    }
    for a in &ra.atans {
        out.push(Term::Atan { coef: a.coef.clone(), s: a.s.clone(), arg: alg.eval_ratfun(&a.arg, sub)? });
    }
    if !ra.root_sums.is_empty() {
        let ds = alg.derivative(sub);
        for r in &ra.root_sums {
            let single = RationalAntiderivative { root_sums: alloc::vec![r.clone()], ..Default::default() };
            let text = single.to_text("\u{1}").replace('\u{1}', &format!("({sub_text})"));
            let d = alg.mul(&alg.eval_ratfun(&r.derivative, sub)?, &ds);
            out.push(Term::RootSum { text, derivative: d });
        }
    }
    Ok(out)
}

impl Term {
    pub fn derivative(&self, alg: &RadicalAlgebra) -> Result<AlgElem> {
        Ok(match self {
            Term::Alg(x) => alg.derivative(x),
            Term::Log { coef, arg } => alg.div(&alg.derivative(arg), arg)?.scale_const(coef),
            Term::Atan { coef, s, arg } => {
                let s = FieldElement::from(s.clone());
                let den = alg.one().add(&alg.mul(arg, arg).scale_const(&s));
                alg.div(&alg.derivative(arg), &den)?.scale_const(&(coef * &s))
            }
            Term::RootSum { derivative, .. } => derivative.clone(),
        })
    }

    fn scaled(&self, k: &FieldElement) -> Term {
        match self {
            Term::Alg(x) => Term::Alg(x.scale_const(k)),
            Term::Log { coef, arg } => Term::Log { coef: coef * k, arg: arg.clone() },
            Term::Atan { coef, s, arg } => Term::Atan { coef: coef * k, s: s.clone(), arg: arg.clone() },
            Term::RootSum { text, derivative } => {
                let text = if k.is_one() { text.clone() } else { format!("{}*{text}", fmt_factor(k)) };
                Term::RootSum { text, derivative: derivative.scale_const(k) }
            }
        }
    }
}

impl Piece {
    pub fn derivative(&self) -> Result<AlgElem> {
        let mut acc = self.algebra.zero();
        for t in &self.terms {
            acc = acc.add(&t.derivative(&self.algebra)?);
        }
        Ok(acc.scale_const(&self.prefactor))
    }

    /// `d/dt(piece) − target·Y^(-m)`; zero iff the piece is correct.
    pub fn discrepancy(&self) -> Result<AlgElem> {
        let want = self.algebra.y_pow(-(self.m as i64)).scale(&self.target);
        Ok(self.derivative()?.sub(&want))
    }

    pub fn verify(&self) -> Result<bool> {
        match LazyRing::new(&self.algebra) {
            Some(ring) => Ok(ring.is_zero(&self.lazy_discrepancy(&ring)?)),
            None => Ok(self.discrepancy()?.is_zero()),
        }
    }

    fn lazy_discrepancy(&self, ring: &LazyRing) -> Result<Lazy> {
        let mut acc = ring.zero();
        for t in &self.terms {
            let d = match t {
                Term::Alg(x) => ring.derivative(&ring.lift(x)),
                Term::Log { coef, arg } => {
                    let a = ring.lift(arg);
                    ring.scale(&ring.div(&ring.derivative(&a), &a).ok_or(Error::DivisionByZero)?, coef)
                }
                Term::Atan { coef, s, arg } => {
                    let s = FieldElement::from(s.clone());
                    let a = ring.lift(arg);
                    let one = ring.monomial(&RationalFunction::one(), 0);
                    let den = ring.add(&one, &ring.scale(&ring.mul(&a, &a), &s));
                    ring.scale(&ring.div(&ring.derivative(&a), &den).ok_or(Error::DivisionByZero)?, &(coef * &s))
                }
                Term::RootSum { derivative, .. } => ring.lift(derivative),
            };
            acc = ring.add(&acc, &d);
        }
        let want = ring.monomial(&self.target, -(self.m as i64));
        Ok(ring.sub(&ring.scale(&acc, &self.prefactor), &want))
    }

    pub fn is_partial(&self) -> bool {
        self.terms.iter().any(|t| matches!(t, Term::RootSum { .. }))
    }

    fn printer<'a>(&'a self, var: &'a str, radicand: &'a str) -> Printer<'a> {
        Printer { var, radicand, n: self.algebra.index(), c: &self.c, root: self.root.as_ref() }
    }

    /// Signed summands of the printed form.
    pub fn summands(&self, var: &str, radicand: &str) -> Vec<String> {
        let p = self.printer(var, radicand);
        let m = self.m as usize;
        let mut out = Vec::new();
        for t in &self.terms {
            match t {
                Term::Alg(x) => {
                    let x = match x.coeff(0).as_constant() {
                        Some(k) if !k.is_zero() => x.sub(&self.algebra.base(RationalFunction::constant(k))),
                        _ => x.clone(),
                    };
                    out.extend(p.components(&x.scale_const(&self.prefactor), m))
                }
                _ => match p.unit_text(m) {
                    (k, None) => out.push(p.term(&t.scaled(&(&self.prefactor * &k)))),
                    (k, Some(u)) => out.push(prefix(&u, &p.term(&t.scaled(&(&self.prefactor * &k))))),
                },
            }
        }
        out
    }
}

fn prefix(u: &str, s: &str) -> String {
    match s.strip_prefix('-') {
        Some(rest) => format!("-{u}*{rest}"),
        None => format!("{u}*{s}"),
    }
}

fn strip_outer(s: &str) -> &str {
    if s.starts_with('(') && s.ends_with(')') {
        let inner = &s[1..s.len() - 1];
        let mut depth = 0i32;
        for ch in inner.chars() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return s;
                    }
                }
                _ => {}
            }
        }
        return inner;
    }
    s
}

impl AntiderivativeExpr {
    pub fn is_partial(&self) -> bool {
        self.pieces.iter().any(Piece::is_partial)
    }

    pub fn is_complete(&self) -> bool {
        self.remainder.is_empty() && !self.is_partial()
    }

    pub fn verify(&self) -> Result<bool> {
        for p in &self.pieces {
            if !p.verify()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for p in &self.pieces {
            parts.extend(p.summands(&self.var, &self.radicand_text));
        }
        parts.extend(self.remainder.iter().cloned());
        join_sum(&parts)
    }
}

impl core::fmt::Display for AntiderivativeExpr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Printer<'a> {
    var: &'a str,
    radicand: &'a str,
    n: usize,
    c: &'a FieldElement,
    root: Option<&'a FieldElement>,
}

impl Printer<'_> {
    /// `c^(-e/n)` as a field factor times an optional symbolic unit.
    fn unit_text(&self, e: usize) -> (FieldElement, Option<String>) {
        if let Some(r) = self.root {
            return (r.pow(-(e as i64)), None);
        }
        if self.c.is_one() {
            return (FieldElement::one(), None);
        }
        let (q, r) = (e / self.n, e % self.n);
        let k = self.c.pow(-(q as i64));
        if r == 0 {
            (k, None)
        } else {
            (k, Some(format!("({})^(-{r}/{})", strip_outer(&self.c.to_string()), self.n)))
        }
    }

    /// `g · rad` for a rational function `g`.
    fn scaled_radical(&self, g: &RationalFunction, rad: &str) -> String {
        if let Some(k) = g.as_constant() {
            return coef_text(&k, rad);
        }
        let ((ns, nc), den) = ratfun_text_parts(g, self.var);
        let head = if nc == 1 {
            if ns == "1" {
                String::from(rad)
            } else if ns == "-1" {
                format!("-{rad}")
            } else {
                format!("{ns}*{rad}")
            }
        } else {
            format!("({ns})*{rad}")
        };
        match den {
            None => head,
            Some((ds, dc)) => {
                let ds = if dc > 1 || ds.contains('*') { format!("({ds})") } else { ds };
                format!("{head}/{ds}")
            }
        }
    }

    /// Signed summands of `x · c^(-outer/n)` written in `y = c^(1/n) Y`.
    fn components(&self, x: &AlgElem, outer: usize) -> Vec<String> {
        let mut parts = Vec::new();
        for i in 0..self.n {
            let g = x.coeff(i);
            if g.is_zero() {
                continue;
            }
            let (k, unit) = self.unit_text(outer + i);
            let g = g.scale(&k);
            let mut rad: Vec<String> = Vec::new();
            rad.extend(unit);
            if i > 0 {
                rad.push(format!("({})^({i}/{})", self.radicand, self.n));
            }
            if rad.is_empty() {
                parts.push(format_cleared(&g, self.var));
            } else {
                parts.push(self.scaled_radical(&g, &rad.join("*")));
            }
        }
        parts
    }

    fn alg(&self, x: &AlgElem) -> String {
        join_sum(&self.components(x, 0))
    }

    fn term(&self, t: &Term) -> String {
        match t {
            Term::Alg(x) => {
                let parts = self.components(x, 0);
                if parts.len() == 1 {
                    parts[0].clone()
                } else {
                    format!("({})", join_sum(&parts))
                }
            }
            Term::Log { coef, arg } => coef_text(coef, &format!("log({})", self.alg(arg))),
            Term::Atan { coef, s, arg } => {
                let a = AtanTerm { coef: coef.clone(), s: s.clone(), arg: RationalFunction::zero() };
                atan_text(&a, &self.alg(arg))
            }
            Term::RootSum { text, .. } => text.clone(),
        }
    }
}

/// Formats an algebra element with `Y = y` (radicand scale 1).
pub fn format_alg(x: &AlgElem, n: usize, var: &str, radicand: &str) -> String {
    let one = FieldElement::one();
    Printer { var, radicand, n, c: &one, root: Some(&one) }.alg(x)
}

/// Formats `x` written in `Y = y / c^(1/n)`.
pub(crate) fn unit_alg_text(x: &AlgElem, n: usize, var: &str, radicand: &str, c: &FieldElement, root: Option<&FieldElement>) -> String {
    Printer { var, radicand, n, c, root }.alg(x)
}

/// Result of checking a textual antiderivative.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub verified: bool,
    pub discrepancy: AlgElem,
    pub discrepancy_text: String,
}

enum Val {
    Alg(AlgElem),
    Trans(AlgElem),
}

struct TextEval<'a> {
    tower: FieldTower,
    alg: RadicalAlgebra,
    spec: &'a IntegrandSpec,
}

fn unsupported(msg: &str) -> Error {
    Error::UnsupportedExpression(String::from(msg))
}

impl TextEval<'_> {
    fn d(&self, v: &Val) -> AlgElem {
        match v {
            Val::Alg(x) => self.alg.derivative(x),
            Val::Trans(d) => d.clone(),
        }
    }

    fn constant_of(&self, x: &AlgElem) -> Option<FieldElement> {
        x.as_base().and_then(RationalFunction::as_constant)
    }

    fn constant_root(&mut self, a: &FieldElement, n: i64) -> Result<FieldElement> {
        if n == 2 {
            let (t, r) = self.tower.join(&FieldTower::of([a])?)?.adjoin_sqrt(a)?;
            self.tower = t;
            return Ok(r);
        }
        let q = a.as_rational().ok_or_else(|| unsupported("cube root of an irrational constant"))?;
        if let Some(r) = q_cbrt(q) {
            return Ok(FieldElement::from(r));
        }
        let (t, r) = self.tower.adjoin_cbrt(q)?;
        self.tower = t;
        Ok(r)
    }

    fn eval(&mut self, e: &Expr) -> Result<Val> {
        let alg = self.alg.clone();
        Ok(match e {
            Expr::Num(q) => Val::Alg(alg.base(RationalFunction::constant(FieldElement::from(q.clone())))),
            Expr::Sym(s) if *s == self.spec.var => Val::Alg(alg.base(RationalFunction::x())),
            Expr::Sym(s) => return Err(unsupported(&format!("unknown symbol {s}"))),
            Expr::Neg(a) => match self.eval(a)? {
                Val::Alg(x) => Val::Alg(x.neg()),
                Val::Trans(d) => Val::Trans(d.neg()),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let sub = matches!(e, Expr::Sub(..));
                match (&x, &y) {
                    (Val::Alg(p), Val::Alg(q)) => Val::Alg(if sub { p.sub(q) } else { p.add(q) }),
                    _ => {
                        let (dp, dq) = (self.d(&x), self.d(&y));
                        Val::Trans(if sub { dp.sub(&dq) } else { dp.add(&dq) })
                    }
                }
            }
            Expr::Mul(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                match (x, y) {
                    (Val::Alg(p), Val::Alg(q)) => Val::Alg(alg.mul(&p, &q)),
                    (Val::Alg(p), Val::Trans(d)) | (Val::Trans(d), Val::Alg(p)) => {
                        let k = self.constant_of(&p).ok_or_else(|| unsupported("product of a transcendental term with a non-constant"))?;
                        Val::Trans(d.scale_const(&k))
                    }
                    _ => return Err(unsupported("product of transcendental terms")),
                }
            }
            Expr::Div(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                match (x, y) {
                    (Val::Alg(p), Val::Alg(q)) => Val::Alg(alg.div(&p, &q)?),
                    (Val::Trans(d), Val::Alg(q)) => {
                        let k = self.constant_of(&q).ok_or_else(|| unsupported("transcendental term divided by a non-constant"))?;
                        Val::Trans(d.scale_const(&k.checked_inv()?))
                    }
                    _ => return Err(unsupported("division by a transcendental term")),
                }
            }
            Expr::Pow { base, exp, .. } => {
                let Val::Alg(b) = self.eval(base)? else {
                    return Err(unsupported("power of a transcendental term"));
                };
                let k: i64 = exp.numer().try_into().map_err(|_| unsupported("exponent too large"))?;
                let n: i64 = exp.denom().try_into().map_err(|_| unsupported("exponent too large"))?;
                if n == 1 {
                    return Ok(Val::Alg(alg.pow(&b, k)?));
                }
                if n > 3 {
                    return Err(unsupported("radical index above 3"));
                }
                if let Some(a) = self.constant_of(&b) {
                    let r = self.constant_root(&a, n)?;
                    return Ok(Val::Alg(alg.base(RationalFunction::constant(r.pow(k)))));
                }
                let r = RationalFunction::from(self.spec.r.clone());
                let ratio = b.as_base().map(|f| f.checked_div(&r)).transpose()?.and_then(|q| q.as_constant());
                match ratio {
                    Some(kappa) if n as usize == alg.index() => {
                        let y = alg.y_pow(k);
                        if kappa.is_one() {
                            Val::Alg(y)
                        } else {
                            let root = self.constant_root(&kappa, n)?.pow(k);
                            Val::Alg(y.scale_const(&root))
                        }
                    }
                    _ => return Err(unsupported("radical of something other than the integrand's radicand")),
                }
            }
            Expr::Call(f, a) => {
                let Val::Alg(u) = self.eval(a)? else {
                    return Err(unsupported("nested transcendental functions"));
                };
                let du = alg.derivative(&u);
                match f {
                    Func::Log => Val::Trans(alg.div(&du, &u)?),
                    Func::Arctan => {
                        let den = alg.one().add(&alg.mul(&u, &u));
                        Val::Trans(alg.div(&du, &den)?)
                    }
                }
            }
        })
    }
}

/// Differentiates `text` in `K(t)[y]/(y^n − R)` and compares against the
/// integrand `F·R^(-p)`.
pub fn verify_text(text: &str, spec: &IntegrandSpec) -> Result<VerifyReport> {
    let e = parse_expr(text)?;
    let n = spec.exponent.index() as usize;
    let alg = RadicalAlgebra::new(n, RationalFunction::from(spec.r.clone()))?;
    let tower = spec.f.tower()?.join(&spec.r.tower()?)?;
    let mut ev = TextEval { tower, alg: alg.clone(), spec };
    let v = ev.eval(&e)?;
    let d = ev.d(&v);
    let want = alg.y_pow(-(spec.exponent.power() as i64)).scale(&spec.f);
    let disc = d.sub(&want);
    let discrepancy_text = format_alg(&disc, n, &spec.var, &spec.radicand_text);
    Ok(VerifyReport { verified: disc.is_zero(), discrepancy: disc, discrepancy_text })
}

/// `p` as an element with `Y`-coefficient list.
pub fn alg_from_polys(alg: &RadicalAlgebra, c: &[Poly]) -> Result<AlgElem> {
    alg.from_coeffs(c.iter().cloned().map(RationalFunction::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_integrand;
    use crate::ratint::integrate_rational;

    #[test]
    fn known_closed_forms_verify() {
        let s = parse_integrand("t/((t^2-1)*(t^2-4))^(1/2)", "t").unwrap();
        let r = verify_text("(1/2)*log(2*t^2 - 5 + 2*((t^2-1)*(t^2-4))^(1/2))", &s).unwrap();
        assert!(r.verified);
        let s = parse_integrand("1/(t^3-1)^(1/3)", "t").unwrap();
        let good = "-(1/3)*log(1 - (t^3-1)^(1/3)/t) + (1/6)*log(1 + (t^3-1)^(1/3)/t + (t^3-1)^(2/3)/t^2) - (1/sqrt(3))*arctan((2*(t^3-1)^(1/3)/t + 1)/sqrt(3))";
        assert!(verify_text(good, &s).unwrap().verified);
        let bad = good.replace("(1/6)", "(1/5)");
        let r = verify_text(&bad, &s).unwrap();
        assert!(!r.verified);
        assert!(!r.discrepancy.is_zero());
        let s = parse_integrand("t^2/(t^3-1)^(1/3)", "t").unwrap();
        assert!(verify_text("(1/2)*(t^3-1)^(2/3)", &s).unwrap().verified);
    }

    #[test]
    fn back_substituted_j0() {
        // ∫ w/(1-w^3) dw with w = Y/t over Y^3 = t^3 - 1
        let r = RationalFunction::from(Poly::from_ints(&[-1, 0, 0, 1]));
        let alg = RadicalAlgebra::new(3, r).unwrap();
        let j0 = RationalFunction::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[1, 0, 0, -1])).unwrap();
        let (_, ra) = integrate_rational(&j0, &FieldTower::rationals()).unwrap();
        let w = alg.y_pow(1).scale(&RationalFunction::x().inv());
        let terms = back_substitute(&ra.real_form(), &alg, &w, "w").unwrap();
        let piece = Piece {
            algebra: alg,
            c: FieldElement::one(),
            root: Some(FieldElement::one()),
            m: 1,
            prefactor: FieldElement::one(),
            terms,
            target: RationalFunction::one(),
        };
        assert!(piece.verify().unwrap());
        let text = piece.summands("t", "t^3-1");
        let joined = join_sum(&text);
        let s = parse_integrand("1/(t^3-1)^(1/3)", "t").unwrap();
        assert!(verify_text(&joined, &s).unwrap().verified, "{joined}");
    }

    #[test]
    fn symbolic_unit_printing() {
        let r = RationalFunction::from(Poly::from_ints(&[-1, 0, 1]));
        let c = FieldElement::from(4);
        let alg = RadicalAlgebra::new(3, r.scale(&c.inv())).unwrap();
        let piece = Piece {
            algebra: alg.clone(),
            c,
            root: None,
            m: 1,
            prefactor: FieldElement::one(),
            terms: alloc::vec![Term::Alg(alg.y_pow(2).scale_const(&FieldElement::rational(1, 2)))],
            target: RationalFunction::zero(),
        };
        assert_eq!(piece.summands("t", "t^2-1"), alloc::vec![String::from("(1/8)*(t^2-1)^(2/3)")]);
    }
}
