//! Integration of rational functions: Hermite reduction for the rational
//! part, Rothstein–Trager for the logarithmic part.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::algebra::QuotientRing;
use crate::error::{Error, Result};
use crate::expr::{format_poly, format_ratfun};
use crate::field::{fmt_factor, FieldElement, FieldTower};
use crate::num::{q_sqrt, Q};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::roots::{cmp_embedding, split_with_quadratics};

/// Quadratic generators the logarithmic part may adjoin per integral.
const MAX_NEW_GENERATORS: usize = 2;

/// `coef · log(arg)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogTerm {
    pub coef: FieldElement,
    pub arg: Poly,
}

/// `coef · sqrt(s) · arctan(sqrt(s) · arg)` with `s > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtanTerm {
    pub coef: FieldElement,
    pub s: Q,
    pub arg: RationalFunction,
}

/// `Σ_{P(c)=0} c · log(V(c, x))` for a resolvent factor `P` whose roots were
/// not adjoined.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSumTerm {
    pub resolvent: Poly,
    /// Coefficients of `V` in `x`, each a polynomial in `c` reduced modulo
    /// the resolvent. `None` if the gcd could not be formed.
    pub arg: Option<Vec<Poly>>,
    /// `Σ c · V_x / V` as a rational function of `x`.
    pub derivative: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RationalAntiderivative {
    pub rational: RationalFunction,
    pub logs: Vec<LogTerm>,
    pub atans: Vec<AtanTerm>,
    pub root_sums: Vec<RootSumTerm>,
}

impl AtanTerm {
    pub fn derivative(&self) -> RationalFunction {
        let s = FieldElement::from(self.s.clone());
        let den = &RationalFunction::one() + &(&self.arg * &self.arg).scale(&s);
        (&self.arg.derivative() * &den.inv()).scale(&(&self.coef * &s))
    }
}

impl RationalAntiderivative {
    pub fn is_partial(&self) -> bool {
        !self.root_sums.is_empty()
    }

    pub fn derivative(&self) -> RationalFunction {
        let mut d = self.rational.derivative();
        for l in &self.logs {
            let ld = RationalFunction::new(l.arg.derivative(), l.arg.clone()).expect("log argument is non-zero");
            d = &d + &ld.scale(&l.coef);
        }
        for a in &self.atans {
            d = &d + &a.derivative();
        }
        for r in &self.root_sums {
            d = &d + &r.derivative;
        }
        d
    }

    pub fn to_text(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !self.rational.is_zero() {
            parts.push(format_ratfun(&self.rational, var));
        }
        for l in &self.logs {
            parts.push(coef_text(&l.coef, &format!("log({})", format_poly(&l.arg, var, true))));
        }
        for a in &self.atans {
            parts.push(atan_text(a, &format_cleared(&a.arg, var)));
        }
        for r in &self.root_sums {
            parts.push(root_sum_text(r, var));
        }
        join_sum(&parts)
    }

    /// Folds pairs of complex-conjugate logarithms into a real logarithm and
    /// an arctangent. Pairs that do not fit the pattern are kept as they are.
    pub fn real_form(&self) -> RationalAntiderivative {
        let mut out = RationalAntiderivative {
            rational: self.rational.clone(),
            logs: Vec::new(),
            atans: self.atans.clone(),
            root_sums: self.root_sums.clone(),
        };
        let mut used = vec![false; self.logs.len()];
        for i in 0..self.logs.len() {
            if used[i] {
                continue;
            }
            let mut folded = false;
            for j in i + 1..self.logs.len() {
                if used[j] {
                    continue;
                }
                if let Some((l, a)) = fold_pair(&self.logs[i], &self.logs[j]) {
                    used[i] = true;
                    used[j] = true;
                    out.logs.extend(l);
                    out.atans.extend(a);
                    folded = true;
                    break;
                }
            }
            if !folded {
                used[i] = true;
                out.logs.push(self.logs[i].clone());
            }
        }
        out
    }
}

/// Prefixes `body` with a coefficient, producing a signed summand.
pub(crate) fn coef_text(c: &FieldElement, body: &str) -> String {
    if c.is_one() {
        return String::from(body);
    }
    if let Some(r) = c.as_rational() {
        if (-r).is_one() {
            return format!("-{body}");
        }
        if r.is_negative() {
            return format!("-{}*{body}", fmt_factor(&FieldElement::from(-r)));
        }
    }
    format!("{}*{body}", fmt_factor(c))
}

pub(crate) fn join_sum(parts: &[String]) -> String {
    if parts.is_empty() {
        return String::from("0");
    }
    let mut s = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                s.push_str(" - ");
                s.push_str(rest);
            }
            None => {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
    }
    s
}

/// `sqrt(s)` as text, or `None` when `s` is a perfect square.
fn sqrt_text(s: &Q) -> Option<String> {
    if q_sqrt(s).is_some() {
        None
    } else {
        Some(format!("sqrt({})", crate::num::fmt_q(s)))
    }
}

/// Prints an arctangent term whose argument (without the `sqrt(s)` factor)
/// is already formatted as `arg`.
pub(crate) fn atan_text(a: &AtanTerm, arg: &str) -> String {
    let (coef, root) = match q_sqrt(&a.s) {
        Some(r) => (&a.coef * &FieldElement::from(r), None),
        None => (a.coef.clone(), sqrt_text(&a.s)),
    };
    let wrapped = if has_top_level_sum(arg) { format!("({arg})") } else { String::from(arg) };
    let inner = match (&root, q_sqrt(&a.s)) {
        (Some(r), _) => format!("{r}*{wrapped}"),
        (None, Some(r)) if !r.is_one() => format!("{}*{wrapped}", fmt_factor(&FieldElement::from(r))),
        _ => String::from(arg),
    };
    let body = match &root {
        Some(r) => format!("{r}*arctan({inner})"),
        None => format!("arctan({inner})"),
    };
    coef_text(&coef, &body)
}

pub(crate) fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// Formats a rational function, pulling a common rational denominator out of
/// polynomials: `(2*w + 1)/3` rather than `(2/3)*w + 1/3`.
pub(crate) fn format_cleared(f: &RationalFunction, var: &str) -> String {
    if f.is_polynomial() {
        let mut l = num_bigint::BigInt::one();
        for c in f.num().coeffs() {
            match c.as_rational() {
                Some(r) => l = num_integer::Integer::lcm(&l, r.denom()),
                None => return format_ratfun(f, var),
            }
        }
        if !l.is_one() && f.num().coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            let scaled = f.num().scale(&FieldElement::from(Q::from_integer(l.clone())));
            return format!("({})/{}", format_poly(&scaled, var, true), l);
        }
    }
    format_ratfun(f, var)
}

fn root_sum_text(r: &RootSumTerm, var: &str) -> String {
    let p = format_poly(&r.resolvent, "_c", true);
    match &r.arg {
        Some(v) => {
            let mut terms: Vec<String> = Vec::new();
            for (k, c) in v.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let ct = format_poly(c, "_c", true);
                let ct = if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 { format!("({ct})") } else { ct };
                let mono = match k {
                    0 => String::new(),
                    1 => String::from(var),
                    _ => format!("{var}^{k}"),
                };
                terms.push(match (k, ct.as_str()) {
                    (0, _) => ct,
                    (_, "1") => mono,
                    (_, "-1") => format!("-{mono}"),
                    _ => format!("{ct}*{mono}"),
                });
            }
            format!("sum(_c*log({}), _c = RootOf({p}))", join_sum(&terms))
        }
        None => format!("sum(_c*log(V(_c, {var})), _c = RootOf({p}))"),
    }
}

fn fold_pair(x: &LogTerm, y: &LogTerm) -> Option<(Vec<LogTerm>, Vec<AtanTerm>)> {
    let tower = FieldTower::of(x.arg.coeffs().iter().chain(y.arg.coeffs()).chain([&x.coef, &y.coef])).ok()?;
    for g in tower.generators().into_iter().rev() {
        if g.index() != 2 {
            continue;
        }
        let Some(d) = g.radicand().as_rational().cloned() else { continue };
        if !d.is_negative() {
            continue;
        }
        if x.coef.conj_at(&g) != y.coef || x.arg.conj_at(&g) != y.arg {
            continue;
        }
        let ge = FieldTower::generator_element(&g);
        let two = FieldElement::from(2);
        let a = (&x.coef + &y.coef) / two.clone();
        let b = (&x.coef - &y.coef) / (&two * &ge);
        let p = (&x.arg + &y.arg).scale(&(FieldElement::one() / two.clone()));
        let qp = (&x.arg - &y.arg).scale(&(&two * &ge).inv());
        let real = |e: &FieldElement| e.approx().im.abs() < 1e-12;
        if !real(&a) || !real(&b) || !p.coeffs().iter().chain(qp.coeffs()).all(real) {
            continue;
        }
        let mut logs = Vec::new();
        let mut atans = Vec::new();
        let de = FieldElement::from(d.clone());
        let norm = &(&p * &p) - &(&qp * &qp).scale(&de);
        if !a.is_zero() {
            logs.push(LogTerm { coef: a.clone(), arg: norm });
        }
        if !b.is_zero() && !qp.is_zero() {
            let s = -d;
            let arg = RationalFunction::new(p.clone(), qp.scale(&FieldElement::from(s.clone()))).ok()?;
            let (coef, arg) = if arg.num().lc().approx().re < 0.0 { (-(&b * &two), -arg) } else { (&b * &two, arg) };
            atans.push(AtanTerm { coef, s, arg });
        }
        return Some((logs, atans));
    }
    None
}

/// Hermite reduction of `a/d` with `deg a < deg d`: returns `(g, h)` with
/// `a/d = g' + h` and `h` having a squarefree denominator.
pub fn hermite_reduce(a: &Poly, d: &Poly) -> Result<(RationalFunction, RationalFunction)> {
    let mut g = RationalFunction::zero();
    let mut a = a.clone();
    let mut d = d.monic();
    let parts = d.squarefree_decomposition();
    for (idx, v) in parts.iter().enumerate() {
        let i = idx + 1;
        if i < 2 || v.deg() <= 0 {
            continue;
        }
        let u = d.exact_div(&v.pow(i as u32))?;
        for j in (1..i).rev() {
            let jf = FieldElement::from(j as i64);
            let rhs = a.scale(&(-jf.clone()).inv());
            let (b, c) = Poly::diophantine(&(&u * &v.derivative()), v, &rhs)?;
            g = &g + &RationalFunction::new(b.clone(), v.pow(j as u32))?;
            a = &c.scale(&-jf) - &(&u * &b.derivative());
        }
        d = &u * v;
    }
    Ok((g, RationalFunction::new(a, d)?))
}

fn interpolate(xs: &[FieldElement], ys: &[FieldElement]) -> Poly {
    let n = xs.len();
    let mut coef: Vec<FieldElement> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = Poly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear(&xs[i])) + &Poly::constant(coef[i].clone());
    }
    p
}

/// `res_x(d, a − z·d')` as a polynomial in `z`.
fn rt_resolvent(a: &Poly, d: &Poly) -> Poly {
    let dd = d.derivative();
    let n = d.deg() as usize;
    let xs: Vec<FieldElement> = (0..=n as i64).map(FieldElement::from).collect();
    let ys: Vec<FieldElement> = xs.iter().map(|z| d.resultant(&(a - &dd.scale(z)))).collect();
    interpolate(&xs, &ys)
}

fn lpoly_trim(ring: &QuotientRing, mut a: Vec<Poly>) -> Vec<Poly> {
    for c in a.iter_mut() {
        *c = ring.reduce(c);
    }
    while a.last().is_some_and(Poly::is_zero) {
        a.pop();
    }
    a
}

fn lpoly_rem(ring: &QuotientRing, a: &[Poly], b: &[Poly]) -> Result<Vec<Poly>> {
    let inv = ring.inv(b.last().expect("non-zero divisor"))?;
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = ring.mul(r.last().unwrap(), &inv);
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &ring.mul(&f, bc);
        }
        r.pop();
        r = lpoly_trim(ring, r);
    }
    Ok(r)
}

/// Monic gcd over `K[c]/(P)`; fails if a leading coefficient is a zero
/// divisor.
fn lpoly_gcd(ring: &QuotientRing, a: Vec<Poly>, b: Vec<Poly>) -> Result<Vec<Poly>> {
    let (mut a, mut b) = (lpoly_trim(ring, a), lpoly_trim(ring, b));
    while !b.is_empty() {
        let r = lpoly_rem(ring, &a, &b)?;
        a = b;
        b = r;
    }
    let inv = ring.inv(a.last().ok_or(Error::DivisionByZero)?)?;
    Ok(a.iter().map(|c| ring.mul(c, &inv)).collect())
}

fn root_sum(a: &Poly, d: &Poly, p: &Poly) -> Result<RootSumTerm> {
    let dd = d.derivative();
    let ring_d = QuotientRing::new(d)?;
    let res = ring_d.mul(a, &ring_d.inv(&dd)?);
    let s = ring_d.eval(p, &res);
    let dp = if s.is_zero() { d.monic() } else { d.gcd(&s) };
    let rest = d.exact_div(&dp)?;
    let ring_p = QuotientRing::new(&dp)?;
    let ap = ring_p.mul(a, &ring_p.inv(&rest)?);
    let derivative = RationalFunction::new(ap, dp.clone())?;
    let ring_c = QuotientRing::new(p)?;
    let c = ring_c.gen();
    let lift = |q: &Poly| -> Vec<Poly> { q.coeffs().iter().map(|x| Poly::constant(x.clone())).collect() };
    let av = lift(a);
    let dv = lift(&dd);
    let n = av.len().max(dv.len());
    let mut w = Vec::with_capacity(n);
    for k in 0..n {
        let ak = av.get(k).cloned().unwrap_or_else(Poly::zero);
        let dk = dv.get(k).cloned().unwrap_or_else(Poly::zero);
        w.push(&ak - &ring_c.mul(&c, &dk));
    }
    let arg = lpoly_gcd(&ring_c, lift(&dp), w).ok();
    Ok(RootSumTerm { resolvent: p.monic(), arg, derivative })
}

/// Exact antiderivative of `f`. The returned tower extends `tower` by the
/// residues of the logarithmic part that lie in quadratic extensions.
pub fn integrate_rational(f: &RationalFunction, tower: &FieldTower) -> Result<(FieldTower, RationalAntiderivative)> {
    let tower = tower.join(&f.tower()?)?;
    let mut out = RationalAntiderivative::default();
    if f.is_zero() {
        return Ok((tower, out));
    }
    let (q, r) = f.num().divrem(f.den())?;
    let q_int = Poly::from_coeffs(
        core::iter::once(FieldElement::zero())
            .chain(q.coeffs().iter().enumerate().map(|(i, c)| c / &FieldElement::from(i as i64 + 1)))
            .collect(),
    );
    out.rational = RationalFunction::from(q_int);
    if r.is_zero() {
        return Ok((tower, out));
    }
    let (g, h) = hermite_reduce(&r, f.den())?;
    out.rational = &out.rational + &g;
    if h.is_zero() {
        return Ok((tower, out));
    }
    let a = h.num().clone();
    let d = h.den().clone();
    let res = rt_resolvent(&a, &d).squarefree_part();
    let (t, mut roots, stuck) = split_with_quadratics(&res, &tower, MAX_NEW_GENERATORS)?;
    roots.sort_by(|x, y| cmp_embedding(x.approx(), y.approx()));
    let dd = d.derivative();
    for c in roots {
        let v = d.gcd(&(&a - &dd.scale(&c)));
        if v.deg() > 0 {
            out.logs.push(LogTerm { coef: c, arg: v });
        }
    }
    if stuck.deg() > 0 {
        out.root_sums.push(root_sum(&a, &d, &stuck)?);
    }
    Ok((t, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn round_trip(f: &RationalFunction) -> RationalAntiderivative {
        let (_, a) = integrate_rational(f, &FieldTower::rationals()).unwrap();
        assert_eq!(&a.derivative(), f, "integrating {}", f.to_text("x"));
        a
    }

    #[test]
    fn polynomial_and_hermite() {
        let a = round_trip(&rf(&[0, 1], &[1]));
        assert_eq!(a.rational, rf(&[0, 0, 1], &[2]));
        assert!(a.logs.is_empty());
        round_trip(&rf(&[1], &[1, 2, 1]));
        round_trip(&rf(&[3, 0, 1, 5], &[0, 0, 1, -2, 1]));
        round_trip(&rf(&[1, 1], &[1, 0, 2, 0, 1]));
    }

    #[test]
    fn partial_fractions() {
        let a = round_trip(&rf(&[1], &[-1, 0, 1]));
        assert_eq!(a.logs.len(), 2);
        assert_eq!(a.to_text("x"), "(1/2)*log(x - 1) - (1/2)*log(x + 1)");
    }

    #[test]
    fn cube_root_of_unity_denominator() {
        let f = rf(&[0, 1], &[1, 0, 0, -1]);
        let a = round_trip(&f);
        assert_eq!(a.logs.len(), 3);
        let r = a.real_form();
        assert_eq!(r.derivative(), f);
        assert_eq!(r.logs.len(), 2);
        assert_eq!(r.atans.len(), 1);
        assert_eq!(r.to_text("w"), "(1/6)*log(w^2 + w + 1) - (1/3)*log(w - 1) - (1/3)*sqrt(3)*arctan(sqrt(3)*(2*w + 1)/3)");
    }

    #[test]
    fn unsplittable_residues_give_root_sum() {
        let f = rf(&[1], &[-2, 0, 0, 1]);
        let (_, a) = integrate_rational(&f, &FieldTower::rationals()).unwrap();
        assert!(a.is_partial());
        assert_eq!(a.derivative(), f);
        assert!(a.root_sums[0].arg.is_some());
    }
}
