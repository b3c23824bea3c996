//! Towers of pure radical extensions of the rationals.
//!
//! A tower is a chain `Q ⊂ Q(g1) ⊂ Q(g1, g2) ⊂ ...` where each generator
//! satisfies `g^2 = d` or `g^3 = d` with `d` in the field below. Elements are
//! stored recursively as coefficient vectors in the top generator they use, so
//! canonical form (and hence zero testing) is structural equality.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{cubefree_core, fmt_q, q, q_cbrt, q_sqrt, q_to_f64, squarefree_core, HpComplex, C64, Q};
use crate::poly::Poly;

pub const MAX_TOWER_HEIGHT: usize = 4;

#[derive(Debug)]
pub struct Generator {
    level: usize,
    index: u32,
    radicand: FieldElement,
    parent: Option<Arc<Generator>>,
    name: String,
    approx: C64,
}

impl Generator {
    pub fn level(&self) -> usize {
        self.level
    }

    /// 2 for square roots, 3 for cube roots.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn radicand(&self) -> &FieldElement {
        &self.radicand
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn approx(&self) -> C64 {
        self.approx
    }

    pub fn parent(&self) -> Option<&Arc<Generator>> {
        self.parent.as_ref()
    }

    fn approx_hp(&self, prec: u32) -> HpComplex {
        let r = self.radicand.approx_hp(prec);
        if self.index == 2 {
            r.sqrt()
        } else {
            r.cbrt()
        }
    }

    fn has_ancestor(self: &Arc<Self>, other: &Arc<Generator>) -> bool {
        let mut cur = Some(self);
        while let Some(g) = cur {
            if g.level < other.level {
                return false;
            }
            if Arc::ptr_eq(g, other) {
                return true;
            }
            cur = g.parent.as_ref();
        }
        false
    }
}

#[derive(Clone, Debug, Default)]
pub struct FieldTower {
    top: Option<Arc<Generator>>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        match (&self.top, &other.top) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl FieldTower {
    pub fn rationals() -> FieldTower {
        FieldTower { top: None }
    }

    pub fn height(&self) -> usize {
        self.top.as_ref().map_or(0, |g| g.level)
    }

    pub fn top(&self) -> Option<&Arc<Generator>> {
        self.top.as_ref()
    }

    /// Generators from the bottom of the tower to the top.
    pub fn generators(&self) -> Vec<Arc<Generator>> {
        let mut out = Vec::new();
        let mut cur = self.top.clone();
        while let Some(g) = cur {
            cur = g.parent.clone();
            out.push(g);
        }
        out.reverse();
        out
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        match (x.generator(), &self.top) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(g), Some(t)) => t.has_ancestor(g),
        }
    }

    pub fn extends(&self, other: &FieldTower) -> bool {
        match (&self.top, &other.top) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a.has_ancestor(b),
        }
    }

    /// The smaller of two towers when one contains the other.
    pub fn join(&self, other: &FieldTower) -> Result<FieldTower> {
        if self.extends(other) {
            Ok(self.clone())
        } else if other.extends(self) {
            Ok(other.clone())
        } else {
            Err(Error::invariant("elements from incompatible field towers"))
        }
    }

    /// Smallest tower of this chain that contains all `xs`.
    pub fn of<'a, I: IntoIterator<Item = &'a FieldElement>>(xs: I) -> Result<FieldTower> {
        let mut t = FieldTower::rationals();
        for x in xs {
            let tx = FieldTower { top: x.generator().cloned() };
            t = t.join(&tx)?;
        }
        Ok(t)
    }

    pub fn generator_element(g: &Arc<Generator>) -> FieldElement {
        let mut c = vec![FieldElement::zero(); g.index as usize];
        c[1] = FieldElement::one();
        FieldElement::Alg(g.clone(), c)
    }

    fn push(&self, index: u32, radicand: FieldElement, name: String) -> Result<(FieldTower, Arc<Generator>)> {
        if self.height() >= MAX_TOWER_HEIGHT {
            return Err(Error::Unsupported(format!(
                "field tower height would exceed {MAX_TOWER_HEIGHT}"
            )));
        }
        let r = radicand.approx();
        let approx = if index == 2 { r.sqrt() } else { r.cbrt() };
        let g = Arc::new(Generator {
            level: self.height() + 1,
            index,
            radicand,
            parent: self.top.clone(),
            name,
            approx,
        });
        Ok((FieldTower { top: Some(g.clone()) }, g))
    }

    /// Square root of `a` inside this tower, if one exists.
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if !self.contains(a) {
            return None;
        }
        let r = sqrt_in(a, self.top.as_ref())?;
        debug_assert!(&(&r * &r) == a);
        Some(r)
    }

    /// A root of `x^2 - a`, extending the tower by `sqrt(a)` when necessary.
    pub fn adjoin_sqrt(&self, a: &FieldElement) -> Result<(FieldTower, FieldElement)> {
        if let Some(s) = self.sqrt(a) {
            return Ok((self.clone(), s));
        }
        match a.as_rational() {
            Some(r) => {
                let (s, d) = squarefree_core(r);
                let (t, g) = self.push(2, FieldElement::from(Q::from_integer(d.clone())), format!("sqrt({d})"))?;
                Ok((t, FieldElement::from(s) * FieldTower::generator_element(&g)))
            }
            None => {
                let name = format!("sqrt({})", strip_parens(&a.to_string()));
                let (t, g) = self.push(2, a.clone(), name)?;
                Ok((t, FieldTower::generator_element(&g)))
            }
        }
    }

    /// A cube root of the rational `a`, extending the tower when necessary.
    pub fn adjoin_cbrt(&self, a: &Q) -> Result<(FieldTower, FieldElement)> {
        if let Some(r) = q_cbrt(a) {
            return Ok((self.clone(), FieldElement::from(r)));
        }
        if let Some(r) = self.cbrt_rational(a) {
            return Ok((self.clone(), r));
        }
        let (s, d) = cubefree_core(a);
        let (t, g) = self.push(3, FieldElement::from(Q::from_integer(d.clone())), format!("cbrt({d})"))?;
        Ok((t, FieldElement::from(s) * FieldTower::generator_element(&g)))
    }

    /// Cube root of a rational using products of the cube-root generators
    /// already present (Kummer check).
    fn cbrt_rational(&self, a: &Q) -> Option<FieldElement> {
        let cubes: Vec<(Arc<Generator>, Q)> = self
            .generators()
            .into_iter()
            .filter(|g| g.index == 3)
            .filter_map(|g| g.radicand.as_rational().cloned().map(|d| (g, d)))
            .collect();
        let n = cubes.len();
        if n == 0 || n > 4 {
            return None;
        }
        let total = 3usize.pow(n as u32);
        for mask in 1..total {
            let mut m = mask;
            let mut prod = a.clone();
            let mut exps = Vec::with_capacity(n);
            for (_, d) in &cubes {
                let e = m % 3;
                m /= 3;
                for _ in 0..e {
                    prod = &prod * d;
                }
                exps.push(e);
            }
            if let Some(r) = q_cbrt(&prod) {
                let mut x = FieldElement::from(r);
                for ((g, _), e) in cubes.iter().zip(exps) {
                    let ge = FieldTower::generator_element(g);
                    for _ in 0..e {
                        x = &x / &ge;
                    }
                }
                return Some(x);
            }
        }
        None
    }

    /// ω = (−1 + sqrt(−3))/2 as an element of this tower, if present.
    pub fn omega(&self) -> Option<FieldElement> {
        let s = self.sqrt(&FieldElement::from(q(-3)))?;
        let s = if s.approx().im < 0.0 { -s } else { s };
        Some((s - FieldElement::one()) / FieldElement::from(q(2)))
    }

    /// This tower extended (if needed) so that it contains ω.
    pub fn with_omega(&self) -> Result<(FieldTower, FieldElement)> {
        let (t, _) = self.adjoin_sqrt(&FieldElement::from(q(-3)))?;
        let w = t.omega().ok_or_else(|| Error::invariant("omega missing after adjoining sqrt(-3)"))?;
        Ok((t, w))
    }

    /// Adjoins a root of a monic-able polynomial of degree 1, 2 or pure
    /// degree 3. Returns the root closest to `hint` when several are
    /// available in the resulting tower.
    pub fn adjoin(&self, minpoly: &Poly, hint: Option<C64>) -> Result<(FieldTower, FieldElement)> {
        let p = minpoly.monic();
        let pick = |cands: Vec<FieldElement>| -> FieldElement {
            match hint {
                Some(h) => cands
                    .into_iter()
                    .min_by(|a, b| {
                        let da = (a.approx() - h).abs();
                        let db = (b.approx() - h).abs();
                        da.partial_cmp(&db).unwrap_or(core::cmp::Ordering::Equal)
                    })
                    .unwrap(),
                None => cands.into_iter().next().unwrap(),
            }
        };
        match p.degree() {
            Some(1) => Ok((self.clone(), -p.coeff(0))),
            Some(2) => {
                let half_b = p.coeff(1) / FieldElement::from(q(2));
                let disc = &half_b * &half_b - p.coeff(0);
                let (t, s) = self.adjoin_sqrt(&disc)?;
                Ok((t, pick(vec![&s - &half_b, -&s - &half_b])))
            }
            Some(3) => {
                if !p.coeff(2).is_zero() || !p.coeff(1).is_zero() {
                    return Err(Error::unsupported("general cubic generators"));
                }
                let a = -p.coeff(0);
                let r = a.as_rational().ok_or_else(|| Error::unsupported("cube roots of irrational numbers"))?;
                let (t, root) = self.adjoin_cbrt(r)?;
                let mut cands = vec![root.clone()];
                if let Some(w) = t.omega() {
                    cands.push(&root * &w);
                    cands.push(&root * &w * &w);
                }
                Ok((t, pick(cands)))
            }
            Some(_) => Err(Error::unsupported("generators of degree greater than 3")),
            None => Err(Error::invariant("cannot adjoin a root of the zero polynomial")),
        }
    }
}

fn strip_parens(s: &str) -> &str {
    if s.starts_with('(') && s.ends_with(')') {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

fn sqrt_in(a: &FieldElement, top: Option<&Arc<Generator>>) -> Option<FieldElement> {
    let g = match top {
        None => return a.as_rational().and_then(q_sqrt).map(FieldElement::from),
        Some(g) => g,
    };
    if a.is_zero() {
        return Some(FieldElement::zero());
    }
    let parent = g.parent.as_ref();
    let (c0, c1) = match a {
        FieldElement::Alg(h, c) if Arc::ptr_eq(h, g) => {
            if g.index != 2 {
                return None;
            }
            (c[0].clone(), c[1].clone())
        }
        _ => (a.clone(), FieldElement::zero()),
    };
    if c1.is_zero() {
        if let Some(r) = sqrt_in(&c0, parent) {
            return Some(r);
        }
        if g.index != 2 {
            return None;
        }
        let x = FieldTower::generator_element(g);
        return sqrt_in(&(&c0 / &g.radicand), parent).map(|r| r * x);
    }
    let n = &c0 * &c0 - &g.radicand * &c1 * &c1;
    let n_root = sqrt_in(&n, parent)?;
    let two = FieldElement::from(q(2));
    for s in [n_root.clone(), -n_root] {
        let h = (&c0 + &s) / &two;
        if let Some(u) = sqrt_in(&h, parent) {
            if u.is_zero() {
                continue;
            }
            let v = &c1 / (&two * &u);
            let cand = u + v * FieldTower::generator_element(g);
            if &(&cand * &cand) == a {
                return Some(cand);
            }
        }
    }
    None
}

/// Exact element of a [`FieldTower`].
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rat(Q),
    /// `Σ c_i g^i`, `c_i` below the level of `g`, some `c_i` with `i > 0` nonzero.
    Alg(Arc<Generator>, Vec<FieldElement>),
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => a == b,
            (FieldElement::Alg(g, a), FieldElement::Alg(h, b)) => Arc::ptr_eq(g, h) && a == b,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl Default for FieldElement {
    fn default() -> Self {
        FieldElement::zero()
    }
}

impl From<Q> for FieldElement {
    fn from(x: Q) -> Self {
        FieldElement::Rat(x)
    }
}

impl From<i64> for FieldElement {
    fn from(x: i64) -> Self {
        FieldElement::Rat(q(x))
    }
}

impl From<BigInt> for FieldElement {
    fn from(x: BigInt) -> Self {
        FieldElement::Rat(Q::from_integer(x))
    }
}

impl FieldElement {
    pub fn zero() -> FieldElement {
        FieldElement::Rat(Q::zero())
    }

    pub fn one() -> FieldElement {
        FieldElement::Rat(Q::one())
    }

    pub fn rational(n: i64, d: i64) -> FieldElement {
        FieldElement::Rat(crate::num::qr(n, d))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rat(x) if x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rat(x) if x.is_one())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            FieldElement::Rat(x) => Some(x),
            FieldElement::Alg(..) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldElement::Rat(_))
    }

    pub fn generator(&self) -> Option<&Arc<Generator>> {
        match self {
            FieldElement::Rat(_) => None,
            FieldElement::Alg(g, _) => Some(g),
        }
    }

    pub fn level(&self) -> usize {
        self.generator().map_or(0, |g| g.level)
    }

    fn make(g: Arc<Generator>, c: Vec<FieldElement>) -> FieldElement {
        if c[1..].iter().all(|x| x.is_zero()) {
            c.into_iter().next().unwrap()
        } else {
            FieldElement::Alg(g, c)
        }
    }

    /// Coefficients of `self` with respect to `g`, which must be at least as
    /// high as `self`'s own generator.
    pub fn coeffs_at(&self, g: &Arc<Generator>) -> Vec<FieldElement> {
        match self {
            FieldElement::Alg(h, c) if Arc::ptr_eq(h, g) => c.clone(),
            _ => {
                let mut c = vec![FieldElement::zero(); g.index as usize];
                c[0] = self.clone();
                c
            }
        }
    }

    fn check_compatible(g: &Arc<Generator>, other: &FieldElement) {
        if let Some(h) = other.generator() {
            assert!(g.has_ancestor(h), "field elements from incompatible towers");
        }
    }

    fn add_ref(&self, o: &FieldElement) -> FieldElement {
        match (self, o) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a + b),
            _ => {
                let (hi, lo) = if self.level() >= o.level() { (self, o) } else { (o, self) };
                let FieldElement::Alg(g, c) = hi else { unreachable!() };
                if hi.level() > lo.level() {
                    Self::check_compatible(g, lo);
                    let mut c = c.clone();
                    c[0] = &c[0] + lo;
                    FieldElement::Alg(g.clone(), c)
                } else {
                    let FieldElement::Alg(h, d) = lo else { unreachable!() };
                    assert!(Arc::ptr_eq(g, h), "field elements from incompatible towers");
                    let c = c.iter().zip(d).map(|(x, y)| x + y).collect();
                    FieldElement::make(g.clone(), c)
                }
            }
        }
    }

    fn mul_ref(&self, o: &FieldElement) -> FieldElement {
        match (self, o) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a * b),
            _ => {
                if self.is_zero() || o.is_zero() {
                    return FieldElement::zero();
                }
                let (hi, lo) = if self.level() >= o.level() { (self, o) } else { (o, self) };
                let FieldElement::Alg(g, c) = hi else { unreachable!() };
                if hi.level() > lo.level() {
                    Self::check_compatible(g, lo);
                    let c = c.iter().map(|x| x * lo).collect();
                    FieldElement::Alg(g.clone(), c)
                } else {
                    let FieldElement::Alg(h, d) = lo else { unreachable!() };
                    assert!(Arc::ptr_eq(g, h), "field elements from incompatible towers");
                    let n = g.index as usize;
                    let mut acc = vec![FieldElement::zero(); 2 * n - 1];
                    for (i, x) in c.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in d.iter().enumerate() {
                            if !y.is_zero() {
                                acc[i + j] += &(x * y);
                            }
                        }
                    }
                    for k in (n..2 * n - 1).rev() {
                        let t = core::mem::take(&mut acc[k]);
                        if !t.is_zero() {
                            acc[k - n] += &(&t * &g.radicand);
                        }
                    }
                    acc.truncate(n);
                    FieldElement::make(g.clone(), acc)
                }
            }
        }
    }

    pub fn checked_inv(&self) -> Result<FieldElement> {
        match self {
            FieldElement::Rat(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement::Rat(a.recip()))
                }
            }
            FieldElement::Alg(g, c) => {
                let d = &g.radicand;
                let (adj, norm) = if g.index == 2 {
                    let norm = &c[0] * &c[0] - d * &c[1] * &c[1];
                    (vec![c[0].clone(), -&c[1]], norm)
                } else {
                    let (a, b, e) = (&c[0], &c[1], &c[2]);
                    let bed = b * e * d;
                    let norm = a * a * a + b * b * b * d + e * e * e * d * d - FieldElement::from(3) * a * &bed;
                    (vec![a * a - bed, e * e * d - a * b, b * b - a * e], norm)
                };
                let ninv = norm.checked_inv().map_err(|_| Error::invariant("zero divisor in field tower"))?;
                let c = adj.into_iter().map(|x| x * &ninv).collect();
                Ok(FieldElement::make(g.clone(), c))
            }
        }
    }

    pub fn inv(&self) -> FieldElement {
        self.checked_inv().expect("inverse of zero field element")
    }

    pub fn checked_div(&self, o: &FieldElement) -> Result<FieldElement> {
        Ok(self * &o.checked_inv()?)
    }

    pub fn pow(&self, k: i64) -> FieldElement {
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = FieldElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the automorphism `g ↦ −g` of a square-root generator.
    pub fn conj_at(&self, g: &Arc<Generator>) -> FieldElement {
        match self {
            FieldElement::Rat(_) => self.clone(),
            FieldElement::Alg(h, c) => {
                if h.level < g.level {
                    self.clone()
                } else if Arc::ptr_eq(h, g) {
                    let c = c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect();
                    FieldElement::Alg(h.clone(), c)
                } else {
                    let c = c.iter().map(|x| x.conj_at(g)).collect();
                    FieldElement::make(h.clone(), c)
                }
            }
        }
    }

    pub fn approx(&self) -> C64 {
        match self {
            FieldElement::Rat(a) => C64::new(q_to_f64(a), 0.0),
            FieldElement::Alg(g, c) => {
                let mut acc = C64::ZERO;
                let mut p = C64::ONE;
                for x in c {
                    acc = acc + x.approx() * p;
                    p = p * g.approx;
                }
                acc
            }
        }
    }

    /// Fixed-point evaluation with `prec` fractional bits.
    pub fn approx_hp(&self, prec: u32) -> HpComplex {
        match self {
            FieldElement::Rat(a) => HpComplex::from_q(a, prec),
            FieldElement::Alg(g, c) => {
                let gv = g.approx_hp(prec);
                let mut acc = HpComplex::zero(prec);
                let mut p = HpComplex::from_q(&Q::one(), prec);
                for x in c {
                    acc = acc.add(&x.approx_hp(prec).mul(&p));
                    p = p.mul(&gv);
                }
                acc
            }
        }
    }

    /// Is the embedding a negative real number (used only for sign display).
    fn is_negative_rational(&self) -> bool {
        matches!(self, FieldElement::Rat(x) if x.is_negative())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(x) => f.write_str(&fmt_q(x)),
            FieldElement::Alg(g, c) => {
                let mut s = String::from("(");
                let mut first = true;
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let gp = match i {
                        0 => String::new(),
                        1 => String::from(g.name()),
                        _ => format!("{}^{}", g.name(), i),
                    };
                    let (neg, body) = match x {
                        FieldElement::Rat(r) => {
                            let a = r.abs();
                            let txt = if i == 0 {
                                fmt_q(&a)
                            } else if a.is_one() {
                                gp.clone()
                            } else if a.is_integer() {
                                format!("{}*{}", fmt_q(&a), gp)
                            } else {
                                format!("({})*{}", fmt_q(&a), gp)
                            };
                            (x.is_negative_rational(), txt)
                        }
                        _ => {
                            let txt = if i == 0 { x.to_string() } else { format!("{x}*{gp}") };
                            (false, txt)
                        }
                    };
                    if first {
                        if neg {
                            s.push('-');
                        }
                    } else {
                        s.push_str(if neg { " - " } else { " + " });
                    }
                    s.push_str(&body);
                    first = false;
                }
                s.push(')');
                f.write_str(&s)
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'b FieldElement) -> FieldElement {
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, o)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                $tr::$m(&self, &o)
            }
        }
        impl<'b> $tr<&'b FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'b FieldElement) -> FieldElement {
                $tr::$m(&self, o)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                $tr::$m(self, &o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.mul_ref(&b.inv()));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rat(a) => FieldElement::Rat(-a),
            FieldElement::Alg(g, c) => FieldElement::Alg(g.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, o: &FieldElement) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, o: &FieldElement) {
        *self = self.add_ref(&-o);
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, o: &FieldElement) {
        *self = self.mul_ref(o);
    }
}

impl core::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::zero(), |a, b| a + b)
    }
}

/// Symbolic `base^(1/index)` that is never adjoined to the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalUnit {
    base: FieldElement,
    index: u32,
}

impl RadicalUnit {
    pub fn new(base: FieldElement, index: u32) -> Result<RadicalUnit> {
        if base.is_zero() {
            return Err(Error::InvalidInput(String::from("radical unit of zero")));
        }
        if index < 2 {
            return Err(Error::InvalidInput(String::from("radical unit index must be at least 2")));
        }
        Ok(RadicalUnit { base, index })
    }

    pub fn base(&self) -> &FieldElement {
        &self.base
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn name(&self) -> String {
        format!("({})^(1/{})", strip_parens(&self.base.to_string()), self.index)
    }

    /// The monomial `unit^k` for any integer `k`.
    pub fn power(&self, k: i64) -> UnitMonomial {
        UnitMonomial { coef: FieldElement::one(), unit: self.clone(), power: 0 }.mul_unit_power(k)
    }
}

/// `coef * unit^power` with `0 ≤ power < index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitMonomial {
    pub coef: FieldElement,
    pub unit: RadicalUnit,
    pub power: u32,
}

impl UnitMonomial {
    pub fn scalar(coef: FieldElement, unit: RadicalUnit) -> UnitMonomial {
        UnitMonomial { coef, unit, power: 0 }
    }

    fn mul_unit_power(mut self, k: i64) -> UnitMonomial {
        let n = self.unit.index as i64;
        let e = self.power as i64 + k;
        let (quot, rem) = (e.div_euclid(n), e.rem_euclid(n));
        self.coef = &self.coef * &self.unit.base.pow(quot);
        self.power = rem as u32;
        self
    }

    pub fn mul(&self, o: &UnitMonomial) -> Result<UnitMonomial> {
        if self.unit != o.unit {
            return Err(Error::invariant("product of different radical units"));
        }
        let m = UnitMonomial { coef: &self.coef * &o.coef, unit: self.unit.clone(), power: self.power };
        Ok(m.mul_unit_power(o.power as i64))
    }

    pub fn scale(&self, c: &FieldElement) -> UnitMonomial {
        UnitMonomial { coef: &self.coef * c, unit: self.unit.clone(), power: self.power }
    }

    pub fn inv(&self) -> Result<UnitMonomial> {
        let m = UnitMonomial { coef: self.coef.checked_inv()?, unit: self.unit.clone(), power: 0 };
        Ok(m.mul_unit_power(-(self.power as i64)))
    }

    pub fn pow(&self, k: u32) -> UnitMonomial {
        let mut acc = UnitMonomial { coef: FieldElement::one(), unit: self.unit.clone(), power: 0 };
        for _ in 0..k {
            acc = acc.mul(self).expect("same unit");
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }
}

impl fmt::Display for UnitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.power == 0 {
            return write!(f, "{}", self.coef);
        }
        let u = format!("({})^({}/{})", strip_parens(&self.unit.base.to_string()), self.power, self.unit.index);
        if self.coef.is_one() {
            f.write_str(&u)
        } else if let Some(r) = self.coef.as_rational() {
            if r.is_integer() {
                write!(f, "{}*{}", fmt_q(r), u)
            } else {
                write!(f, "({})*{}", fmt_q(r), u)
            }
        } else {
            write!(f, "{}*{}", self.coef, u)
        }
    }
}

/// Formats an element as a factor inside a product (`2`, `(1/3)`, `(1 + sqrt(2))`).
pub fn fmt_factor(x: &FieldElement) -> String {
    match x.as_rational() {
        Some(r) if r.is_integer() && !r.is_negative() => fmt_q(r),
        Some(r) => format!("({})", fmt_q(r)),
        None => x.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qr;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from(n)
    }

    #[test]
    fn gaussian_extension() {
        let t = FieldTower::rationals();
        let p = Poly::from_coeffs(vec![fe(1), fe(0), fe(1)]);
        let (t, i) = t.adjoin(&p, None).unwrap();
        assert_eq!(t.height(), 1);
        assert_eq!(&i * &i, fe(-1));
        assert_eq!(i.to_string(), "(sqrt(-1))");
    }

    #[test]
    fn reducible_quadratic_stays_rational() {
        let p = Poly::from_coeffs(vec![fe(-4), fe(0), fe(1)]);
        let (t, r) = FieldTower::rationals().adjoin(&p, None).unwrap();
        assert_eq!(t.height(), 0);
        assert_eq!(&r * &r, fe(4));
    }

    #[test]
    fn example_fixed_point_generator() {
        let p = Poly::from_coeffs(vec![fe(13), fe(-12), fe(3)]);
        let (t, r) = FieldTower::rationals().adjoin(&p, Some(C64::new(2.0, 1.0))).unwrap();
        assert_eq!(t.height(), 1);
        assert_eq!(r.to_string(), "(2 + (1/3)*sqrt(-3))");
        let v = fe(3) * &r * &r - fe(12) * &r + fe(13);
        assert!(v.is_zero());
    }

    #[test]
    fn nested_sqrt_detection() {
        let (t, s2) = FieldTower::rationals().adjoin_sqrt(&fe(2)).unwrap();
        let a = fe(3) + fe(2) * &s2;
        let r = t.sqrt(&a).expect("3 + 2 sqrt 2 = (1 + sqrt 2)^2");
        assert_eq!(&r * &r, a);
        assert!(t.sqrt(&fe(3)).is_none());
        assert_eq!(t.sqrt(&fe(8)).map(|x| &x * &x), Some(fe(8)));
        let (t2, s) = t.adjoin_sqrt(&fe(-3)).unwrap();
        assert_eq!(t2.height(), 2);
        assert!(t2.sqrt(&fe(-6)).is_some());
        assert_eq!(&s * &s, fe(-3));
    }

    #[test]
    fn cube_roots_and_inverse() {
        let (t, c) = FieldTower::rationals().adjoin_cbrt(&q(4)).unwrap();
        let x = fe(1) + &c + fe(3) * &c * &c;
        let y = x.inv();
        assert!((&x * &y).is_one());
        let (t2, r) = t.adjoin_cbrt(&q(2)).unwrap();
        assert_eq!(t2, t);
        assert_eq!(&r * &r * &r, fe(2));
    }

    #[test]
    fn omega_is_primitive() {
        let (_, w) = FieldTower::rationals().with_omega().unwrap();
        assert!((&w * &w * &w).is_one());
        assert!(!w.is_one());
        assert!(w.approx().im > 0.0);
        assert_eq!(w.to_string(), "(-1/2 + (1/2)*sqrt(-3))");
    }

    #[test]
    fn radical_unit_algebra() {
        let u = RadicalUnit::new(fe(4), 3).unwrap();
        let sqrt_m3 = FieldTower::rationals().adjoin_sqrt(&fe(-3)).unwrap().1;
        let c0 = u.power(-1).scale(&(fe(2) * &sqrt_m3));
        let sq = c0.mul(&c0).unwrap();
        let expect = u.power(-2).scale(&fe(-12));
        assert_eq!(sq, expect);
        assert_eq!(sq.coef, fe(-3));
        assert_eq!(sq.power, 1);
        assert_eq!(FieldElement::from(qr(-3, 7)).to_string(), "-3/7");
    }
}
