//! Dense univariate polynomials over a field tower.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::num::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(FieldElement::one())
    }

    pub fn x() -> Poly {
        Poly::monomial(FieldElement::one(), 1)
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: FieldElement, k: usize) -> Poly {
        let mut v = vec![FieldElement::zero(); k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    /// `x - a`
    pub fn linear(a: &FieldElement) -> Poly {
        Poly::from_coeffs(vec![-a, FieldElement::one()])
    }

    /// Coefficients from the constant term upward.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| FieldElement::from(x)).collect())
    }

    pub fn from_rationals(c: &[Q]) -> Poly {
        Poly::from_coeffs(c.iter().cloned().map(FieldElement::from).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn tower(&self) -> Result<FieldTower> {
        FieldTower::of(self.coeffs.iter())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn map_coeffs<F: FnMut(&FieldElement) -> FieldElement>(&self, f: F) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![FieldElement::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldElement::from(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `x^deg · self(1/x)` padded to total degree `n`.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut v = self.coeffs.clone();
        v.resize(n + 1, FieldElement::zero());
        v.reverse();
        Poly::from_coeffs(v)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut qv = vec![FieldElement::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    r[k + j] -= &(&c * dj);
                }
            }
            qv[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(qv), Poly::from_coeffs(r)))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).expect("division by zero polynomial").1
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::invariant("inexact polynomial division"));
        }
        Ok(q)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = core::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&qt * &s1);
            s0 = core::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&qt * &t1);
            t0 = core::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Solves `s·a + t·b = c` with `deg s < deg b` given `gcd(a, b) | c`.
    pub fn diophantine(a: &Poly, b: &Poly, c: &Poly) -> Result<(Poly, Poly)> {
        let (g, s, t) = a.xgcd(b);
        let (m, r) = c.divrem(&g)?;
        if !r.is_zero() {
            return Err(Error::invariant("diophantine equation has no solution"));
        }
        let s = &s * &m;
        let t = &t * &m;
        if b.deg() <= 0 {
            return Ok((s, t));
        }
        let (qt, s_red) = s.divrem(b)?;
        Ok((s_red, &t + &(&qt * a)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() <= 0
    }

    /// Yun's algorithm: `self = lc · Π a_i^(i+1)` with `a_i` monic squarefree
    /// and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        let f = self.monic();
        let fd = f.derivative();
        let a0 = f.gcd(&fd);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let mut c = fd.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.exact_div(&a).expect("gcd divides");
            if b.deg() <= 0 {
                break;
            }
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.deg() <= 0) {
            out.pop();
        }
        out
    }

    pub fn squarefree_part(&self) -> Poly {
        if self.deg() <= 0 {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Poly) -> FieldElement {
        if self.is_zero() || o.is_zero() {
            return FieldElement::zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = FieldElement::one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return acc * b.lc().pow(da as i64);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return FieldElement::zero();
            }
            let dr = r.deg();
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc = acc * b.lc().pow((da - dr) as i64);
            a = b;
            b = r;
        }
    }

    /// `Π (x - r)` over the given roots.
    pub fn from_roots(roots: &[FieldElement]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear(r))
    }

    /// Applies the square-root automorphism at the top generator of `g`.
    pub fn conj_at(&self, g: &alloc::sync::Arc<crate::field::Generator>) -> Poly {
        self.map_coeffs(|c| c.conj_at(g))
    }

    /// Text with the given variable, e.g. `t^2 - 5*t + 4`.
    pub fn to_text(&self, var: &str) -> String {
        crate::expr::format_poly(self, var, true)
    }

    /// Text without spaces, e.g. `t^3-1`.
    pub fn to_compact_text(&self, var: &str) -> String {
        crate::expr::format_poly(self, var, false)
    }

    pub fn content_text(c: &Q) -> String {
        fmt_q(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => v.push(a + b),
                (Some(a), None) => v.push(a.clone()),
                (None, Some(b)) => v.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly::from_coeffs(v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![FieldElement::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += &(a * b);
                }
            }
        }
        Poly::from_coeffs(v)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                $tr::$m(&self, &o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                $tr::$m(&self, o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
