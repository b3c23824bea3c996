//! Simple radical extensions `K(t)[Y]/(Y^n - a(t))` and residue rings
//! `K[X]/(p)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::lazy::LazyRing;
use crate::poly::Poly;
use crate::ratfun::RationalFunction;

/// The function field `K(t)[Y]/(Y^n - a)` with `n ∈ {2, 3}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadicalAlgebra {
    n: usize,
    a: RationalFunction,
    log_deriv: RationalFunction,
}

/// An element `Σ c_i Y^i`, `0 ≤ i < n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem {
    c: Vec<RationalFunction>,
}

impl AlgElem {
    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &RationalFunction {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RationalFunction::is_zero)
    }

    /// The element as a plain rational function, if it has no `Y` terms.
    pub fn as_base(&self) -> Option<&RationalFunction> {
        if self.c[1..].iter().all(RationalFunction::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    pub fn scale(&self, f: &RationalFunction) -> AlgElem {
        AlgElem { c: self.c.iter().map(|g| g * f).collect() }
    }

    pub fn scale_const(&self, k: &FieldElement) -> AlgElem {
        AlgElem { c: self.c.iter().map(|g| g.scale(k)).collect() }
    }

    pub fn add(&self, o: &AlgElem) -> AlgElem {
        AlgElem { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &AlgElem) -> AlgElem {
        AlgElem { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> AlgElem {
        AlgElem { c: self.c.iter().map(|a| -a).collect() }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F: FnMut(&RationalFunction) -> RationalFunction>(&self, f: F) -> AlgElem {
        AlgElem { c: self.c.iter().map(f).collect() }
    }
}

impl RadicalAlgebra {
    pub fn new(n: usize, a: RationalFunction) -> Result<RadicalAlgebra> {
        if !(2..=3).contains(&n) {
            return Err(Error::unsupported("radical index must be 2 or 3"));
        }
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let log_deriv = a.derivative().checked_div(&a)?.scale(&FieldElement::rational(1, n as i64));
        Ok(RadicalAlgebra { n, a, log_deriv })
    }

    pub fn index(&self) -> usize {
        self.n
    }

    /// `Y^n`.
    pub fn radicand(&self) -> &RationalFunction {
        &self.a
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem { c: vec![RationalFunction::zero(); self.n] }
    }

    pub fn one(&self) -> AlgElem {
        self.base(RationalFunction::one())
    }

    pub fn base(&self, f: RationalFunction) -> AlgElem {
        let mut c = vec![RationalFunction::zero(); self.n];
        c[0] = f;
        AlgElem { c }
    }

    pub fn from_coeffs(&self, mut c: Vec<RationalFunction>) -> Result<AlgElem> {
        if c.len() > self.n {
            return Err(Error::invariant("too many coefficients for radical algebra"));
        }
        c.resize(self.n, RationalFunction::zero());
        Ok(AlgElem { c })
    }

    /// `Y^k` for any integer `k`.
    pub fn y_pow(&self, k: i64) -> AlgElem {
        let n = self.n as i64;
        let q = k.div_euclid(n);
        let r = k.rem_euclid(n) as usize;
        let mut c = vec![RationalFunction::zero(); self.n];
        c[r] = self.a.pow(q);
        AlgElem { c }
    }

    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut c = vec![RationalFunction::zero(); self.n];
        for (i, a) in x.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let k = i + j;
                if k >= self.n {
                    c[k - self.n] = &c[k - self.n] + &(&p * &self.a);
                } else {
                    c[k] = &c[k] + &p;
                }
            }
        }
        AlgElem { c }
    }

    /// The norm down to `K(t)`.
    pub fn norm(&self, x: &AlgElem) -> RationalFunction {
        let a = &self.a;
        match self.n {
            2 => &(&x.c[0] * &x.c[0]) - &(a * &(&x.c[1] * &x.c[1])),
            _ => {
                let (g0, g1, g2) = (&x.c[0], &x.c[1], &x.c[2]);
                let t0 = &(g0 * g0) * g0;
                let t1 = &(a * g1) * &(g1 * g1);
                let t2 = &(&(a * a) * g2) * &(g2 * g2);
                let t3 = (&(a * g0) * &(g1 * g2)).scale(&FieldElement::from(3));
                &(&(&t0 + &t1) + &t2) - &t3
            }
        }
    }

    /// The adjugate: `x · adj(x) = norm(x)`.
    fn adjugate(&self, x: &AlgElem) -> AlgElem {
        let a = &self.a;
        match self.n {
            2 => AlgElem { c: vec![x.c[0].clone(), -&x.c[1]] },
            _ => {
                let (g0, g1, g2) = (&x.c[0], &x.c[1], &x.c[2]);
                AlgElem {
                    c: vec![
                        &(g0 * g0) - &(a * &(g1 * g2)),
                        &(a * &(g2 * g2)) - &(g0 * g1),
                        &(g1 * g1) - &(g0 * g2),
                    ],
                }
            }
        }
    }

    pub fn inv(&self, x: &AlgElem) -> Result<AlgElem> {
        let nrm = self.norm(x);
        if nrm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.adjugate(x).scale(&nrm.inv()))
    }

    pub fn div(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &AlgElem, k: i64) -> Result<AlgElem> {
        let mut base = if k < 0 { self.inv(x)? } else { x.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// `d/dt`, using `Y' = (a'/(n a)) Y`.
    pub fn derivative(&self, x: &AlgElem) -> AlgElem {
        let c = x
            .c
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let d = g.derivative();
                if i == 0 || g.is_zero() {
                    d
                } else {
                    &d + &(g * &self.log_deriv).scale(&FieldElement::from(i as i64))
                }
            })
            .collect();
        AlgElem { c }
    }

    pub fn eval_poly(&self, p: &Poly, v: &AlgElem) -> AlgElem {
        if let Some(ring) = LazyRing::new(self) {
            if let Ok(x) = ring.to_alg(self, &ring.eval_poly(p, &ring.lift(v))) {
                return x;
            }
        }
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, v);
            acc.c[0] = &acc.c[0] + &RationalFunction::constant(c.clone());
        }
        acc
    }

    /// `f(v)` for a rational function `f` of one variable.
    pub fn eval_ratfun(&self, f: &RationalFunction, v: &AlgElem) -> Result<AlgElem> {
        if let Some(ring) = LazyRing::new(self) {
            let x = ring.lift(v);
            let num = ring.eval_poly(f.num(), &x);
            if f.den().is_one() {
                return ring.to_alg(self, &num);
            }
            let q = ring.div(&num, &ring.eval_poly(f.den(), &x)).ok_or(Error::DivisionByZero)?;
            return ring.to_alg(self, &q);
        }
        let num = self.eval_poly(f.num(), v);
        if f.den().is_one() {
            return Ok(num);
        }
        let den = self.eval_poly(f.den(), v);
        self.div(&num, &den)
    }

    /// Same algebra with the radicand multiplied by `k^n` and `Y ↦ kY`.
    pub fn rescale(&self, x: &AlgElem, k: &FieldElement) -> AlgElem {
        let mut p = FieldElement::one();
        let mut c = Vec::with_capacity(self.n);
        for g in &x.c {
            c.push(g.scale(&p));
            p = &p * k;
        }
        AlgElem { c }
    }
}

/// The residue ring `K[X]/(p)` for squarefree `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRing {
    modulus: Poly,
}

impl QuotientRing {
    pub fn new(p: &Poly) -> Result<QuotientRing> {
        if p.deg() < 1 {
            return Err(Error::InvalidInput(alloc::string::String::from("modulus must be non-constant")));
        }
        Ok(QuotientRing { modulus: p.monic() })
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus)
    }

    /// The class of `X`.
    pub fn gen(&self) -> Poly {
        self.reduce(&Poly::x())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    /// Inverse of `a`; fails with `DivisionByZero` when `a` shares a root
    /// with the modulus.
    pub fn inv(&self, a: &Poly) -> Result<Poly> {
        let (g, s, _) = a.xgcd(&self.modulus);
        if !g.is_one() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.reduce(&s))
    }

    pub fn is_zero(&self, a: &Poly) -> bool {
        self.reduce(a).is_zero()
    }

    /// Evaluates a polynomial whose coefficients are constants at the class `a`.
    pub fn eval(&self, p: &Poly, a: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in p.coeffs().iter().rev() {
            acc = &self.mul(&acc, a) + &Poly::constant(c.clone());
        }
        acc
    }
}
