//! Unreduced fractions over `K[t][Y]/(Y^n − a)` with polynomial `a`.
//!
//! Zero tests on derivatives only need ring operations, so these skip the
//! gcd normalization that dominates the cost over deep towers.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgElem, RadicalAlgebra};
use crate::error::Result;
use crate::field::FieldElement;
use crate::poly::Poly;
use crate::ratfun::RationalFunction;

#[derive(Clone, Debug)]
pub(crate) struct Lazy {
    num: Vec<Poly>,
    den: Poly,
}

pub(crate) struct LazyRing {
    n: usize,
    a: Poly,
    da: Poly,
}

impl LazyRing {
    /// `None` when the radicand is not a polynomial.
    pub(crate) fn new(alg: &RadicalAlgebra) -> Option<LazyRing> {
        let a = alg.radicand();
        if !a.is_polynomial() {
            return None;
        }
        let a = a.num().clone();
        let da = a.derivative();
        Some(LazyRing { n: alg.index(), a, da })
    }

    pub(crate) fn zero(&self) -> Lazy {
        Lazy { num: vec![Poly::zero(); self.n], den: Poly::one() }
    }

    pub(crate) fn lift(&self, x: &AlgElem) -> Lazy {
        let mut den = Poly::one();
        for c in x.coeffs() {
            if !c.is_zero() && !den.rem(c.den()).is_zero() {
                den = &den * c.den();
            }
        }
        let num = x
            .coeffs()
            .iter()
            .map(|c| if c.is_zero() { Poly::zero() } else { c.num() * &den.exact_div(c.den()).expect("divides") })
            .collect();
        Lazy { num, den }
    }

    /// `f · Y^k` for `0 ≤ k < n`, or `f / a · Y^(n+k)` for `−n ≤ k < 0`.
    pub(crate) fn monomial(&self, f: &RationalFunction, k: i64) -> Lazy {
        let mut num = vec![Poly::zero(); self.n];
        if k >= 0 {
            num[k as usize] = f.num().clone();
            Lazy { num, den: f.den().clone() }
        } else {
            num[(self.n as i64 + k) as usize] = f.num().clone();
            Lazy { num, den: f.den() * &self.a }
        }
    }

    pub(crate) fn scale(&self, x: &Lazy, k: &FieldElement) -> Lazy {
        Lazy { num: x.num.iter().map(|p| p.scale(k)).collect(), den: x.den.clone() }
    }

    pub(crate) fn add(&self, x: &Lazy, y: &Lazy) -> Lazy {
        if x.den == y.den {
            return Lazy { num: x.num.iter().zip(&y.num).map(|(a, b)| a + b).collect(), den: x.den.clone() };
        }
        let num = x.num.iter().zip(&y.num).map(|(a, b)| &(a * &y.den) + &(b * &x.den)).collect();
        Lazy { num, den: &x.den * &y.den }
    }

    pub(crate) fn sub(&self, x: &Lazy, y: &Lazy) -> Lazy {
        self.add(x, &self.scale(y, &-FieldElement::one()))
    }

    fn mul_num(&self, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
        let mut c = vec![Poly::zero(); self.n];
        for (i, p) in x.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in y.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let r = p * q;
                let k = i + j;
                if k >= self.n {
                    c[k - self.n] = &c[k - self.n] + &(&r * &self.a);
                } else {
                    c[k] = &c[k] + &r;
                }
            }
        }
        c
    }

    pub(crate) fn mul(&self, x: &Lazy, y: &Lazy) -> Lazy {
        Lazy { num: self.mul_num(&x.num, &y.num), den: &x.den * &y.den }
    }

    fn norm_adj(&self, x: &[Poly]) -> (Poly, Vec<Poly>) {
        let a = &self.a;
        if self.n == 2 {
            let norm = &(&x[0] * &x[0]) - &(a * &(&x[1] * &x[1]));
            return (norm, vec![x[0].clone(), -&x[1]]);
        }
        let (g0, g1, g2) = (&x[0], &x[1], &x[2]);
        let adj = vec![&(g0 * g0) - &(a * &(g1 * g2)), &(a * &(g2 * g2)) - &(g0 * g1), &(g1 * g1) - &(g0 * g2)];
        let norm = &(&(g0 * &adj[0]) + &(&(a * g1) * &adj[2])) + &(&(a * g2) * &adj[1]);
        (norm, adj)
    }

    /// `x / y`, or `None` when `y` is zero.
    pub(crate) fn div(&self, x: &Lazy, y: &Lazy) -> Option<Lazy> {
        let (norm, adj) = self.norm_adj(&y.num);
        if norm.is_zero() {
            return None;
        }
        let num = self.mul_num(&x.num, &adj).iter().map(|p| p * &y.den).collect();
        Some(Lazy { num, den: &x.den * &norm })
    }

    /// `d/dt`, with `Y' = a'/(n a) · Y`.
    pub(crate) fn derivative(&self, x: &Lazy) -> Lazy {
        let d = &x.den;
        let dd = d.derivative();
        let n = FieldElement::from(self.n as i64);
        let num = x
            .num
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let base = &(&(&p.derivative() * d) - &(p * &dd)) * &self.a;
                if i == 0 {
                    base
                } else {
                    &base + &(&(p * d) * &self.da).scale(&(&FieldElement::from(i as i64) / &n))
                }
            })
            .collect();
        Lazy { num, den: &(d * d) * &self.a }
    }

    pub(crate) fn is_zero(&self, x: &Lazy) -> bool {
        x.num.iter().all(Poly::is_zero)
    }

    /// `p(x)` by homogeneous Horner, so only one denominator power appears.
    pub(crate) fn eval_poly(&self, p: &Poly, x: &Lazy) -> Lazy {
        let mut num = vec![Poly::zero(); self.n];
        let mut dp = Poly::one();
        for (i, c) in p.coeffs().iter().rev().enumerate() {
            if i > 0 {
                num = self.mul_num(&num, &x.num);
                dp = &dp * &x.den;
            }
            num[0] = &num[0] + &dp.scale(c);
        }
        Lazy { num, den: dp }
    }

    pub(crate) fn to_alg(&self, alg: &RadicalAlgebra, x: &Lazy) -> Result<AlgElem> {
        let c = x.num.iter().map(|p| RationalFunction::new(p.clone(), x.den.clone())).collect::<Result<Vec<_>>>()?;
        alg.from_coeffs(c)
    }
}
