//! Rational functions in one variable over a field tower, kept in canonical
//! form: `gcd(num, den) = 1` and `den` monic.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }
}

impl From<FieldElement> for RationalFunction {
    fn from(c: FieldElement) -> Self {
        RationalFunction::from(Poly::constant(c))
    }
}

impl RationalFunction {
    /// Canonical form of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lc = den.lc();
        if lc.is_one() {
            return Ok(RationalFunction { num, den });
        }
        let inv = lc.inv();
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn zero() -> RationalFunction {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from(Poly::one())
    }

    pub fn x() -> RationalFunction {
        RationalFunction::from(Poly::x())
    }

    pub fn constant(c: FieldElement) -> RationalFunction {
        RationalFunction::from(c)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational() && self.den.is_rational()
    }

    pub fn tower(&self) -> Result<FieldTower> {
        self.num.tower()?.join(&self.den.tower()?)
    }

    pub fn scale(&self, c: &FieldElement) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn checked_inv(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn inv(&self) -> RationalFunction {
        self.checked_inv().expect("inverse of zero rational function")
    }

    pub fn checked_div(&self, o: &RationalFunction) -> Result<RationalFunction> {
        Ok(self * &o.checked_inv()?)
    }

    pub fn pow(&self, k: i64) -> RationalFunction {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        RationalFunction { num: base.num.pow(e), den: base.den.pow(e) }
    }

    pub fn derivative(&self) -> RationalFunction {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &RationalFunction) -> RationalFunction {
        let m = self.num.deg().max(self.den.deg()).max(0) as usize;
        let p = &g.num;
        let q = &g.den;
        let mut ppow: Vec<Poly> = Vec::with_capacity(m + 1);
        let mut qpow: Vec<Poly> = Vec::with_capacity(m + 1);
        ppow.push(Poly::one());
        qpow.push(Poly::one());
        for i in 1..=m {
            ppow.push(&ppow[i - 1] * p);
            qpow.push(&qpow[i - 1] * q);
        }
        let homog = |f: &Poly| -> Poly {
            let mut acc = Poly::zero();
            for (i, c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&ppow[i] * &qpow[m - i]).scale(c);
                }
            }
            acc
        };
        RationalFunction::new(homog(&self.num), homog(&self.den)).expect("composition with a non-constant map")
    }

    /// `self(c·x)`
    pub fn scale_var(&self, c: &FieldElement) -> RationalFunction {
        let sv = |p: &Poly| -> Poly {
            let mut pw = FieldElement::one();
            let mut v = Vec::with_capacity(p.coeffs().len());
            for a in p.coeffs() {
                v.push(a * &pw);
                pw = &pw * c;
            }
            Poly::from_coeffs(v)
        };
        RationalFunction::new(sv(&self.num), sv(&self.den)).expect("nonzero scale")
    }

    /// `f` with `self(x) = f(x^k)`, if it exists.
    pub fn decimate(&self, k: usize) -> Option<RationalFunction> {
        let dec = |p: &Poly| -> Option<Poly> {
            let mut v = Vec::new();
            for (i, c) in p.coeffs().iter().enumerate() {
                if i % k == 0 {
                    v.push(c.clone());
                } else if !c.is_zero() {
                    return None;
                }
            }
            Some(Poly::from_coeffs(v))
        };
        Some(RationalFunction { num: dec(&self.num)?, den: dec(&self.den)? })
    }

    /// `self(x^k)`
    pub fn inflate(&self, k: usize) -> RationalFunction {
        let inf = |p: &Poly| -> Poly {
            let mut v = alloc::vec![FieldElement::zero(); p.coeffs().len().saturating_sub(1) * k + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                v[i * k] = c.clone();
            }
            Poly::from_coeffs(v)
        };
        RationalFunction { num: inf(&self.num), den: inf(&self.den) }
    }

    pub fn map_coeffs<F: FnMut(&FieldElement) -> FieldElement + Copy>(&self, f: F) -> Result<RationalFunction> {
        RationalFunction::new(self.num.map_coeffs(f), self.den.map_coeffs(f))
    }

    pub fn to_text(&self, var: &str) -> String {
        crate::expr::format_ratfun(self, var)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RationalFunction::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFunction::new(n, &self.den * &o.den).expect("nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = &self.num.exact_div(&g1).unwrap() * &o.num.exact_div(&g2).unwrap();
        let d = &self.den.exact_div(&g2).unwrap() * &o.den.exact_div(&g1).unwrap();
        RationalFunction::new(n, d).expect("nonzero")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                $tr::$m(&self, &o)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: &RationalFunction) -> RationalFunction {
                $tr::$m(&self, o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn normalize_cancels() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        assert!(rf(&[0], &[-1, 0, 0, 1]).is_zero());
        assert_eq!(RationalFunction::new(Poly::one(), Poly::zero()), Err(Error::DivisionByZero));
        let f = rf(&[2], &[0, 4]);
        assert_eq!(f.den(), &Poly::from_ints(&[0, 1]));
    }

    #[test]
    fn omega_gcd_example() {
        let (_, w) = FieldTower::rationals().with_omega().unwrap();
        let num = Poly::from_coeffs(alloc::vec![FieldElement::zero(), FieldElement::one(), FieldElement::zero(), FieldElement::zero(), FieldElement::one()]);
        let den = Poly::from_ints(&[1, 0, 0, -1]);
        let f = RationalFunction::new(num.clone(), den.clone()).unwrap();
        assert!(f.num().gcd(f.den()).is_one());
        assert_eq!(f.num().deg(), 4);
        let _ = w;
    }

    #[test]
    fn composition_and_derivative() {
        let f = rf(&[-2, 0, 1], &[0, 2]);
        let m = rf(&[-2], &[0, 1]);
        assert_eq!(f.compose(&m), f);
        let g = rf(&[1], &[-1, 1]);
        assert_eq!(g.derivative(), rf(&[-1], &[1, -2, 1]));
        assert_eq!((&f - &f), RationalFunction::zero());
    }

    #[test]
    fn decimate_inflate() {
        let f = rf(&[0, 0, 0, 1, 0, 0, 1], &[-2, 0, 0, 1]);
        let phi = f.decimate(3).unwrap();
        assert_eq!(phi, rf(&[0, 1, 1], &[-2, 1]));
        assert_eq!(phi.inflate(3), f);
        assert!(rf(&[0, 1], &[1]).decimate(3).is_none());
    }
}
