//! Rational helpers and the two numeric embeddings (f64 and fixed point).

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let (n, d) = (x.numer(), x.denom());
    let k = n.bits() as i64 - d.bits() as i64 - 64;
    let scaled = if k >= 0 { n / (d << (k as usize)) } else { (n << ((-k) as usize)) / d };
    libm::ldexp(scaled.to_f64().unwrap_or(0.0), k as i32)
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn q_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Exact real cube root of a rational, if it is a cube.
pub fn q_cbrt(x: &Q) -> Option<Q> {
    let n = x.numer().cbrt();
    let d = x.denom().cbrt();
    if &(&n * &n * &n) == x.numer() && &(&d * &d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

const SMALL_PRIME_BOUND: u64 = 5000;

/// Writes an integer `n` as `m^k * r` where `r` has no `k`-th power factor
/// below a small trial-division bound. Returns `(m, r)`.
fn extract_power(n: &BigInt, k: u32) -> (BigInt, BigInt) {
    let mut m = BigInt::one();
    let mut r = n.clone();
    let mut p = 2u64;
    while p < SMALL_PRIME_BOUND {
        let pb = BigInt::from(p);
        let pk = pb.pow(k);
        if pk > r.abs() {
            break;
        }
        while r.is_multiple_of(&pk) {
            r /= &pk;
            m *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = if k == 2 { r.abs().sqrt() } else { r.abs().cbrt() };
    if root.pow(k) == r.abs() && !root.is_zero() {
        m *= &root;
        r /= root.pow(k);
    }
    (m, r)
}

/// `x = s^2 * d` with `d` a (trial-division) squarefree integer.
pub fn squarefree_core(x: &Q) -> (Q, BigInt) {
    let n = x.numer() * x.denom();
    let (m, r) = extract_power(&n, 2);
    (Q::new(m, x.denom().clone()), r)
}

/// `x = s^3 * d` with `d` a (trial-division) cubefree integer.
pub fn cubefree_core(x: &Q) -> (Q, BigInt) {
    let den = x.denom();
    let n = x.numer() * den * den;
    let (m, r) = extract_power(&n, 3);
    (Q::new(m, den.clone()), r)
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        alloc::format!("{}", x.numer())
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

/// f64 complex numbers, used only to pick embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> C64 {
        C64 { re, im }
    }

    pub fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    pub fn arg(self) -> f64 {
        libm::atan2(self.im, self.re)
    }

    pub fn conj(self) -> C64 {
        C64::new(self.re, -self.im)
    }

    pub fn from_polar(r: f64, theta: f64) -> C64 {
        C64::new(r * libm::cos(theta), r * libm::sin(theta))
    }

    pub fn sqrt(self) -> C64 {
        let r = self.abs();
        if r == 0.0 {
            return C64::ZERO;
        }
        C64::from_polar(libm::sqrt(r), self.arg() / 2.0)
    }

    pub fn cbrt(self) -> C64 {
        let r = self.abs();
        if r == 0.0 {
            return C64::ZERO;
        }
        if self.im == 0.0 && self.re < 0.0 {
            return C64::new(libm::cbrt(self.re), 0.0);
        }
        C64::from_polar(libm::cbrt(r), self.arg() / 3.0)
    }

    pub fn powi(self, k: u32) -> C64 {
        let mut acc = C64::ONE;
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }

    pub fn inv(self) -> C64 {
        let d = self.re * self.re + self.im * self.im;
        C64::new(self.re / d, -self.im / d)
    }
}

impl Add for C64 {
    type Output = C64;
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for C64 {
    type Output = C64;
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for C64 {
    type Output = C64;
    fn mul(self, o: C64) -> C64 {
        C64::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Div for C64 {
    type Output = C64;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: C64) -> C64 {
        self * o.inv()
    }
}

impl Neg for C64 {
    type Output = C64;
    fn neg(self) -> C64 {
        C64::new(-self.re, -self.im)
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

/// Fixed-point complex number: value = (re + i im) / 2^prec.
#[derive(Debug, Clone, PartialEq)]
pub struct HpComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub prec: u32,
}

impl HpComplex {
    pub fn zero(prec: u32) -> HpComplex {
        HpComplex { re: BigInt::zero(), im: BigInt::zero(), prec }
    }

    pub fn from_q(x: &Q, prec: u32) -> HpComplex {
        let re = (x.numer() << prec as usize).div_floor(x.denom());
        HpComplex { re, im: BigInt::zero(), prec }
    }

    pub fn to_c64(&self) -> C64 {
        let scale = Q::from_integer(BigInt::one() << self.prec as usize);
        C64::new(
            q_to_f64(&(Q::from_integer(self.re.clone()) / &scale)),
            q_to_f64(&(Q::from_integer(self.im.clone()) / &scale)),
        )
    }

    pub fn from_c64(z: C64, prec: u32) -> HpComplex {
        let conv = |v: f64| -> BigInt {
            let (m, e) = libm::frexp(v);
            let mant = BigInt::from((m * 9007199254740992.0) as i64);
            let shift = e as i64 - 53 + prec as i64;
            if shift >= 0 {
                mant << shift as usize
            } else {
                mant >> (-shift) as usize
            }
        };
        HpComplex { re: conv(z.re), im: conv(z.im), prec }
    }

    fn shr(x: BigInt, p: u32) -> BigInt {
        x >> p as usize
    }

    pub fn add(&self, o: &HpComplex) -> HpComplex {
        HpComplex { re: &self.re + &o.re, im: &self.im + &o.im, prec: self.prec }
    }

    pub fn sub(&self, o: &HpComplex) -> HpComplex {
        HpComplex { re: &self.re - &o.re, im: &self.im - &o.im, prec: self.prec }
    }

    pub fn mul(&self, o: &HpComplex) -> HpComplex {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        HpComplex { re: Self::shr(re, self.prec), im: Self::shr(im, self.prec), prec: self.prec }
    }

    pub fn div(&self, o: &HpComplex) -> HpComplex {
        let d = &o.re * &o.re + &o.im * &o.im;
        if d.is_zero() {
            return HpComplex::zero(self.prec);
        }
        let re = (&self.re * &o.re + &self.im * &o.im) << self.prec as usize;
        let im = (&self.im * &o.re - &self.re * &o.im) << self.prec as usize;
        HpComplex { re: re.div_floor(&d), im: im.div_floor(&d), prec: self.prec }
    }

    pub fn scale_int(&self, k: i64) -> HpComplex {
        HpComplex { re: &self.re * k, im: &self.im * k, prec: self.prec }
    }

    fn div_int(&self, k: i64) -> HpComplex {
        let k = BigInt::from(k);
        HpComplex { re: self.re.div_floor(&k), im: self.im.div_floor(&k), prec: self.prec }
    }

    fn newton<F: Fn(&HpComplex) -> HpComplex>(&self, seed: C64, step: F) -> HpComplex {
        let mut z = HpComplex::from_c64(seed, self.prec);
        let tol = BigInt::from(4);
        for _ in 0..(self.prec / 8 + 40) {
            let next = step(&z);
            let delta = (&next.re - &z.re).abs() + (&next.im - &z.im).abs();
            z = next;
            if delta <= tol {
                break;
            }
        }
        z
    }

    /// Principal square root, Newton-refined from the f64 seed.
    pub fn sqrt(&self) -> HpComplex {
        if self.re.is_zero() && self.im.is_zero() {
            return self.clone();
        }
        let seed = self.to_c64().sqrt();
        self.newton(seed, |z| z.add(&self.div(z)).div_int(2))
    }

    /// Principal cube root (real cube root for negative reals).
    pub fn cbrt(&self) -> HpComplex {
        if self.re.is_zero() && self.im.is_zero() {
            return self.clone();
        }
        let seed = self.to_c64().cbrt();
        self.newton(seed, |z| z.scale_int(2).add(&self.div(&z.mul(z))).div_int(3))
    }

    /// Max-norm distance in units of 2^-prec.
    pub fn dist_ulps(&self, o: &HpComplex) -> BigInt {
        let a = (&self.re - &o.re).abs();
        let b = (&self.im - &o.im).abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn sign_re(&self) -> Sign {
        self.re.sign()
    }
}

/// Continued-fraction convergents of `x` whose denominators stay below `max_den`.
pub fn convergents(x: f64, max_den: i64) -> Vec<Q> {
    let mut out = Vec::new();
    if !x.is_finite() || x.abs() > 1e15 {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..40 {
        let a = libm::floor(r);
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Q::new(h2.clone(), k2.clone()));
        h0 = core::mem::replace(&mut h1, h2);
        k0 = core::mem::replace(&mut k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-13 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_conversion_of_huge_rationals() {
        let big = Q::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((q_to_f64(&big) - 3.0).abs() < 1e-15);
        assert!((q_to_f64(&qr(-1, 3)) + 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn cores() {
        assert_eq!(squarefree_core(&qr(-4, 3)), (qr(2, 3), BigInt::from(-3)));
        assert_eq!(squarefree_core(&q(12)), (q(2), BigInt::from(3)));
        assert_eq!(cubefree_core(&qr(1, 2)), (qr(1, 2), BigInt::from(4)));
        assert_eq!(cubefree_core(&q(16)), (q(2), BigInt::from(2)));
        assert_eq!(q_sqrt(&qr(9, 4)), Some(qr(3, 2)));
        assert_eq!(q_cbrt(&qr(-8, 27)), Some(qr(-2, 3)));
        assert_eq!(q_sqrt(&q(2)), None);
    }

    #[test]
    fn hp_roots() {
        let two = HpComplex::from_q(&q(2), 200);
        let r = two.sqrt();
        let back = r.mul(&r);
        assert!(back.dist_ulps(&two) < BigInt::from(1000));
        let m = HpComplex::from_q(&q(-3), 200);
        let c = m.cbrt();
        assert!(c.to_c64().re < 0.0);
        let s = m.sqrt();
        assert!((s.to_c64().im - libm::sqrt(3.0)).abs() < 1e-14);
    }

    #[test]
    fn convergents_recover_fractions() {
        let c = convergents(-13.0 / 7.0, 1000);
        assert!(c.contains(&qr(-13, 7)));
    }
}
