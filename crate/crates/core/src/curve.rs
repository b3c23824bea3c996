//! Genera of cyclic covers and residues of `φ(x) dx / y^m` on
//! `y³ = x(x − K)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::QuotientRing;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::num::Q;
use crate::poly::Poly;
use crate::ratfun::RationalFunction;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Genus of `y³ = R(t)` for squarefree `R` of the given degree.
pub fn genus_xr(deg_r: u32) -> Result<u32> {
    if deg_r < 1 {
        return Err(Error::InvalidInput(String::from("radicand degree must be at least 1")));
    }
    Ok(if deg_r.is_multiple_of(3) { deg_r - 2 } else { deg_r - 1 })
}

/// Genus of `Y_k: y^n = x^(n−1−k)(x − K)`.
pub fn genus_yk(n: u32, k: u32) -> Result<u32> {
    if n < 2 || k >= n {
        return Err(Error::InvalidInput(format!("need n >= 2 and 0 <= k < n, got n={n}, k={k}")));
    }
    Ok((n + 1 - gcd(n, k) - gcd(n, k + 1)) / 2)
}

/// A truncated Laurent series `Σ_{i ≥ start} c_i τ^i`, exact for exponents
/// below `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    pub start: i64,
    pub coeffs: Vec<FieldElement>,
    pub order: i64,
}

impl PuiseuxSeries {
    fn normalize(mut self) -> PuiseuxSeries {
        let known = (self.order - self.start).max(0) as usize;
        self.coeffs.truncate(known);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(i) => {
                self.coeffs.drain(..i);
                self.start += i as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.order;
            }
        }
        self
    }

    pub fn zero(order: i64) -> PuiseuxSeries {
        PuiseuxSeries { start: order, coeffs: Vec::new(), order }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation of the leading term, `order` when zero.
    pub fn valuation(&self) -> i64 {
        self.start
    }

    pub fn from_poly(p: &Poly, order: i64) -> PuiseuxSeries {
        PuiseuxSeries { start: 0, coeffs: p.coeffs().to_vec(), order }.normalize()
    }

    pub fn coeff(&self, e: i64) -> FieldElement {
        if e < self.start || e >= self.order {
            return FieldElement::zero();
        }
        self.coeffs.get((e - self.start) as usize).cloned().unwrap_or_default()
    }

    pub fn shift(&self, k: i64) -> PuiseuxSeries {
        PuiseuxSeries { start: self.start + k, coeffs: self.coeffs.clone(), order: self.order + k }
    }

    pub fn scale(&self, k: &FieldElement) -> PuiseuxSeries {
        PuiseuxSeries { start: self.start, coeffs: self.coeffs.iter().map(|c| c * k).collect(), order: self.order }.normalize()
    }

    pub fn mul(&self, o: &PuiseuxSeries) -> PuiseuxSeries {
        let order = (self.order + o.start).min(o.order + self.start);
        let start = self.start + o.start;
        let len = (order - start).max(0) as usize;
        let mut c = alloc::vec![FieldElement::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < len {
                    c[i + j] += &(a * b);
                }
            }
        }
        PuiseuxSeries { start, coeffs: c, order }.normalize()
    }

    pub fn inv(&self) -> Result<PuiseuxSeries> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let len = self.coeffs.len().max((self.order - self.start) as usize);
        let a0 = self.coeffs[0].checked_inv()?;
        let mut b: Vec<FieldElement> = Vec::with_capacity(len);
        for n in 0..len {
            let mut s = if n == 0 { FieldElement::one() } else { FieldElement::zero() };
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s -= &(&self.coeffs[k] * &b[n - k]);
            }
            b.push(&s * &a0);
        }
        let prec = self.order - self.start;
        Ok(PuiseuxSeries { start: -self.start, coeffs: b, order: -self.start + prec }.normalize())
    }

    /// Laurent expansion at `τ = 0`.
    pub fn from_ratfun(f: &RationalFunction, order: i64) -> Result<PuiseuxSeries> {
        if f.is_zero() {
            return Ok(PuiseuxSeries::zero(order));
        }
        let vd = f.den().coeffs().iter().position(|c| !c.is_zero()).unwrap() as i64;
        let vn = f.num().coeffs().iter().position(|c| !c.is_zero()).unwrap() as i64;
        let rel = order - (vn - vd);
        if rel <= 0 {
            return Ok(PuiseuxSeries::zero(order));
        }
        let d = PuiseuxSeries::from_poly(f.den(), vd + rel + 1);
        let n = PuiseuxSeries::from_poly(f.num(), vn + rel + 1);
        Ok(n.mul(&d.inv()?).truncate(order))
    }

    pub fn truncate(&self, order: i64) -> PuiseuxSeries {
        PuiseuxSeries { start: self.start, coeffs: self.coeffs.clone(), order: self.order.min(order) }.normalize()
    }

    /// `(1 + a τ^k)^r`, `k ≥ 1`.
    pub fn binomial(a: &FieldElement, k: i64, r: &Q, order: i64) -> PuiseuxSeries {
        let mut coeffs = alloc::vec![FieldElement::zero(); order.max(0) as usize];
        let mut b = FieldElement::one();
        let mut j = 0i64;
        while j * k < order {
            coeffs[(j * k) as usize] = &b * &a.pow(j);
            let rj = FieldElement::from(r - Q::from_integer(j.into()));
            b = &b * &rj / FieldElement::from(j + 1);
            j += 1;
        }
        PuiseuxSeries { start: 0, coeffs, order }.normalize()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointId {
    Zero,
    K,
    Infinity,
    /// The points above the roots of a squarefree factor.
    NonBranch(Poly),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueRecord {
    pub point: PointId,
    /// Pole order of the differential in the local uniformizer; 0 if regular.
    pub pole_order: i64,
    /// The residue divided by `unit`; for non-branch points a class in
    /// `K[X]/(factor)` evaluated at the root `X`.
    pub residue: Poly,
    pub unit: String,
}

impl ResidueRecord {
    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn to_text(&self) -> String {
        let (name, xvar) = match &self.point {
            PointId::Zero => (String::from("x = 0"), "X"),
            PointId::K => (String::from("x = K"), "X"),
            PointId::Infinity => (String::from("x = infinity"), "X"),
            PointId::NonBranch(p) => {
                if p.deg() == 1 {
                    (format!("x = {}", -&p.coeff(0) / &p.coeff(1)), "X")
                } else {
                    (format!("{} = 0", p.to_text("x")), "x")
                }
            }
        };
        let r = self.residue.to_text(xvar);
        let body = if self.unit.is_empty() || self.residue.is_zero() {
            r
        } else if self.residue.deg() == 0 {
            crate::ratint::coef_text(&self.residue.coeff(0), &self.unit)
        } else {
            format!("({r})*{}", self.unit)
        };
        format!("{name}: {body}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueCertificate {
    pub k: FieldElement,
    pub m: u32,
    pub records: Vec<ResidueRecord>,
    pub second_kind: bool,
}

fn factor_out(p: &Poly, f: &Poly) -> (Poly, usize) {
    let mut p = p.clone();
    let mut e = 0;
    while let Ok((q, r)) = p.divrem(f) {
        if !r.is_zero() || p.deg() < f.deg() {
            break;
        }
        p = q;
        e += 1;
    }
    (p, e)
}

fn branch_record(point: PointId, omega: &PuiseuxSeries, unit: String) -> ResidueRecord {
    ResidueRecord {
        point,
        pole_order: (-omega.valuation()).max(0),
        residue: Poly::constant(omega.coeff(-1)),
        unit,
    }
}

fn tau_pow(e: i64, order: i64) -> PuiseuxSeries {
    PuiseuxSeries { start: e, coeffs: alloc::vec![FieldElement::one()], order }
}

/// Expansion of `ω = φ dx / y^m` at a branch point with enough precision to
/// read the `τ⁻¹` coefficient. `local(τ)` is `φ` composed with the local
/// parametrization.
fn branch_series(local: &RationalFunction, prefix: &PuiseuxSeries, unit: (&FieldElement, i64), m: u32, extra: i64) -> Result<PuiseuxSeries> {
    let r = -Q::new((m as i64).into(), 3.into());
    let probe = PuiseuxSeries::from_ratfun(local, 1)?;
    let lead = probe.valuation().min(0) + prefix.valuation();
    let need = 1 - lead + extra;
    let phi = PuiseuxSeries::from_ratfun(local, need)?;
    let bin = PuiseuxSeries::binomial(unit.0, unit.1, &r, need.max(1));
    Ok(phi.mul(&bin).mul(prefix))
}

fn unit_text(base: &FieldElement, m: u32) -> String {
    let s = format!("{base}");
    let s = if s.starts_with('-') || s.contains(['+', '*', '/', ' ']) { format!("({s})") } else { s };
    format!("{s}^(-{m}/3)")
}

/// Residues of `φ(x) dx / y^m` on `y³ = x(x − K)` at the three branch points
/// and at every finite non-branch pole.
pub fn second_kind_check(phi: &RationalFunction, k: &FieldElement, m: u32) -> Result<ResidueCertificate> {
    if phi.is_zero() {
        return Err(Error::InvalidInput(String::from("the differential is zero")));
    }
    if k.is_zero() {
        return Err(Error::InvalidInput(String::from("K must be nonzero")));
    }
    if !(1..=2).contains(&m) {
        return Err(Error::InvalidInput(String::from("m must be 1 or 2")));
    }
    let three = FieldElement::from(3);
    let mut records = Vec::new();
    let cube = |a: &FieldElement| RationalFunction::from(Poly::from_coeffs(alloc::vec![a.clone(), FieldElement::zero(), FieldElement::zero(), FieldElement::one()]));
    let extra = 3;

    // x = τ³, y = τ (−K)^(1/3) (1 − τ³/K)^(1/3)
    let local = phi.compose(&cube(&FieldElement::zero()));
    let pre = tau_pow(2 - m as i64, i64::MAX / 4).scale(&three);
    let s = branch_series(&local, &pre, (&-(k.inv()), 3), m, extra)?;
    records.push(branch_record(PointId::Zero, &s, unit_text(&-k, m)));

    // x = K + τ³, y = τ K^(1/3) (1 + τ³/K)^(1/3)
    let local = phi.compose(&cube(k));
    let s = branch_series(&local, &pre, (&k.inv(), 3), m, extra)?;
    records.push(branch_record(PointId::K, &s, unit_text(k, m)));

    // x = τ^(−3), y = τ^(−2) (1 − K τ³)^(1/3)
    let inv_cube = RationalFunction::new(Poly::one(), Poly::monomial(FieldElement::one(), 3))?;
    let local = phi.compose(&inv_cube);
    let pre = tau_pow(2 * m as i64 - 4, i64::MAX / 4).scale(&-three);
    let s = branch_series(&local, &pre, (&-k, 3), m, extra)?;
    records.push(branch_record(PointId::Infinity, &s, String::new()));

    let x = Poly::x();
    let xk = Poly::from_coeffs(alloc::vec![-k, FieldElement::one()]);
    let (d, _) = factor_out(phi.den(), &x);
    let (d, _) = factor_out(&d, &xk);
    for (i, p) in d.squarefree_decomposition().into_iter().enumerate() {
        if p.deg() < 1 {
            continue;
        }
        let e = i + 1;
        let d1 = d.exact_div(&p.pow(e as u32))?;
        records.push(nonbranch_residue(phi.num(), &d1, &p, e, k, m)?);
    }
    let second_kind = records.iter().all(ResidueRecord::is_zero);
    Ok(ResidueCertificate { k: k.clone(), m, records, second_kind })
}

/// Taylor coefficients of `a(X + h)` in `K[X]/(p)`, up to `h^(n−1)`.
fn taylor(ring: &QuotientRing, a: &Poly, n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n);
    let mut d = a.clone();
    let mut fact = FieldElement::one();
    let x = ring.gen();
    for i in 0..n {
        if i > 0 {
            d = d.derivative();
            fact = &fact * &FieldElement::from(i as i64);
        }
        out.push(ring.eval(&d, &x).scale(&fact.inv()));
    }
    out
}

fn ser_mul(ring: &QuotientRing, a: &[Poly], b: &[Poly], n: usize) -> Vec<Poly> {
    let mut c = alloc::vec![Poly::zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        for (j, bj) in b.iter().enumerate().take(n - i) {
            c[i + j] = &c[i + j] + &ring.mul(ai, bj);
        }
    }
    c
}

fn ser_inv(ring: &QuotientRing, a: &[Poly], n: usize) -> Result<Vec<Poly>> {
    let a0 = ring.inv(&a[0])?;
    let mut b: Vec<Poly> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = if k == 0 { Poly::one() } else { Poly::zero() };
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            s = &s - &ring.mul(&a[j], &b[k - j]);
        }
        b.push(ring.mul(&s, &a0));
    }
    Ok(b)
}

/// Residue of `num/(d1 · p^e) dx / y^m` above the roots `X` of `p`, divided
/// by the sheet unit `(X(X − K))^(−m/3)`.
fn nonbranch_residue(num: &Poly, d1: &Poly, p: &Poly, e: usize, k: &FieldElement, m: u32) -> Result<ResidueRecord> {
    let ring = QuotientRing::new(p)?;
    let n = e;
    let pt = taylor(&ring, &p.pow(e as u32), e + n);
    let p_shift: Vec<Poly> = pt[e..].to_vec();
    let den = ser_mul(&ring, &taylor(&ring, d1, n), &p_shift, n);
    let mut s = ser_mul(&ring, &taylor(&ring, num, n), &ser_inv(&ring, &den, n)?, n);
    // (1 + δ)^(−m/3), δ = (h(2X − K) + h²)/(X(X − K))
    let xg = ring.gen();
    let xk = &xg - &Poly::constant(k.clone());
    let w = ring.inv(&ring.mul(&xg, &xk))?;
    let mut delta = alloc::vec![Poly::zero(); n.max(3)];
    delta[1] = ring.mul(&(&xg.scale(&FieldElement::from(2)) - &Poly::constant(k.clone())), &w);
    delta[2] = w.clone();
    delta.truncate(n);
    let r = -Q::new((m as i64).into(), 3.into());
    let mut bin = alloc::vec![Poly::zero(); n];
    let mut pw = alloc::vec![Poly::zero(); n];
    pw[0] = Poly::one();
    let mut b = FieldElement::one();
    for j in 0..n {
        for (acc, t) in bin.iter_mut().zip(&pw) {
            *acc = &*acc + &t.scale(&b);
        }
        pw = ser_mul(&ring, &pw, &delta, n);
        b = &b * &FieldElement::from(&r - Q::from_integer((j as i64).into())) / FieldElement::from(j as i64 + 1);
    }
    s = ser_mul(&ring, &s, &bin, n);
    let res = ring.reduce(&s[e - 1]);
    let unit = if p.deg() == 1 {
        let x0 = -&p.coeff(0) / &p.coeff(1);
        let v = &x0 * &(&x0 - k);
        return Ok(ResidueRecord {
            point: PointId::NonBranch(p.monic()),
            pole_order: e as i64,
            residue: Poly::constant(res.eval(&x0)),
            unit: unit_text(&v, m),
        });
    } else {
        format!("(X*(X - {k}))^(-{m}/3)")
    };
    Ok(ResidueRecord { point: PointId::NonBranch(p.monic()), pole_order: e as i64, residue: res, unit })
}

/// `g` with `φ(x) dx / y^m = d(g(x) · y^(3−m))` on `y³ = x(x − K)`, i.e.
/// `φ = x(x − K) g′ + λ(2x − K) g` with `λ = (3 − m)/3`, when one exists.
pub fn exact_primitive(phi: &RationalFunction, k: &FieldElement, m: u32) -> Result<Option<RationalFunction>> {
    if phi.is_zero() {
        return Ok(Some(RationalFunction::zero()));
    }
    let lam = FieldElement::rational(3 - m as i64, 3);
    let x = Poly::x();
    let xk = Poly::from_coeffs(alloc::vec![-k, FieldElement::one()]);
    let (e, e0) = factor_out(phi.den(), &x);
    let (e, ek) = factor_out(&e, &xk);
    let dg = &(&x.pow(e0 as u32) * &xk.pow(ek as u32)) * &e.exact_div(&e.squarefree_part())?;
    let dn = phi.num().deg() - phi.den().deg();
    let deg_n = dg.deg() + dn - 1;
    if deg_n < 0 {
        return Ok(None);
    }
    let q = &x * &xk;
    let lin = &x.scale(&FieldElement::from(2)) - &Poly::constant(k.clone());
    let dgp = dg.derivative();
    let image = |nn: &Poly| -> Poly {
        let a = &(&nn.derivative() * &dg) - &(nn * &dgp);
        &(&(&q * &a) + &(&(&lin * nn) * &dg).scale(&lam)) * phi.den()
    };
    let cols: Vec<Poly> = (0..=deg_n as usize).map(|i| image(&Poly::monomial(FieldElement::one(), i))).collect();
    let target = phi.num() * &(&dg * &dg);
    match solve_linear(&cols, &target) {
        Some(sol) => Ok(Some(RationalFunction::new(Poly::from_coeffs(sol), dg)?)),
        None => Ok(None),
    }
}

/// Solves `Σ s_i cols_i = target` exactly.
fn solve_linear(cols: &[Poly], target: &Poly) -> Option<Vec<FieldElement>> {
    let rows = cols.iter().map(|c| c.coeffs().len()).chain(core::iter::once(target.coeffs().len())).max().unwrap_or(0);
    let n = cols.len();
    let mut a: Vec<Vec<FieldElement>> = (0..rows)
        .map(|r| {
            let mut row: Vec<FieldElement> = cols.iter().map(|c| c.coeff(r)).collect();
            row.push(target.coeff(r));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].inv();
        for v in a[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if (row..rows).any(|r| !a[r][n].is_zero()) {
        return None;
    }
    let mut sol = alloc::vec![FieldElement::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = a[r][n].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn genus_tables() {
        let xr: Vec<u32> = (1..=5).map(|d| genus_xr(d).unwrap()).collect();
        assert_eq!(xr, [0, 1, 1, 3, 4]);
        assert_eq!(genus_yk(3, 1).unwrap(), 1);
        assert_eq!(genus_yk(6, 2).unwrap(), 1);
        assert_eq!(genus_yk(5, 2).unwrap(), 2);
        assert!(genus_yk(3, 3).is_err());
        assert!(genus_xr(0).is_err());
    }

    #[test]
    fn series_inverse() {
        let f = rf(&[1], &[0, 1, 1]);
        let s = PuiseuxSeries::from_ratfun(&f, 4).unwrap();
        assert_eq!(s.start, -1);
        let want = [1, -1, 1, -1, 1];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(s.coeff(i as i64 - 1), FieldElement::from(*w));
        }
    }

    #[test]
    fn polynomial_phi_is_second_kind() {
        let k = FieldElement::one();
        for d in 0..4 {
            let phi = RationalFunction::from(Poly::monomial(FieldElement::one(), d));
            let c = second_kind_check(&phi, &k, 1).unwrap();
            assert!(c.second_kind);
            let inf = c.records.iter().find(|r| r.point == PointId::Infinity).unwrap();
            assert_eq!(inf.pole_order, 3 * d as i64 + 2);
        }
    }

    #[test]
    fn pole_at_branch_point() {
        let phi = rf(&[5], &[1, -1]);
        let c = second_kind_check(&phi, &FieldElement::one(), 1).unwrap();
        assert!(c.second_kind);
        let pk = c.records.iter().find(|r| r.point == PointId::K).unwrap();
        assert_eq!(pk.pole_order, 2);
    }

    #[test]
    fn simple_nonbranch_pole_is_third_kind() {
        let phi = rf(&[1], &[-2, 1]);
        let c = second_kind_check(&phi, &FieldElement::one(), 1).unwrap();
        assert!(!c.second_kind);
        let r = c.records.last().unwrap();
        assert_eq!(r.residue, Poly::one());
        assert_eq!(r.unit, "2^(-1/3)");
        let phi = rf(&[-7], &[1, 1]);
        let c = second_kind_check(&phi, &FieldElement::one(), 1).unwrap();
        assert_eq!(c.records.last().unwrap().to_text(), "x = -1: -7*2^(-1/3)");
    }

    #[test]
    fn double_pole_residue_matches_derivative_of_unit() {
        // φ = 1/(x−2)²: residue is d/dx (x(x−1))^(−1/3) at 2 = −(1/3)(2x−1)/(x(x−1)) · unit
        let phi = rf(&[1], &[4, -4, 1]);
        let c = second_kind_check(&phi, &FieldElement::one(), 1).unwrap();
        let r = c.records.last().unwrap();
        assert_eq!(r.residue, Poly::constant(FieldElement::rational(-1, 2)));
    }

    #[test]
    fn irreducible_quadratic_pole() {
        let phi = rf(&[1], &[2, 0, 1]);
        let c = second_kind_check(&phi, &FieldElement::one(), 2).unwrap();
        assert!(!c.second_kind);
        let r = c.records.last().unwrap();
        assert_eq!(r.residue.deg(), 1);
    }

    #[test]
    fn exactness() {
        let k = FieldElement::one();
        assert_eq!(exact_primitive(&rf(&[-1, 2], &[1]), &k, 1).unwrap(), Some(rf(&[3], &[2])));
        assert_eq!(exact_primitive(&RationalFunction::one(), &k, 1).unwrap(), None);
        assert_eq!(exact_primitive(&RationalFunction::one(), &k, 2).unwrap(), None);
        assert_eq!(exact_primitive(&rf(&[5], &[1, -1]), &k, 1).unwrap(), None);
        // g = 1/(x-2) at m = 2
        let g = rf(&[1], &[-2, 1]);
        let lam = FieldElement::rational(1, 3);
        let q = RationalFunction::from(Poly::from_ints(&[0, -1, 1]));
        let lin = RationalFunction::from(Poly::from_ints(&[-1, 2]));
        let phi = &(&q * &g.derivative()) + &(&lin * &g).scale(&lam);
        assert_eq!(exact_primitive(&phi, &k, 2).unwrap(), Some(g));
    }
}
