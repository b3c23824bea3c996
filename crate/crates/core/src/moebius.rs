//! Fractional linear maps of the projective line.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::num::C64;
use crate::poly::Poly;
use crate::ratfun::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectivePoint {
    Finite(FieldElement),
    Infinity,
}

impl ProjectivePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }

    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            ProjectivePoint::Finite(x) => Some(x),
            ProjectivePoint::Infinity => None,
        }
    }

    pub fn approx(&self) -> Option<C64> {
        self.finite().map(|x| x.approx())
    }
}

impl From<FieldElement> for ProjectivePoint {
    fn from(x: FieldElement) -> Self {
        ProjectivePoint::Finite(x)
    }
}

impl From<i64> for ProjectivePoint {
    fn from(x: i64) -> Self {
        ProjectivePoint::Finite(FieldElement::from(x))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(x) => write!(f, "{x}"),
            ProjectivePoint::Infinity => f.write_str("infinity"),
        }
    }
}

/// `t ↦ (A t + B)/(C t + D)`, normalized so that the first nonzero of
/// `(A, C)` equals 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

impl MoebiusMap {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<MoebiusMap> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::DegenerateMap);
        }
        let s = if !a.is_zero() { a.inv() } else { c.inv() };
        Ok(MoebiusMap { a: &a * &s, b: &b * &s, c: &c * &s, d: &d * &s })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<MoebiusMap> {
        MoebiusMap::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> MoebiusMap {
        MoebiusMap::from_ints(1, 0, 0, 1).unwrap()
    }

    /// `(A, B, C, D)`
    pub fn coefficients(&self) -> [&FieldElement; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> FieldElement {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        match p {
            ProjectivePoint::Infinity => {
                if self.c.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(&self.a / &self.c)
                }
            }
            ProjectivePoint::Finite(x) => {
                let den = &self.c * x + &self.d;
                if den.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite((&self.a * x + &self.b) / den)
                }
            }
        }
    }

    /// `self ∘ inner`, i.e. `t ↦ self(inner(t))`.
    pub fn compose(&self, inner: &MoebiusMap) -> MoebiusMap {
        MoebiusMap::new(
            &self.a * &inner.a + &self.b * &inner.c,
            &self.a * &inner.b + &self.b * &inner.d,
            &self.c * &inner.a + &self.d * &inner.c,
            &self.c * &inner.b + &self.d * &inner.d,
        )
        .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap::new(self.d.clone(), -&self.b, -&self.c, self.a.clone()).expect("invertible")
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    /// Smallest `k ≤ max` with `self^k = id`.
    pub fn order(&self, max: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=max {
            if p.is_identity() {
                return Some(k);
            }
            p = self.compose(&p);
        }
        None
    }

    pub fn to_ratfun(&self) -> RationalFunction {
        RationalFunction::new(
            Poly::from_coeffs(alloc::vec![self.b.clone(), self.a.clone()]),
            Poly::from_coeffs(alloc::vec![self.d.clone(), self.c.clone()]),
        )
        .expect("invertible map has nonzero denominator")
    }

    /// The derivative of the map at a finite fixed point.
    pub fn multiplier_at(&self, p: &ProjectivePoint) -> FieldElement {
        match p {
            ProjectivePoint::Finite(x) => {
                let den = &self.c * x + &self.d;
                self.det() / (&den * &den)
            }
            ProjectivePoint::Infinity => &self.d / &self.a,
        }
    }

    /// The two fixed points, extending `tower` by one quadratic generator if
    /// needed. `∞` is always `β`. Involutions order finite points
    /// lexicographically by `(re, im)` of the embedding; other maps put the
    /// point with the larger imaginary part first.
    pub fn fixed_points(&self, tower: &FieldTower) -> Result<(ProjectivePoint, ProjectivePoint, FieldTower)> {
        if self.is_identity() {
            return Err(Error::DegenerateMap);
        }
        let tower = tower.join(&FieldTower::of([&self.a, &self.b, &self.c, &self.d])?)?;
        if self.c.is_zero() {
            let dm = &self.d - &self.a;
            if dm.is_zero() {
                return Err(Error::InvalidInput(String::from("parabolic map has a single fixed point")));
            }
            return Ok((ProjectivePoint::Finite(&self.b / &dm), ProjectivePoint::Infinity, tower));
        }
        let quad = Poly::from_coeffs(alloc::vec![-&self.b, &self.d - &self.a, self.c.clone()]);
        let disc = (&self.d - &self.a) * (&self.d - &self.a) + FieldElement::from(4) * &self.b * &self.c;
        if disc.is_zero() {
            return Err(Error::InvalidInput(String::from("parabolic map has a single fixed point")));
        }
        let (t, r1) = tower.adjoin(&quad, None)?;
        let r2 = -(&self.d - &self.a) / &self.c - &r1;
        let (z1, z2) = (r1.approx(), r2.approx());
        let first = if self.is_involution() {
            lex(z1, z2) != Ordering::Greater
        } else {
            upper_first(z1, z2) != Ordering::Greater
        };
        let (alpha, beta) = if first { (r1, r2) } else { (r2, r1) };
        Ok((ProjectivePoint::Finite(alpha), ProjectivePoint::Finite(beta), t))
    }

    pub fn to_text(&self, var: &str) -> String {
        self.to_ratfun().to_text(var)
    }
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0)
}

fn lex(a: C64, b: C64) -> Ordering {
    if !close(a.re, b.re) {
        return a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal);
    }
    a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal)
}

fn upper_first(a: C64, b: C64) -> Ordering {
    if !close(a.im, b.im) {
        return b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal);
    }
    b.re.partial_cmp(&a.re).unwrap_or(Ordering::Equal)
}

/// `f ∘ m`
pub fn ratfun_compose_moebius(f: &RationalFunction, m: &MoebiusMap) -> RationalFunction {
    f.compose(&m.to_ratfun())
}

fn all_distinct(pts: &[&ProjectivePoint]) -> bool {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] == pts[j] {
                return false;
            }
        }
    }
    true
}

/// The involution exchanging the points within each pair.
pub fn involution_from_pairing(
    pair1: (&ProjectivePoint, &ProjectivePoint),
    pair2: (&ProjectivePoint, &ProjectivePoint),
) -> Result<MoebiusMap> {
    if !all_distinct(&[pair1.0, pair1.1, pair2.0, pair2.1]) {
        return Err(Error::DegeneratePairing);
    }
    let inf_pair = [pair1, pair2].into_iter().position(|(p, q)| p.is_infinity() || q.is_infinity());
    if let Some(i) = inf_pair {
        let (with_inf, other) = if i == 0 { (pair1, pair2) } else { (pair2, pair1) };
        let c = if with_inf.0.is_infinity() { with_inf.1 } else { with_inf.0 };
        let c = c.finite().unwrap();
        let (a, b) = (other.0.finite().unwrap(), other.1.finite().unwrap());
        return MoebiusMap::new(c.clone(), a * b - c * (a + b), FieldElement::one(), -c)
            .map_err(|_| Error::DegeneratePairing);
    }
    let (a, b) = (pair1.0.finite().unwrap(), pair1.1.finite().unwrap());
    let (c, d) = (pair2.0.finite().unwrap(), pair2.1.finite().unwrap());
    let ab = a * b;
    let cd = c * d;
    let sa = a + b;
    let sc = c + d;
    let m = MoebiusMap::new(&ab - &cd, &sa * &cd - &sc * &ab, &sa - &sc, &cd - &ab).map_err(|_| Error::DegeneratePairing)?;
    Ok(m)
}

/// The order-3 map with `roots[0] ↦ roots[1] ↦ roots[2] ↦ roots[0]`.
pub fn cyclic_from_roots(roots: [&ProjectivePoint; 3]) -> Result<MoebiusMap> {
    if !all_distinct(&roots) {
        return Err(Error::DegeneratePairing);
    }
    if let Some(pos) = roots.iter().position(|p| p.is_infinity()) {
        let r1 = roots[(pos + 1) % 3].finite().unwrap();
        let r2 = roots[(pos + 2) % 3].finite().unwrap();
        let k = r1 * r1 - r1 * r2 + r2 * r2;
        return MoebiusMap::new(r1.clone(), -k, FieldElement::one(), -r2);
    }
    let f = |i: usize| roots[i].finite().unwrap().clone();
    let (r0, r1, r2) = (f(0), f(1), f(2));
    let cross = |p: &FieldElement, q: &FieldElement, r: &FieldElement| -> Result<MoebiusMap> {
        let rq = r - q;
        let rp = r - p;
        MoebiusMap::new(rq.clone(), -(p * &rq), rp.clone(), -(q * &rp))
    };
    let src = cross(&r0, &r1, &r2)?;
    let dst = cross(&r1, &r2, &r0)?;
    Ok(dst.inverse().compose(&src))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(x: i64) -> ProjectivePoint {
        ProjectivePoint::from(x)
    }

    #[test]
    fn example_involutions() {
        let s1 = involution_from_pairing((&pp(1), &pp(-1)), (&pp(2), &pp(-2))).unwrap();
        assert_eq!(s1, MoebiusMap::from_ints(-1, 0, 0, 1).unwrap());
        let s2 = involution_from_pairing((&pp(1), &pp(2)), (&pp(-1), &pp(-2))).unwrap();
        assert_eq!(s2, MoebiusMap::from_ints(0, 2, 1, 0).unwrap());
        let s3 = involution_from_pairing((&pp(1), &pp(-2)), (&pp(-1), &pp(2))).unwrap();
        assert_eq!(s3, MoebiusMap::from_ints(0, -2, 1, 0).unwrap());
        assert!(s1.is_involution() && s2.is_involution() && s3.is_involution());
        assert_eq!(s1.compose(&s2), s3);
        assert_eq!(
            involution_from_pairing((&pp(1), &pp(1)), (&pp(2), &pp(3))),
            Err(Error::DegeneratePairing)
        );
    }

    #[test]
    fn involution_with_infinity() {
        let inf = ProjectivePoint::Infinity;
        let s = involution_from_pairing((&pp(1), &pp(2)), (&pp(3), &inf)).unwrap();
        assert!(s.is_involution());
        assert_eq!(s.apply(&pp(1)), pp(2));
        assert_eq!(s.apply(&inf), pp(3));
    }

    #[test]
    fn cyclic_examples() {
        let s = cyclic_from_roots([&pp(1), &pp(2), &pp(3)]).unwrap();
        assert_eq!(s, MoebiusMap::from_ints(5, -13, 3, -7).unwrap());
        assert_eq!(s.order(3), Some(3));
        let inf = ProjectivePoint::Infinity;
        let s = cyclic_from_roots([&pp(1), &pp(-1), &inf]).unwrap();
        assert_eq!(s, MoebiusMap::from_ints(1, -3, 1, 1).unwrap());
        let (a, b, _) = s.fixed_points(&FieldTower::rationals()).unwrap();
        let a = a.finite().unwrap().clone();
        assert_eq!(&a * &a, FieldElement::from(-3));
        assert!(a.approx().im > 0.0);
        assert_eq!(b.finite().unwrap(), &-a);
    }

    #[test]
    fn fixed_points_of_examples() {
        let s1 = MoebiusMap::from_ints(-1, 0, 0, 1).unwrap();
        let (a, b, _) = s1.fixed_points(&FieldTower::rationals()).unwrap();
        assert_eq!((a, b), (pp(0), ProjectivePoint::Infinity));
        let s = MoebiusMap::from_ints(5, -13, 3, -7).unwrap();
        let (a, b, _) = s.fixed_points(&FieldTower::rationals()).unwrap();
        let a = a.finite().unwrap().clone();
        assert_eq!(a.to_string(), "(2 + (1/3)*sqrt(-3))");
        let b = b.finite().unwrap().clone();
        for x in [a, b] {
            let v = FieldElement::from(3) * &x * &x - FieldElement::from(12) * &x + FieldElement::from(13);
            assert!(v.is_zero());
        }
        assert_eq!(MoebiusMap::identity().fixed_points(&FieldTower::rationals()), Err(Error::DegenerateMap));
    }
}
