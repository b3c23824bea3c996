//! Locating roots of polynomials inside supported towers.
//!
//! Floating point (Aberth iteration) only proposes candidates; every root and
//! every factor is confirmed exactly before it is returned.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::num::{convergents, C64, Q};
use crate::poly::Poly;

fn eval_c(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::ZERO;
    let mut dp = C64::ZERO;
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *a;
    }
    (p, dp)
}

/// All complex roots (with multiplicity) of a polynomial given by f64
/// coefficients, constant term first.
pub fn aberth(coeffs: &[C64]) -> Vec<C64> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.abs() == 0.0) {
        c.pop();
    }
    let mut zeros_at_origin = 0;
    while c.len() > 1 && c[0].abs() == 0.0 {
        c.remove(0);
        zeros_at_origin += 1;
    }
    let n = c.len().saturating_sub(1);
    let mut out = vec![C64::ZERO; zeros_at_origin];
    if n == 0 {
        return out;
    }
    let lc = c[n];
    let c: Vec<C64> = c.iter().map(|&a| a / lc).collect();
    if n == 1 {
        out.push(-c[0]);
        return out;
    }
    let mut radius: f64 = 0.0;
    for i in 1..=n {
        let v = libm::pow(c[n - i].abs(), 1.0 / i as f64);
        radius = radius.max(v);
    }
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * core::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..800 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval_c(&c, z[k]);
            if p.abs() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = C64::ZERO;
            for j in 0..n {
                if j != k {
                    s = s + (z[k] - z[j]).inv();
                }
            }
            let w = ratio / (C64::ONE - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] = z[k] - w;
                worst = worst.max(w.abs() / z[k].abs().max(1.0));
            }
        }
        if worst < 1e-16 {
            break;
        }
    }
    out.extend(z);
    out
}

pub fn numeric_roots(p: &Poly) -> Vec<C64> {
    let c: Vec<C64> = p.coeffs().iter().map(|x| x.approx()).collect();
    aberth(&c)
}

/// Orders points by modulus, then by argument in `[0, 2π)`.
pub fn cmp_embedding(a: C64, b: C64) -> Ordering {
    let tol = 1e-9;
    let (ma, mb) = (a.abs(), b.abs());
    if (ma - mb).abs() > tol * ma.max(mb).max(1.0) {
        return ma.partial_cmp(&mb).unwrap_or(Ordering::Equal);
    }
    let norm_arg = |z: C64| {
        let t = z.arg();
        if t < -1e-12 {
            t + 2.0 * core::f64::consts::PI
        } else {
            t.max(0.0)
        }
    };
    norm_arg(a).partial_cmp(&norm_arg(b)).unwrap_or(Ordering::Equal)
}

/// Primitive integer multiple of a rational polynomial.
fn integer_content_scale(p: &Poly) -> Option<(Vec<BigInt>, BigInt)> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.as_rational()?.denom());
    }
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c.as_rational().unwrap() * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return None;
    }
    let ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    let lc = ints.last().unwrap().abs();
    Some((ints, lc))
}

fn reconstruct(x: f64, scale: &BigInt) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    if let Some(s) = scale.to_f64().filter(|s| *s < 1.1e12) {
        let v = x * s;
        let r = libm::round(v);
        if (v - r).abs() <= 1e-6 * v.abs().max(1.0) && r.abs() < 9e15 {
            return Some(Q::new(BigInt::from(r as i64), scale.clone()));
        }
    }
    convergents(x, 1_000_000_000)
        .into_iter()
        .find(|c| (crate::num::q_to_f64(c) - x).abs() <= 1e-9 * x.abs().max(1.0))
}

/// Monic rational factors of degree at most `max_deg` of a rational
/// polynomial, found by grouping numeric roots and confirmed by division.
pub fn small_rational_factors(p: &Poly, max_deg: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    let p = p.squarefree_part();
    if p.deg() <= 0 || !p.is_rational() {
        return out;
    }
    let Some((_, lc)) = integer_content_scale(&p) else { return out };
    let roots = numeric_roots(&p);
    let n = roots.len();
    if n > 24 {
        return out;
    }
    let mut rest = p.clone();
    let mut used = vec![false; n];
    for size in 1..=max_deg.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if idx.iter().all(|&i| !used[i]) {
                let mut prod = vec![C64::ONE];
                for &i in &idx {
                    let mut next = vec![C64::ZERO; prod.len() + 1];
                    for (k, a) in prod.iter().enumerate() {
                        next[k + 1] = next[k + 1] + *a;
                        next[k] = next[k] - *a * roots[i];
                    }
                    prod = next;
                }
                let real = prod.iter().all(|z| z.im.abs() <= 1e-7 * z.abs().max(1.0));
                if real {
                    let coeffs: Option<Vec<Q>> = prod.iter().map(|z| reconstruct(z.re, &lc)).collect();
                    if let Some(cs) = coeffs {
                        let g = Poly::from_rationals(&cs);
                        if let Ok((q, r)) = rest.divrem(&g) {
                            if r.is_zero() && g.deg() == size as isize {
                                rest = q;
                                for &i in &idx {
                                    used[i] = true;
                                }
                                out.push(g);
                            }
                        }
                    }
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let size = idx.len();
    for k in (0..size).rev() {
        if idx[k] < n - size + k {
            idx[k] += 1;
            for j in k + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Rational roots of a polynomial with rational coefficients.
pub fn rational_roots(p: &Poly) -> Vec<Q> {
    small_rational_factors(p, 1).into_iter().map(|f| -f.coeff(0).as_rational().unwrap().clone()).collect()
}

/// `Π σ(p)` over the square-root automorphisms of the tower: a polynomial
/// with rational coefficients vanishing on the roots of `p`. `None` when a
/// cube-root generator is involved.
pub fn norm_to_rational(p: &Poly) -> Option<Poly> {
    let mut cur = p.clone();
    loop {
        let top = cur.coeffs().iter().filter_map(|c| c.generator()).max_by_key(|g| g.level()).cloned();
        match top {
            None => return Some(cur),
            Some(g) => {
                if g.index() != 2 {
                    return None;
                }
                let conj = cur.conj_at(&g);
                cur = &cur * &conj;
            }
        }
    }
}

fn solve_quadratic_in(p: &Poly, tower: &FieldTower) -> Vec<FieldElement> {
    let p = p.monic();
    let half_b = p.coeff(1) / FieldElement::from(2);
    let disc = &half_b * &half_b - p.coeff(0);
    match tower.sqrt(&disc) {
        Some(s) if s.is_zero() => vec![-half_b],
        Some(s) => vec![&s - &half_b, -&s - &half_b],
        None => Vec::new(),
    }
}

/// Distinct roots of `p` lying in `tower`.
pub fn roots_in_tower(p: &Poly, tower: &FieldTower) -> Vec<FieldElement> {
    let p = p.squarefree_part();
    let mut roots: Vec<FieldElement> = Vec::new();
    let push = |r: FieldElement, roots: &mut Vec<FieldElement>| {
        if !roots.contains(&r) {
            roots.push(r);
        }
    };
    match p.deg() {
        d if d <= 0 => return roots,
        1 => return vec![-p.coeff(0)],
        2 => return solve_quadratic_in(&p, tower),
        _ => {}
    }
    let Some(norm) = norm_to_rational(&p) else { return roots };
    let max_deg = if tower.height() >= 2 { 4 } else { 2 };
    let mut rest = p.clone();
    for g in small_rational_factors(&norm, max_deg) {
        let h = if p.is_rational() { g.clone() } else { rest.gcd(&g) };
        match h.deg() {
            1 => push(-h.coeff(0), &mut roots),
            2 => {
                for r in solve_quadratic_in(&h, tower) {
                    push(r, &mut roots);
                }
            }
            _ => {}
        }
        if h.deg() > 0 {
            rest = rest.exact_div(&h).unwrap_or(rest);
        }
    }
    roots.retain(|r| p.eval(r).is_zero());
    roots
}

/// Splits `p` as far as possible over `tower` extended by at most
/// `max_new` quadratic generators. Returns the extended tower, the roots found
/// and the product of the factors that could not be split.
pub fn split_with_quadratics(p: &Poly, tower: &FieldTower, max_new: usize) -> Result<(FieldTower, Vec<FieldElement>, Poly)> {
    let mut t = tower.clone();
    let mut rem = p.monic();
    let mut roots = Vec::new();
    let mut added = 0;
    let mut stuck = Poly::one();
    loop {
        for r in roots_in_tower(&rem, &t) {
            rem = rem.exact_div(&Poly::linear(&r))?;
            roots.push(r);
        }
        if rem.deg() <= 0 {
            break;
        }
        if rem.deg() == 2 {
            if added >= max_new || t.height() >= crate::field::MAX_TOWER_HEIGHT {
                stuck = &stuck * &rem;
                break;
            }
            let hint = numeric_roots(&rem).first().copied();
            t = t.adjoin(&rem, hint)?.0;
            added += 1;
            continue;
        }
        let quad = norm_to_rational(&rem).and_then(|n| {
            small_rational_factors(&n, 2)
                .into_iter()
                .map(|g| if rem.is_rational() { g } else { rem.gcd(&g) })
                .find(|h| h.deg() == 2)
        });
        match quad {
            Some(h) if added < max_new && t.height() < crate::field::MAX_TOWER_HEIGHT => {
                let hint = numeric_roots(&h).first().copied();
                t = t.adjoin(&h, hint)?.0;
                added += 1;
            }
            _ => {
                stuck = &stuck * &rem;
                break;
            }
        }
    }
    Ok((t, roots, stuck))
}

/// Roots of a radicand of degree 2–4 with simple roots, extending `tower` by
/// quadratic generators. Irreducible cubic or quartic factors are
/// unsupported. Roots are ordered by modulus and then argument.
pub fn poly_roots_in_supported_towers(r: &Poly, tower: &FieldTower) -> Result<(FieldTower, Vec<FieldElement>)> {
    let d = r.deg();
    if !(1..=4).contains(&d) {
        return Err(Error::InvalidInput(format!("radicand degree {d} is outside 1..4")));
    }
    if !r.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut t = tower.clone();
    let mut rem = r.monic();
    let mut roots: Vec<FieldElement> = Vec::new();
    loop {
        for x in roots_in_tower(&rem, &t) {
            rem = rem.exact_div(&Poly::linear(&x))?;
            roots.push(x);
        }
        match rem.deg() {
            0 => break,
            2 => {
                let hint = numeric_roots(&rem).first().copied();
                t = t.adjoin(&rem, hint)?.0;
            }
            _ => {
                let quad = norm_to_rational(&rem).and_then(|n| {
                    small_rational_factors(&n, 2)
                        .into_iter()
                        .map(|g| if rem.is_rational() { g } else { rem.gcd(&g) })
                        .find(|h| h.deg() == 2)
                });
                match quad {
                    Some(h) => {
                        let hint = numeric_roots(&h).first().copied();
                        t = t.adjoin(&h, hint)?.0;
                    }
                    None => {
                        return Err(Error::UnsupportedRadicand(format!(
                            "{} has an irreducible factor of degree {}",
                            r.to_text("t"),
                            rem.deg()
                        )))
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| cmp_embedding(a.approx(), b.approx()));
    Ok((t, roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    #[test]
    fn aberth_finds_roots() {
        let p = Poly::from_ints(&[4, 0, -5, 0, 1]);
        let mut r: Vec<f64> = numeric_roots(&p).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in r.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn quartic_example_roots() {
        let p = Poly::from_ints(&[4, 0, -5, 0, 1]);
        let (t, r) = poly_roots_in_supported_towers(&p, &FieldTower::rationals()).unwrap();
        assert_eq!(t.height(), 0);
        let expect: Vec<FieldElement> = [1, -1, 2, -2].iter().map(|&x| FieldElement::from(x)).collect();
        assert_eq!(r, expect);
    }

    #[test]
    fn cube_roots_of_unity() {
        let p = Poly::from_ints(&[-1, 0, 0, 1]);
        let (t, r) = poly_roots_in_supported_towers(&p, &FieldTower::rationals()).unwrap();
        let w = t.omega().unwrap();
        assert_eq!(r, vec![FieldElement::one(), w.clone(), &w * &w]);
    }

    #[test]
    fn unsupported_cubic() {
        let p = Poly::from_ints(&[-2, 0, 0, 1]);
        assert!(matches!(
            poly_roots_in_supported_towers(&p, &FieldTower::rationals()),
            Err(Error::UnsupportedRadicand(_))
        ));
        let sq = Poly::from_ints(&[1, -2, 1]);
        assert_eq!(poly_roots_in_supported_towers(&sq, &FieldTower::rationals()), Err(Error::NotSquarefree));
    }

    #[test]
    fn rational_factor_search() {
        let p = Poly::from_ints(&[3, 0, 1]) * Poly::from_ints(&[-2, 3]) * Poly::from_ints(&[1, 1, 1]);
        let f = small_rational_factors(&p, 2);
        assert_eq!(f.len(), 3);
        assert_eq!(rational_roots(&p), vec![Q::new(2.into(), 3.into())]);
        let _ = q(1);
    }

    #[test]
    fn roots_over_extension() {
        let (t, s2) = FieldTower::rationals().adjoin_sqrt(&FieldElement::from(2)).unwrap();
        let p = Poly::from_roots(&[s2.clone(), FieldElement::from(3), -&s2 + FieldElement::one()]);
        let r = roots_in_tower(&p, &t);
        assert_eq!(r.len(), 3);
    }
}
