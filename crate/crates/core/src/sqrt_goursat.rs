//! Square-root branch: Klein four-group projections and the reduction of an
//! anti-invariant piece to `∫ G(x) dx / √Q(x)`.

use alloc::vec::Vec;
use alloc::format;
use alloc::string::String;

use crate::algebra::RadicalAlgebra;
use crate::antideriv::{back_substitute, unit_alg_text, Piece};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower};
use crate::moebius::{involution_from_pairing, ratfun_compose_moebius, MoebiusMap, ProjectivePoint};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::expr::format_ratfun;
use crate::ratint::{coef_text, integrate_rational};
use crate::roots::poly_roots_in_supported_towers;

#[derive(Clone, Debug, PartialEq)]
pub struct V4Projections {
    pub f0: RationalFunction,
    pub f1: RationalFunction,
    pub f2: RationalFunction,
    pub f3: RationalFunction,
}

impl V4Projections {
    pub fn get(&self, j: usize) -> &RationalFunction {
        match j {
            0 => &self.f0,
            1 => &self.f1,
            2 => &self.f2,
            _ => &self.f3,
        }
    }

    pub fn sum(&self) -> RationalFunction {
        &(&self.f0 + &self.f1) + &(&self.f2 + &self.f3)
    }
}

/// `∫ Fj(t) dt / Y = prefactor · ∫ G(x) dx / √Q(x)` where `Y² = R/C`.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtReduction {
    pub s: MoebiusMap,
    pub alpha: ProjectivePoint,
    pub beta: ProjectivePoint,
    /// `(α − β)/2`, or `1/2` when `β = ∞`.
    pub prefactor: FieldElement,
    /// Leading constant of the radicand in `u`; the full prefactor carries `1/√C`.
    pub c: FieldElement,
    pub g: RationalFunction,
    /// Monic quadratic.
    pub q: Poly,
    /// `x` as a function of `t`.
    pub back: RationalFunction,
    pub target: RationalFunction,
    pub tower: FieldTower,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SqrtDiagnostic {
    pub roots: Vec<ProjectivePoint>,
    pub involutions: [MoebiusMap; 3],
    pub projections: V4Projections,
    /// `F0` when nonzero.
    pub witness: Option<RationalFunction>,
    /// One per nonzero `Fj`, `j = 1..3`, with the index.
    pub reductions: Vec<(usize, SqrtReduction)>,
    pub tower: FieldTower,
}

impl SqrtDiagnostic {
    pub fn is_elementary(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn v4_projections(f: &RationalFunction, s: [&MoebiusMap; 3]) -> Result<V4Projections> {
    for m in s {
        if !m.is_involution() {
            return Err(Error::invariant("map is not an involution"));
        }
    }
    let closed = s[0].compose(s[1]) == *s[2] && s[1].compose(s[2]) == *s[0] && s[0] != s[1];
    if !closed {
        return Err(Error::invariant("involutions do not form a Klein four-group"));
    }
    let g: Vec<RationalFunction> = s.iter().map(|m| ratfun_compose_moebius(f, m)).collect();
    let quarter = FieldElement::rational(1, 4);
    let proj = |j: usize| -> RationalFunction {
        let mut acc = f.clone();
        for (k, gk) in g.iter().enumerate() {
            acc = if j == 0 || k + 1 == j { &acc + gk } else { &acc - gk };
        }
        acc.scale(&quarter)
    };
    Ok(V4Projections { f0: proj(0), f1: proj(1), f2: proj(2), f3: proj(3) })
}

/// `Σ r_i X^i W^(4−i)` evaluated at `X = a + b u`, `W = c + d u`.
pub(crate) fn homogenized(r: &Poly, deg: usize, x: &Poly, w: &Poly) -> Poly {
    let mut acc = Poly::zero();
    for (i, ri) in r.coeffs().iter().enumerate() {
        if !ri.is_zero() {
            acc = &acc + &(&x.pow(i as u32) * &w.pow((deg - i) as u32)).scale(ri);
        }
    }
    acc
}

fn lin(a: &FieldElement, b: &FieldElement) -> Poly {
    Poly::from_coeffs(alloc::vec![a.clone(), b.clone()])
}

/// Whether `S` permutes the roots of `R` (with `∞` counted when `deg R = 3`).
pub fn permutes_roots(r: &Poly, s: &MoebiusMap) -> bool {
    let [a, b, c, d] = s.coefficients();
    let moved = homogenized(r, 4, &lin(b, a), &lin(d, c));
    let base = homogenized(r, 4, &Poly::x(), &Poly::one());
    if moved.deg() != base.deg() {
        return false;
    }
    let k = &moved.lc() / &base.lc();
    moved == base.scale(&k)
}

pub fn goursat_reduce(fj: &RationalFunction, r: &Poly, s: &MoebiusMap, tower: &FieldTower) -> Result<SqrtReduction> {
    if ratfun_compose_moebius(fj, s) != -fj {
        return Err(Error::NotAntiInvariant);
    }
    if !permutes_roots(r, s) {
        return Err(Error::invariant("involution does not permute the roots of the radicand"));
    }
    let (alpha, beta, tower) = s.fixed_points(tower)?;
    let one = FieldElement::one();
    let a = alpha.finite().cloned().ok_or_else(|| Error::invariant("alpha at infinity"))?;
    let (tu, ru, prefactor, back) = match &beta {
        ProjectivePoint::Infinity => {
            let tu = RationalFunction::from(lin(&a, &one));
            let ru = r.compose(&lin(&a, &one));
            let back = RationalFunction::from(lin(&-&a, &one).pow(2));
            (tu, ru, FieldElement::rational(1, 2), back)
        }
        ProjectivePoint::Finite(b) => {
            let tu = RationalFunction::new(lin(&a, &-b), lin(&one, &-&one))?;
            let ru = homogenized(r, 4, &lin(&a, &-b), &lin(&one, &-&one));
            let z = RationalFunction::new(lin(&-&a, &one), lin(&-b, &one))?;
            let half = FieldElement::rational(1, 2);
            (tu, ru, (&a - b) * half, z.pow(2))
        }
    };
    if ru.deg() != 4 || (1..4).step_by(2).any(|i| !ru.coeff(i).is_zero()) {
        return Err(Error::invariant("radicand is not even in the fixed-point coordinate"));
    }
    let c = ru.lc();
    let q = Poly::from_coeffs(alloc::vec![&ru.coeff(0) / &c, &ru.coeff(2) / &c, one.clone()]);
    let odd = fj.compose(&tu).checked_div(&RationalFunction::x())?;
    let g = odd.decimate(2).ok_or(Error::NotAntiInvariant)?;
    Ok(SqrtReduction { s: s.clone(), alpha, beta, prefactor, c, g, q, back, target: fj.clone(), tower })
}

/// The three involutions of the roots `p0..p3`: `{p0p1}{p2p3}`, `{p0p2}{p1p3}`,
/// `{p0p3}{p1p2}`.
pub fn involutions(p: &[ProjectivePoint]) -> Result<[MoebiusMap; 3]> {
    Ok([
        involution_from_pairing((&p[0], &p[1]), (&p[2], &p[3]))?,
        involution_from_pairing((&p[0], &p[2]), (&p[1], &p[3]))?,
        involution_from_pairing((&p[0], &p[3]), (&p[1], &p[2]))?,
    ])
}

/// Among the involutions `Sk`, `k ≠ j`, the one with a fixed point at `∞`,
/// else the lower index.
pub fn pick_anti_involution(j: usize, inv: &[MoebiusMap; 3]) -> usize {
    let cands: Vec<usize> = (1..=3).filter(|&k| k != j).collect();
    let fixes_inf = |k: usize| inv[k - 1].coefficients()[2].is_zero();
    cands.iter().copied().find(|&k| fixes_inf(k)).unwrap_or(cands[0])
}

pub fn sqrt_diagnose(f: &RationalFunction, r: &Poly) -> Result<SqrtDiagnostic> {
    let d = r.deg();
    if !(3..=4).contains(&d) {
        return Err(Error::UnsupportedRadicand(alloc::format!("square-root radicand of degree {d}; need 3 or 4")));
    }
    let base = f.tower()?.join(&r.tower()?)?;
    let (tower, rts) = poly_roots_in_supported_towers(r, &base).map_err(unsupported_radicand)?;
    let mut roots: Vec<ProjectivePoint> = rts.into_iter().map(ProjectivePoint::Finite).collect();
    if d == 3 {
        roots.push(ProjectivePoint::Infinity);
    }
    let inv = involutions(&roots)?;
    let projections = v4_projections(f, [&inv[0], &inv[1], &inv[2]])?;
    if projections.sum() != *f {
        return Err(Error::invariant("projections do not sum to F"));
    }
    let mut reductions = Vec::new();
    for j in 1..=3 {
        let fj = projections.get(j);
        if fj.is_zero() {
            continue;
        }
        let k = pick_anti_involution(j, &inv);
        reductions.push((j, goursat_reduce(fj, r, &inv[k - 1], &tower)?));
    }
    let witness = (!projections.f0.is_zero()).then(|| projections.f0.clone());
    Ok(SqrtDiagnostic { roots, involutions: inv, projections, witness, reductions, tower })
}

fn unsupported_radicand(e: Error) -> Error {
    match e {
        Error::InvalidInput(m) | Error::Unsupported(m) => Error::UnsupportedRadicand(m),
        other => other,
    }
}

impl SqrtReduction {
    /// `√Q` in terms of `Y`, where `Y² = R/C`: `Y (α−β)²/(t−β)²`, or `Y`.
    fn sqrt_q_factor(&self) -> Result<RationalFunction> {
        Ok(match &self.beta {
            ProjectivePoint::Infinity => RationalFunction::one(),
            ProjectivePoint::Finite(b) => {
                let a = self.alpha.finite().unwrap();
                let k = a - b;
                RationalFunction::new(Poly::constant(&k * &k), lin(&-b, &FieldElement::one()).pow(2))?
            }
        })
    }

    /// `prefactor · G(x) / √(C Q(x))` with `√C` folded when it is in the tower.
    pub fn integrand_text(&self) -> String {
        let body = format!("({})/({})^(1/2)", format_ratfun(&self.g, "x"), self.q.to_compact_text("x"));
        match self.tower.sqrt(&self.c) {
            Some(r) => coef_text(&(&self.prefactor / &r), &body),
            None => format!("({})^(-1/2)*{}", self.c, coef_text(&self.prefactor, &body)),
        }
    }

    /// The Euler-substituted integrand in `v = x + √Q(x)`.
    pub fn euler_integrand(&self) -> Result<RationalFunction> {
        let (e, b) = (self.q.coeff(0), self.q.coeff(1));
        let two = FieldElement::from(2);
        let den = lin(&b, &two);
        let xv = RationalFunction::new(Poly::from_coeffs(alloc::vec![-&e, FieldElement::zero(), FieldElement::one()]), den.clone())?;
        let jac = RationalFunction::new(Poly::constant(two), den)?;
        Ok(&self.g.compose(&xv) * &jac)
    }

    /// Integrates the reduction and maps it back to `t`.
    pub fn integrate(&self, r: &Poly, var: &str, radicand: &str, real_form: bool) -> Result<(FieldTower, Piece)> {
        let alg = RadicalAlgebra::new(2, RationalFunction::from(r.scale(&self.c.inv())))?;
        let (tower, ra) = integrate_rational(&self.euler_integrand()?, &self.tower)?;
        let ra = if real_form { ra.real_form() } else { ra };
        let v = alg.base(self.back.clone()).add(&alg.y_pow(1).scale(&self.sqrt_q_factor()?));
        let root = tower.sqrt(&self.c);
        let v_text = unit_alg_text(&v, 2, var, radicand, &self.c, root.as_ref());
        let terms = back_substitute(&ra, &alg, &v, &v_text)?;
        let piece = Piece {
            algebra: alg,
            c: self.c.clone(),
            root,
            m: 1,
            prefactor: self.prefactor.clone(),
            terms,
            target: self.target.clone(),
        };
        Ok((tower, piece))
    }
}
