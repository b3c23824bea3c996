//! Cube-root branch: canonical form `c(z³ − K)`, eigenprojections under
//! `z ↦ ωz`, the genus-zero reductions and the obstruction on `y³ = x(x − K)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{AlgElem, RadicalAlgebra};
use crate::antideriv::{back_substitute, unit_alg_text, AntiderivativeExpr, Piece, Term};
use crate::curve::{exact_primitive, second_kind_check, ResidueCertificate};
use crate::error::{Error, Result};
use crate::expr::{format_poly, format_ratfun, Exponent, IntegrandSpec};
use crate::field::{FieldElement, FieldTower};
use crate::moebius::{cyclic_from_roots, MoebiusMap, ProjectivePoint};
use crate::num::q_cbrt;
use crate::pipeline::Status;
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::ratint::{coef_text, format_cleared, has_top_level_sum, integrate_rational};
use crate::roots::poly_roots_in_supported_towers;
use crate::sqrt_goursat::homogenized;

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalCubicForm {
    pub s: MoebiusMap,
    pub alpha: ProjectivePoint,
    pub beta: ProjectivePoint,
    pub c: FieldElement,
    pub k: FieldElement,
    /// `S′(α)`.
    pub multiplier: FieldElement,
    pub omega: FieldElement,
    pub tower: FieldTower,
}

fn lin(a: &FieldElement, b: &FieldElement) -> Poly {
    Poly::from_coeffs(alloc::vec![a.clone(), b.clone()])
}

impl CanonicalCubicForm {
    fn alpha_val(&self) -> &FieldElement {
        self.alpha.finite().expect("alpha is finite")
    }

    /// `α − β`, or 1 when `β = ∞`.
    pub fn scale(&self) -> FieldElement {
        match &self.beta {
            ProjectivePoint::Infinity => FieldElement::one(),
            ProjectivePoint::Finite(b) => self.alpha_val() - b,
        }
    }

    /// `t(z) = (α − βz)/(1 − z)`, or `α + z`.
    pub fn t_of_z(&self) -> RationalFunction {
        let one = FieldElement::one();
        match &self.beta {
            ProjectivePoint::Infinity => RationalFunction::from(lin(self.alpha_val(), &one)),
            ProjectivePoint::Finite(b) => RationalFunction::new(lin(self.alpha_val(), &-b), lin(&one, &-&one)).expect("nonzero"),
        }
    }

    /// `z(t) = (t − α)/(t − β)`, or `t − α`.
    pub fn z_of_t(&self) -> RationalFunction {
        let one = FieldElement::one();
        let num = lin(&-self.alpha_val(), &one);
        match &self.beta {
            ProjectivePoint::Infinity => RationalFunction::from(num),
            ProjectivePoint::Finite(b) => RationalFunction::new(num, lin(&-b, &one)).expect("nonzero"),
        }
    }

    /// `1 − z`, or 1 when `β = ∞`.
    fn one_minus_z(&self) -> RationalFunction {
        match &self.beta {
            ProjectivePoint::Infinity => RationalFunction::one(),
            ProjectivePoint::Finite(_) => RationalFunction::from(lin(&FieldElement::one(), &-FieldElement::one())),
        }
    }

    /// `W/Y = 1 − z(t)` written in `t`: `(α − β)/(t − β)`, or 1.
    fn w_over_y(&self) -> RationalFunction {
        match &self.beta {
            ProjectivePoint::Infinity => RationalFunction::one(),
            ProjectivePoint::Finite(b) => RationalFunction::new(Poly::constant(self.scale()), lin(&-b, &FieldElement::one())).expect("nonzero"),
        }
    }
}

/// Roots of a radicand of degree 2 or 3, with `∞` appended for degree 2.
pub fn cubic_roots(r: &Poly, tower: &FieldTower) -> Result<(FieldTower, Vec<ProjectivePoint>)> {
    let d = r.deg();
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedRadicand(format!("cube-root radicand of degree {d}; need 2 or 3")));
    }
    let (t, rts) = poly_roots_in_supported_towers(r, tower)?;
    let mut roots: Vec<ProjectivePoint> = rts.into_iter().map(ProjectivePoint::Finite).collect();
    if d == 2 {
        roots.push(ProjectivePoint::Infinity);
    }
    Ok((t, roots))
}

pub fn canonical_form(r: &Poly, roots: [&ProjectivePoint; 3], tower: &FieldTower) -> Result<CanonicalCubicForm> {
    let s = cyclic_from_roots(roots)?;
    let (alpha, beta, t) = s.fixed_points(tower)?;
    let (tower, omega) = t.with_omega()?;
    let a = alpha.finite().cloned().ok_or_else(|| Error::invariant("alpha at infinity"))?;
    let one = FieldElement::one();
    let rz = match &beta {
        ProjectivePoint::Infinity => r.compose(&lin(&a, &one)),
        ProjectivePoint::Finite(b) => homogenized(r, 3, &lin(&a, &-b), &lin(&one, &-&one)),
    };
    if rz.deg() != 3 || !rz.coeff(1).is_zero() || !rz.coeff(2).is_zero() {
        return Err(Error::invariant("radicand is not of the form c(z^3 - K) in the fixed-point coordinate"));
    }
    let c = rz.lc();
    let k = -&rz.coeff(0) / &c;
    let multiplier = s.multiplier_at(&alpha);
    Ok(CanonicalCubicForm { s, alpha, beta, c, k, multiplier, omega, tower })
}

/// `(α − β) F(t(z)) / (1 − z)` without the `c^(1/3)` unit.
pub fn build_h(f: &RationalFunction, cf: &CanonicalCubicForm) -> RationalFunction {
    let ft = f.compose(&cf.t_of_z()).scale(&cf.scale());
    ft.checked_div(&cf.one_minus_z()).expect("nonzero")
}

/// `(α − β) F(t(z))` without the `c^(2/3)` unit.
pub fn build_htilde(f: &RationalFunction, cf: &CanonicalCubicForm) -> RationalFunction {
    f.compose(&cf.t_of_z()).scale(&cf.scale())
}

/// `P_k h = (h(z) + ω^(−k) h(ωz) + ω^(−2k) h(ω²z)) / 3`.
pub fn eigen_project(h: &RationalFunction, k: usize, omega: &FieldElement) -> RationalFunction {
    let mut acc = h.clone();
    for j in 1..3i64 {
        let w = omega.pow(j);
        let coef = omega.pow(-(k as i64) * j);
        acc = &acc + &h.scale_var(&w).scale(&coef);
    }
    acc.scale(&FieldElement::rational(1, 3))
}

/// `φ` with `h_k(z) = z^k φ(z³)`.
pub fn extract_phi(hk: &RationalFunction, k: usize) -> Result<RationalFunction> {
    let zk = RationalFunction::from(Poly::monomial(FieldElement::one(), k));
    let phi = hk.checked_div(&zk)?.decimate(3).ok_or_else(|| Error::invariant("function is not in the eigenspace"))?;
    if &phi.inflate(3) * &zk != *hk {
        return Err(Error::invariant("eigenspace round trip failed"));
    }
    Ok(phi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenComponents {
    pub h: RationalFunction,
    pub parts: [RationalFunction; 3],
    pub phi: [RationalFunction; 3],
}

pub fn eigen_components(h: &RationalFunction, omega: &FieldElement) -> Result<EigenComponents> {
    let parts = [eigen_project(h, 0, omega), eigen_project(h, 1, omega), eigen_project(h, 2, omega)];
    if &(&parts[0] + &parts[1]) + &parts[2] != *h {
        return Err(Error::invariant("eigencomponents do not sum to H"));
    }
    let phi = [extract_phi(&parts[0], 0)?, extract_phi(&parts[1], 1)?, extract_phi(&parts[2], 2)?];
    Ok(EigenComponents { h: h.clone(), parts, phi })
}

/// A rational integral in a single variable, with the substitution mapping
/// it back to `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubeReduction {
    pub name: &'static str,
    pub variable: &'static str,
    pub integrand: RationalFunction,
    pub back: AlgElem,
    pub back_text: String,
}

fn x_of(num: Poly, den: Poly) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero")
}

fn cube_shift(k: &FieldElement) -> RationalFunction {
    RationalFunction::from(Poly::from_coeffs(alloc::vec![k.clone(), FieldElement::zero(), FieldElement::zero(), FieldElement::one()]))
}

struct Rules<'a> {
    cf: &'a CanonicalCubicForm,
    alg: &'a RadicalAlgebra,
    var: &'a str,
    radicand: &'a str,
    root: Option<&'a FieldElement>,
}

impl Rules<'_> {
    fn text(&self, x: &AlgElem) -> String {
        unit_alg_text(x, 3, self.var, self.radicand, &self.cf.c, self.root)
    }

    /// `w = W/z`.
    fn w(&self) -> (AlgElem, String) {
        let f = self.cf.w_over_y().checked_div(&self.cf.z_of_t()).expect("nonzero");
        let x = self.alg.y_pow(1).scale(&f);
        let s = self.text(&x);
        (x, s)
    }

    /// `u = W`.
    fn u(&self) -> (AlgElem, String) {
        let x = self.alg.y_pow(1).scale(&self.cf.w_over_y());
        let s = self.text(&x);
        (x, s)
    }

    /// `s = z/W`.
    fn s(&self) -> (AlgElem, String) {
        let g = self.cf.z_of_t().checked_div(&self.cf.w_over_y()).expect("nonzero");
        let x = self.alg.y_pow(-1).scale(&g);
        let (g, unit) = match (self.root, self.cf.c.is_one()) {
            (Some(r), _) => (g.scale(r), None),
            (None, true) => (g, None),
            (None, false) => (g, Some(format!("({})^(1/3)*", self.cf.c))),
        };
        let gs = format_cleared(&g, self.var);
        let gs = if has_top_level_sum(&gs) { format!("({gs})") } else { gs };
        let text = format!("{}{gs}/({})^(1/3)", unit.unwrap_or_default(), self.radicand);
        (x, text)
    }
}

/// Reductions at exponent 1/3: `J0(w)` and `J2(u)`.
fn reduce_13(comp: &EigenComponents, rules: &Rules) -> [CubeReduction; 2] {
    let k = &rules.cf.k;
    let one = FieldElement::one();
    let w3 = Poly::from_coeffs(alloc::vec![one.clone(), FieldElement::zero(), FieldElement::zero(), -&one]);
    let x0 = x_of(Poly::constant(k.clone()), w3.clone());
    let j0 = &comp.phi[0].compose(&x0) * &x_of(Poly::x(), w3);
    let j2 = &comp.phi[2].compose(&cube_shift(k)) * &RationalFunction::x();
    let (wb, wt) = rules.w();
    let (ub, ut) = rules.u();
    [
        CubeReduction { name: "J0", variable: "w", integrand: j0, back: wb, back_text: wt },
        CubeReduction { name: "J2", variable: "u", integrand: j2, back: ub, back_text: ut },
    ]
}

/// Reductions at exponent 2/3: `J1(s)` and `J2(u)`.
fn reduce_23(comp: &EigenComponents, rules: &Rules) -> [CubeReduction; 2] {
    let k = &rules.cf.k;
    let one = FieldElement::one();
    let s3 = Poly::from_coeffs(alloc::vec![-&one, FieldElement::zero(), FieldElement::zero(), one.clone()]);
    let x1 = x_of(Poly::monomial(k.clone(), 3), s3.clone());
    let j1 = -(&comp.phi[1].compose(&x1) * &x_of(Poly::x(), s3));
    let j2 = comp.phi[2].compose(&cube_shift(k));
    let (sb, st) = rules.s();
    let (ub, ut) = rules.u();
    [
        CubeReduction { name: "J1", variable: "s", integrand: j1, back: sb, back_text: st },
        CubeReduction { name: "J2", variable: "u", integrand: j2, back: ub, back_text: ut },
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubeDiagnostic {
    pub spec: IntegrandSpec,
    pub status: Status,
    pub canonical: CanonicalCubicForm,
    pub components: EigenComponents,
    /// Index of the obstructing eigencomponent: 1 at exponent 1/3, 0 at 2/3.
    pub witness_index: usize,
    pub witness: Option<RationalFunction>,
    pub certificate: Option<ResidueCertificate>,
    /// `g` with `φ dx / v^m = d(g v^(3−m))` when the witness is exact.
    pub exact: Option<RationalFunction>,
    pub reductions: Vec<CubeReduction>,
    pub algebra: RadicalAlgebra,
    /// `c^(1/3)` when it is rational.
    pub root: Option<FieldElement>,
}

pub fn cube_diagnose(spec: &IntegrandSpec) -> Result<CubeDiagnostic> {
    let m = match spec.exponent {
        Exponent::Third => 1,
        Exponent::TwoThirds => 2,
        Exponent::Half => return Err(Error::UnsupportedExponent(String::from("1/2 is not a cube-root exponent"))),
    };
    let base = spec.f.tower()?.join(&spec.r.tower()?)?;
    let (tower, roots) = cubic_roots(&spec.r, &base)?;
    let cf = canonical_form(&spec.r, [&roots[0], &roots[1], &roots[2]], &tower)?;
    let h = if m == 1 { build_h(&spec.f, &cf) } else { build_htilde(&spec.f, &cf) };
    let components = eigen_components(&h, &cf.omega)?;
    let algebra = RadicalAlgebra::new(3, RationalFunction::from(spec.r.scale(&cf.c.inv())))?;
    let root = cf.c.as_rational().and_then(q_cbrt).map(FieldElement::from);
    let rules = Rules { cf: &cf, alg: &algebra, var: &spec.var, radicand: &spec.radicand_text, root: root.as_ref() };
    let reductions: Vec<CubeReduction> = if m == 1 { reduce_13(&components, &rules) } else { reduce_23(&components, &rules) }.into();
    let witness_index = if m == 1 { 1 } else { 0 };
    let wit = &components.parts[witness_index];
    let (status, witness, certificate, exact) = if wit.is_zero() {
        (Status::Elementary, None, None, None)
    } else {
        let phi = &components.phi[witness_index];
        let cert = second_kind_check(phi, &cf.k, m)?;
        let exact = exact_primitive(phi, &cf.k, m)?;
        let status = match (&exact, cert.second_kind) {
            (Some(_), _) => Status::Elementary,
            (None, true) => Status::ObstructedCertified,
            (None, false) => Status::ObstructedInconclusive,
        };
        (status, Some(wit.clone()), Some(cert), exact)
    };
    Ok(CubeDiagnostic {
        spec: spec.clone(),
        status,
        canonical: cf,
        components,
        witness_index,
        witness,
        certificate,
        exact,
        reductions,
        algebra,
        root,
    })
}

impl CubeDiagnostic {
    fn m(&self) -> u32 {
        self.spec.exponent.power()
    }

    pub fn phi_witness(&self) -> Option<&RationalFunction> {
        self.witness.as_ref().map(|_| &self.components.phi[self.witness_index])
    }

    /// The obstructing part of `F`, written back in `t`.
    pub fn obstructed_part(&self) -> RationalFunction {
        let Some(w) = &self.witness else { return RationalFunction::zero() };
        let cf = &self.canonical;
        let z = cf.z_of_t();
        let back = w.compose(&z);
        let back = if self.m() == 1 { &back * &cf.one_minus_z().compose(&z) } else { back };
        back.scale(&cf.scale().inv())
    }

    /// `v = (x(x − K))^(1/3) = z W` in `t`.
    fn v(&self) -> AlgElem {
        let cf = &self.canonical;
        self.algebra.y_pow(1).scale(&(&cf.z_of_t() * &cf.w_over_y()))
    }

    fn unit(&self) -> (FieldElement, Option<String>) {
        let m = self.m() as i64;
        match (&self.root, self.canonical.c.is_one()) {
            (Some(r), _) => (r.pow(-m), None),
            (None, true) => (FieldElement::one(), None),
            (None, false) => (FieldElement::one(), Some(format!("({})^(-{m}/3)", self.canonical.c))),
        }
    }

    /// A reduction integrand with the unit `c^(-m/3)` reattached.
    pub fn reduction_text(&self, red: &CubeReduction) -> String {
        let (k, unit) = self.unit();
        let body = format_ratfun(&red.integrand, red.variable);
        if red.integrand.is_zero() || (k.is_one() && unit.is_none()) {
            return body;
        }
        let body = if has_top_level_sum(&body) || body.contains('/') { format!("({body})") } else { body };
        let text = coef_text(&k, &body);
        match unit {
            Some(u) => format!("{u}*{text}"),
            None => text,
        }
    }

    /// `(1/3) ∫ φ(x) dx / (x(x − K))^(m/3)` with the unit reattached.
    pub fn obstruction_text(&self) -> Option<String> {
        let phi = self.phi_witness()?;
        let m = self.m();
        let (k, unit) = self.unit();
        let lin = format_poly(&Poly::from_coeffs(alloc::vec![-&self.canonical.k, FieldElement::one()]), "x", true);
        let rad = format!("(x*({lin}))^({m}/3)");
        let third = FieldElement::rational(1, 3);
        let text = match phi.num().is_constant() {
            true => {
                let n = phi.num().coeff(0);
                let coef = &(&n * &third) * &k;
                let body = if phi.den().is_one() {
                    format!("∫dx/{rad}")
                } else {
                    let d = format_poly(phi.den(), "x", true);
                    let d = if phi.den().coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({d})") } else { d };
                    format!("∫dx/({d}*{rad})")
                };
                coef_text(&coef, &body)
            }
            false => coef_text(&(&third * &k), &format!("∫({})dx/{rad}", format_ratfun(phi, "x"))),
        };
        Some(match unit {
            Some(u) => match text.strip_prefix('-') {
                Some(rest) => format!("-{u}*{rest}"),
                None => format!("{u}*{text}"),
            },
            None => text,
        })
    }

    /// Integrates the reductions, maps them back to `t` and assembles the
    /// antiderivative; the obstruction is left as an unevaluated integral
    /// unless it is exact.
    pub fn integrate(&self, real_form: bool) -> Result<AntiderivativeExpr> {
        let mut tower = self.canonical.tower.clone();
        let mut terms: Vec<Term> = Vec::new();
        for red in &self.reductions {
            if red.integrand.is_zero() {
                continue;
            }
            let (t, ra) = integrate_rational(&red.integrand, &tower)?;
            tower = t;
            let ra = if real_form { ra.real_form() } else { ra };
            terms.extend(back_substitute(&ra, &self.algebra, &red.back, &red.back_text)?);
        }
        let mut remainder = Vec::new();
        let target = match (&self.witness, &self.exact) {
            (None, _) => self.spec.f.clone(),
            (Some(_), Some(g)) => {
                let x = self.canonical.z_of_t().pow(3);
                let gx = self.algebra.base(g.compose(&x));
                let v = self.algebra.pow(&self.v(), 3 - self.m() as i64)?;
                terms.push(Term::Alg(self.algebra.mul(&gx, &v).scale_const(&FieldElement::rational(1, 3))));
                self.spec.f.clone()
            }
            (Some(_), None) => {
                remainder.extend(self.obstruction_text());
                &self.spec.f - &self.obstructed_part()
            }
        };
        let piece = Piece {
            algebra: self.algebra.clone(),
            c: self.canonical.c.clone(),
            root: self.root.clone(),
            m: self.m(),
            prefactor: FieldElement::one(),
            terms,
            target,
        };
        Ok(AntiderivativeExpr {
            var: self.spec.var.clone(),
            radicand_text: self.spec.radicand_text.clone(),
            pieces: alloc::vec![piece],
            remainder,
        })
    }
}

/// `∫ (G0 + G1 y + G2 y²) dt` over `y³ = R` as a rational integral plus
/// integrals at exponents 1/3 and 2/3.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSplit {
    pub rational: RationalFunction,
    pub third: IntegrandSpec,
    pub two_thirds: IntegrandSpec,
}

pub fn field_split(g0: &RationalFunction, g1: &RationalFunction, g2: &RationalFunction, r: &Poly, var: &str) -> Result<FieldSplit> {
    let rr = RationalFunction::from(r.clone());
    Ok(FieldSplit {
        rational: g0.clone(),
        third: IntegrandSpec::new(g2 * &rr, r.clone(), Exponent::Third, var)?,
        two_thirds: IntegrandSpec::new(g1 * &rr, r.clone(), Exponent::TwoThirds, var)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_integrand;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn form(r: &Poly) -> CanonicalCubicForm {
        let (t, roots) = cubic_roots(r, &FieldTower::rationals()).unwrap();
        canonical_form(r, [&roots[0], &roots[1], &roots[2]], &t).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let cf = form(&Poly::from_ints(&[-1, 0, 0, 1]));
        assert_eq!(cf.alpha, ProjectivePoint::from(0));
        assert!(cf.beta.is_infinity());
        assert!(cf.c.is_one() && cf.k.is_one());
        let cf = form(&Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(cf.s, MoebiusMap::from_ints(1, -3, 1, 1).unwrap());
        assert_eq!(cf.c, FieldElement::from(4));
        assert!(cf.k.is_one());
        let a = cf.alpha.finite().unwrap();
        assert_eq!(a * a, FieldElement::from(-3));
        assert!(a.approx().im > 0.0);
        let cf = form(&Poly::from_ints(&[-6, 11, -6, 1]));
        assert_eq!(cf.s, MoebiusMap::from_ints(5, -13, 3, -7).unwrap());
        assert!(!cf.k.is_zero());
    }

    #[test]
    fn h_constructions() {
        let cf = form(&Poly::from_ints(&[-1, 0, 0, 1]));
        assert_eq!(build_h(&RationalFunction::one(), &cf), RationalFunction::one());
        assert_eq!(build_h(&RationalFunction::x(), &cf), RationalFunction::x());
        assert_eq!(build_htilde(&rf(&[0, 0, 1], &[1]), &cf), rf(&[0, 0, 1], &[1]));
        let cf = form(&Poly::from_ints(&[-1, 0, 1]));
        let h = build_h(&RationalFunction::one(), &cf);
        let c0 = cf.scale();
        assert_eq!(h, RationalFunction::new(Poly::constant(c0.clone()), Poly::from_ints(&[1, -1])).unwrap());
        let h1 = eigen_project(&h, 1, &cf.omega);
        assert_eq!(h1, RationalFunction::new(Poly::monomial(c0.clone(), 1), Poly::from_ints(&[1, 0, 0, -1])).unwrap());
        assert_eq!(extract_phi(&h1, 1).unwrap(), RationalFunction::new(Poly::constant(c0.clone()), Poly::from_ints(&[1, -1])).unwrap());
        assert_eq!(&c0 * &c0, FieldElement::from(-12));
    }

    #[test]
    fn projections_of_monomials() {
        let (_, w) = FieldTower::rationals().with_omega().unwrap();
        let z = RationalFunction::x();
        assert_eq!(eigen_project(&z, 1, &w), z);
        assert!(eigen_project(&z, 0, &w).is_zero());
        assert!(eigen_project(&z, 2, &w).is_zero());
        let h0 = rf(&[0, 0, 0, 1, 0, 0, 1], &[-2, 0, 0, 1]);
        assert_eq!(extract_phi(&h0, 0).unwrap(), rf(&[0, 1, 1], &[-2, 1]));
        assert!(extract_phi(&z, 0).is_err());
    }

    #[test]
    fn three_term_projection_sum() {
        let (_, w) = FieldTower::rationals().with_omega().unwrap();
        let h = rf(&[7, 2, 0, 0, 0, 1], &[-2, 0, 0, 1]);
        let c = eigen_components(&h, &w).unwrap();
        for k in 0..3 {
            assert_eq!(c.parts[k].scale_var(&w), c.parts[k].scale(&w.pow(k as i64)));
        }
    }

    fn diag(s: &str) -> CubeDiagnostic {
        cube_diagnose(&parse_integrand(s, "t").unwrap()).unwrap()
    }

    #[test]
    fn example_reductions_third() {
        let d = diag("1/(t^3-1)^(1/3)");
        assert_eq!(d.status, Status::Elementary);
        assert_eq!(d.reductions[0].integrand, rf(&[0, 1], &[1, 0, 0, -1]));
        assert!(d.reductions[1].integrand.is_zero());
        assert_eq!(d.reductions[0].back_text, "(t^3-1)^(1/3)/t");
        let a = d.integrate(true).unwrap();
        assert!(a.verify().unwrap());
        let d = diag("t^2/(t^3-1)^(1/3)");
        assert!(d.reductions[0].integrand.is_zero());
        assert_eq!(d.reductions[1].integrand, RationalFunction::x());
        assert_eq!(d.reductions[1].back_text, "(t^3-1)^(1/3)");
        let a = d.integrate(false).unwrap();
        assert_eq!(a.to_text(), "(1/2)*(t^3-1)^(2/3)");
        let d = diag("(1 + 5*t^2)/(t^3-1)^(1/3)");
        assert_eq!(d.reductions[1].integrand, rf(&[0, 5], &[1]));
    }

    #[test]
    fn example_reductions_two_thirds() {
        let d = diag("t/(t^3-1)^(2/3)");
        assert_eq!(d.status, Status::Elementary);
        assert_eq!(d.reductions[0].integrand, rf(&[0, -1], &[-1, 0, 0, 1]));
        assert_eq!(d.reductions[0].back_text, "t/(t^3-1)^(1/3)");
        assert!(d.integrate(false).unwrap().verify().unwrap());
        let d = diag("t^2/(t^3-1)^(2/3)");
        assert_eq!(d.reductions[1].integrand, RationalFunction::one());
        let d = diag("1/(t^3-1)^(2/3)");
        assert_eq!(d.status, Status::ObstructedCertified);
        assert_eq!(d.witness, Some(RationalFunction::one()));
    }

    #[test]
    fn obstructions() {
        let d = diag("t/(t^3-1)^(1/3)");
        assert_eq!(d.status, Status::ObstructedCertified);
        assert_eq!(d.witness, Some(RationalFunction::x()));
        assert_eq!(d.phi_witness(), Some(&RationalFunction::one()));
        assert_eq!(d.obstruction_text().unwrap(), "(1/3)*∫dx/(x*(x - 1))^(1/3)");
        let d = diag("1/(t^2-1)^(1/3)");
        assert_eq!(d.status, Status::ObstructedCertified);
        assert_eq!(d.canonical.c, FieldElement::from(4));
        let d = diag("(1 + 5*t^2 - 7*t/(t^3+1))/(t^3-1)^(1/3)");
        assert_eq!(d.status, Status::ObstructedInconclusive);
        assert_eq!(d.obstruction_text().unwrap(), "-(7/3)*∫dx/((x + 1)*(x*(x - 1))^(1/3))");
        let a = d.integrate(false).unwrap();
        assert!(a.verify().unwrap());
        assert_eq!(a.remainder.len(), 1);
    }

    #[test]
    fn exact_witness_is_elementary() {
        let d = diag("(2*t^4 - t)/(t^3-1)^(1/3)");
        assert!(d.witness.is_some());
        assert_eq!(d.status, Status::Elementary);
        let a = d.integrate(false).unwrap();
        assert!(a.verify().unwrap());
        assert!(a.remainder.is_empty());
    }

    #[test]
    fn degree_two_and_general_cubic_pipelines() {
        for s in ["t^2/(t^2-1)^(1/3)", "(t-1)/(t^2-1)^(2/3)", "1/((t-1)*(t-2)*(t-3))^(1/3)", "t/((t-1)*(t-2)*(t-3))^(2/3)"] {
            let d = diag(s);
            let a = d.integrate(false).unwrap();
            assert!(a.verify().unwrap(), "{s}");
        }
    }

    #[test]
    fn split_into_pieces() {
        let r = Poly::from_ints(&[-1, 0, 0, 1]);
        let s = field_split(&RationalFunction::x(), &RationalFunction::one(), &RationalFunction::one(), &r, "t").unwrap();
        assert_eq!(s.rational, RationalFunction::x());
        assert_eq!(s.third.f, RationalFunction::from(r.clone()));
        assert_eq!(s.two_thirds.exponent, Exponent::TwoThirds);
    }
}
