use goursat_core::cube_goursat::{canonical_form, cubic_roots, eigen_project, field_split};
use goursat_core::expr::{format_ratfun, parse_integrand, parse_ratfun, Exponent, IntegrandSpec};
use goursat_core::pipeline::{self, Status};
use goursat_core::{FieldElement, FieldTower, Poly, RationalFunction};
use proptest::prelude::*;

fn rat(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
}

fn coeffs(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, len)
}

fn ratfun() -> impl Strategy<Value = RationalFunction> {
    (coeffs(1..=4), coeffs(1..=3)).prop_filter_map("zero denominator", |(n, d)| {
        let d = Poly::from_ints(&d);
        if d.is_zero() {
            return None;
        }
        RationalFunction::new(Poly::from_ints(&n), d).ok()
    })
}

fn scalar() -> impl Strategy<Value = FieldElement> {
    (-9i64..=9, 1i64..=5).prop_filter_map("zero", |(a, b)| (a != 0).then(|| FieldElement::rational(a, b)))
}

fn quartic() -> Poly {
    Poly::from_ints(&[4, 0, -5, 0, 1])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn printed_functions_parse_back(f in ratfun()) {
        let text = format_ratfun(&f, "t");
        prop_assert_eq!(parse_ratfun(&text, "t").unwrap(), f);
    }

    #[test]
    fn sqrt_projections_are_linear(f in ratfun(), g in ratfun(), k in scalar()) {
        let proj = |h: &RationalFunction| {
            let s = IntegrandSpec::new(h.clone(), quartic(), Exponent::Half, "t").unwrap();
            pipeline::diagnose(&s).unwrap().sqrt().unwrap().projections.clone()
        };
        let (pf, pg) = (proj(&f), proj(&g));
        let sum = proj(&(&f.scale(&k) + &g));
        prop_assert_eq!(sum.f0, &pf.f0.scale(&k) + &pg.f0);
        prop_assert_eq!(sum.f1, &pf.f1.scale(&k) + &pg.f1);
        prop_assert_eq!(sum.f2, &pf.f2.scale(&k) + &pg.f2);
        prop_assert_eq!(sum.f3, &pf.f3.scale(&k) + &pg.f3);
    }

    #[test]
    fn status_ignores_nonzero_scalars(f in ratfun(), k in scalar(), exp in prop::sample::select(vec![Exponent::Half, Exponent::Third, Exponent::TwoThirds])) {
        let r = Poly::from_ints(&[-1, 0, 0, 1]);
        let status = |h: RationalFunction| {
            pipeline::diagnose(&IntegrandSpec::new(h, r.clone(), exp, "t").unwrap()).unwrap().status
        };
        prop_assert_eq!(status(f.clone()), status(f.scale(&k)));
    }

    #[test]
    fn eigen_parts_sum_to_whole(f in ratfun()) {
        let r = Poly::from_ints(&[-6, 11, -6, 1]);
        let (tower, roots) = cubic_roots(&r, &FieldTower::rationals()).unwrap();
        let cf = canonical_form(&r, [&roots[0], &roots[1], &roots[2]], &tower).unwrap();
        let parts: Vec<_> = (0..3).map(|k| eigen_project(&f, k, &cf.omega)).collect();
        prop_assert_eq!(&(&parts[0] + &parts[1]) + &parts[2], f);
    }
}

#[test]
fn field_split_moves_radicand_into_numerators() {
    let r = Poly::from_ints(&[-1, 0, 0, 1]);
    let (g0, g1, g2) = (rat(&[0, 1], &[1]), rat(&[1], &[0, 1]), rat(&[2], &[1]));
    let s = field_split(&g0, &g1, &g2, &r, "t").unwrap();
    assert_eq!(s.rational, g0);
    assert_eq!(s.third.exponent, Exponent::Third);
    assert_eq!(s.third.f, rat(&[-2, 0, 0, 2], &[1]));
    assert_eq!(s.two_thirds.exponent, Exponent::TwoThirds);
    assert_eq!(s.two_thirds.f, rat(&[-1, 0, 0, 1], &[0, 1]));
}

#[test]
fn two_thirds_duality() {
    let cases = [
        ("1/(t^3-1)^(2/3)", false),
        ("t/(t^3-1)^(2/3)", true),
        ("t^2/(t^3-1)^(2/3)", true),
        ("1/(t^3-1)^(1/3)", true),
        ("t/(t^3-1)^(1/3)", false),
    ];
    for (text, want) in cases {
        let rep = pipeline::diagnose(&parse_integrand(text, "t").unwrap()).unwrap();
        assert_eq!(rep.status == Status::Elementary, want, "{text}");
    }
}

#[test]
fn integrate_verifies_elementary_cases() {
    for text in ["t^2/(t^3-1)^(1/3)", "1/(t^3-1)^(1/3)", "t/((t^2-1)*(t^2-4))^(1/2)", "(1/t)/((t-1)*(t-2)*(t-3))^(1/2)"] {
        let s = parse_integrand(text, "t").unwrap();
        let rep = pipeline::integrate(&s, false).unwrap();
        assert_eq!(rep.verified, Some(true), "{text}");
    }
}
