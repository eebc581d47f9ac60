use std::collections::BTreeMap;

use proptest::prelude::*;
use tropres::lifting::{
    alg_resultant_wrt_x, check_lift, compare_resultant, genericity_conditions, lift_generic, residual_polynomial,
    tropicalize_alg, AlgPoly2, ConditionSource, Elimination, PuiseuxScalar,
};
use tropres::resultant::{Monomial, SymPoly, Var};
use tropres::{Exp2, QPoint, TropPoly2, Q};

fn poly(s: &str) -> TropPoly2 {
    s.parse().unwrap()
}

fn conic() -> TropPoly2 {
    poly("0+1x+1y+1xy+0x²+0y²")
}

fn rat(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn scalar() -> impl Strategy<Value = PuiseuxScalar> {
    prop::collection::vec(((-9i64..=9), (-12i64..=12), (1i64..=3)), 0..4)
        .prop_map(|v| PuiseuxScalar::from_terms(v.into_iter().map(|(c, n, d)| (rat(c, 1), rat(n, d)))))
}

proptest! {
    #[test]
    fn ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&PuiseuxScalar::zero()), a.clone());
        prop_assert_eq!(a.mul(&PuiseuxScalar::one()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn valuation_is_multiplicative(a in scalar(), b in scalar()) {
        let ab = a.mul(&b);
        match (a.valuation(), b.valuation()) {
            (Some(x), Some(y)) => {
                prop_assert_eq!(ab.valuation(), Some(&(x + y)));
                prop_assert_eq!(ab.pc(), Some(&(a.pc().unwrap() * b.pc().unwrap())));
            }
            _ => prop_assert!(ab.is_zero()),
        }
    }

    #[test]
    fn valuation_of_a_sum_is_at_least_the_minimum(a in scalar(), b in scalar()) {
        let s = a.add(&b);
        if let (Some(x), Some(y), Some(v)) = (a.valuation(), b.valuation(), s.valuation()) {
            prop_assert!(v >= x.min(y));
            if x != y {
                prop_assert_eq!(v, x.min(y));
            }
        }
    }

    #[test]
    fn text_form_round_trips(a in scalar()) {
        let back: PuiseuxScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn residual_support_is_the_argmax(seed in 0u64..500, qx in -8i64..8, qy in -8i64..8, d in 1i64..4) {
        let f = lift_generic(&tropres::random::random_curve(seed, 0), seed);
        let p = QPoint::new(rat(qx, d), rat(qy, d));
        // substitute x t^{-qx}, y t^{-qy} directly and keep the lowest order terms
        let shifted: BTreeMap<Exp2, PuiseuxScalar> = f
            .terms()
            .iter()
            .map(|(e, c)| (*e, c.mul(&PuiseuxScalar::monomial(rat(1, 1), -e.pair(&p)))))
            .collect();
        let low = shifted.values().filter_map(|c| c.valuation().cloned()).min().unwrap();
        let want: BTreeMap<Exp2, Q> = shifted
            .iter()
            .filter(|(_, c)| c.valuation() == Some(&low))
            .map(|(e, c)| (*e, c.pc().unwrap().clone()))
            .collect();
        let r = residual_polynomial(&f, &p).unwrap();
        prop_assert_eq!(&r.terms, &want);
        let argmax = tropicalize_alg(&f).unwrap().eval(&p).argmax;
        prop_assert!(r.terms.keys().copied().eq(argmax.into_iter()));
    }
}

#[test]
fn lifts_tropicalize_back() {
    for seed in 0..50 {
        let f = tropres::random::random_curve(0x11f7, seed);
        assert_eq!(tropicalize_alg(&lift_generic(&f, seed)).unwrap(), f);
    }
}

#[test]
fn seeded_conic_lifts_are_certified() {
    for seed in 1..=20 {
        let f = lift_generic(&conic(), seed);
        let g = lift_generic(&conic(), seed + 1);
        let cert = check_lift(&f, &g).unwrap();
        assert!(cert.verified, "seed {seed}: {:?}", cert.checks);
        assert_eq!(cert.a, Some(3));
        assert_eq!(cert.checks.len(), 3);
        assert!(cert.checks.iter().all(|c| c.same_roots));
    }
}

#[test]
fn identical_lifts_are_not_generic() {
    let f = lift_generic(&conic(), 9);
    let cert = check_lift(&f, &f).unwrap();
    assert!(!cert.all_satisfied);
    assert!(!cert.verified);
}

/// Splits `p` as `v·A + B` when `v` appears at most linearly.
fn linear_in(p: &SymPoly, v: Var) -> Option<(SymPoly, SymPoly)> {
    let mut a = SymPoly::zero();
    let mut b = SymPoly::zero();
    for (m, c) in p.terms() {
        let rest = Monomial::new(m.factors().iter().filter(|(w, _)| *w != v).copied());
        match m.exponent(v) {
            0 => b.add_term(rest, c.clone()),
            1 => a.add_term(rest, c.clone()),
            _ => return None,
        }
    }
    Some((a, b))
}

fn principal(f: &AlgPoly2, g: &AlgPoly2, v: Var) -> Option<Q> {
    match v {
        Var::Alpha(i, j) => f.principal(Exp2::new(i, j)).cloned(),
        Var::Beta(i, j) => g.principal(Exp2::new(i, j)).cloned(),
        _ => None,
    }
}

fn set_principal(f: &AlgPoly2, e: Exp2, value: Q) -> AlgPoly2 {
    AlgPoly2::new(f.terms().iter().map(|(k, c)| {
        if *k == e {
            let mut terms = c.terms().to_vec();
            terms[0].0 = value.clone();
            (*k, PuiseuxScalar::from_terms(terms))
        } else {
            (*k, c.clone())
        }
    }))
}

#[test]
fn a_lift_solving_a_condition_is_rejected() {
    let c = conic();
    let (f, g) = (lift_generic(&c, 1), lift_generic(&c, 2));
    let cond = genericity_conditions(&c, &c)
        .unwrap()
        .into_iter()
        .find(|k| matches!(k.source, ConditionSource::Resultant { resultant: Elimination::X, .. }))
        .unwrap();
    let vars: Vec<Var> = cond.poly.terms().keys().flat_map(|m| m.factors().iter().map(|(v, _)| *v)).collect();
    let (var, value) = vars
        .iter()
        .find_map(|&v| {
            let (a, b) = linear_in(&cond.poly, v)?;
            let av = a.eval(|w| principal(&f, &g, w)).ok()?;
            let bv = b.eval(|w| principal(&f, &g, w)).ok()?;
            let x = -bv / av.clone();
            (av != Q::from_integer(0.into()) && x != Q::from_integer(0.into())).then_some((v, x))
        })
        .expect("a variable appearing linearly");
    let (f2, g2) = match var {
        Var::Alpha(i, j) => (set_principal(&f, Exp2::new(i, j), value), g.clone()),
        Var::Beta(i, j) => (f.clone(), set_principal(&g, Exp2::new(i, j), value)),
        _ => unreachable!(),
    };
    assert_eq!(tropicalize_alg(&f2).unwrap(), c);
    assert_eq!(tropicalize_alg(&g2).unwrap(), c);
    let cert = check_lift(&f2, &g2).unwrap();
    let hit = cert.conditions.iter().find(|e| e.condition.label == cond.label).unwrap();
    assert!(!hit.satisfied);
    assert!(!cert.verified);
    // the coefficient the condition guards drops below its tropical value
    let check = compare_resultant(&f2, &g2, Elimination::X).unwrap();
    assert!(!check.vertex_coefficients_match, "{check:?}");
}

#[test]
fn resultant_of_a_generic_lift_has_the_expected_valuations() {
    let c = conic();
    let r = alg_resultant_wrt_x(&lift_generic(&c, 4), &lift_generic(&c, 5)).unwrap();
    assert_eq!(r.tropicalize().unwrap().roots(), Elimination::X.tropical(&c, &c).unwrap().roots());
}
