use std::collections::{BTreeMap, BTreeSet};

use tropres::random::pipeline_pair;
use tropres::resultant::{
    conjecture_sweep, resultant_pipeline, same_trop_variety, stable_via_resultants, sylvester_resultant,
    trop_resultant_wrt_x, trop_resultant_wrt_y, tropicalize_resultant, upper_hull_vertices, CharMode, Monomial,
    SweepConfig, SymPoly, Var,
};
use tropres::stable::{stable_intersection, total_multiplicity, StablePoint};
use tropres::trop::total_multiplicity as root_total;
use tropres::{Error, Root, TropPoly1, TropPoly2, Q};

fn poly(s: &str) -> TropPoly2 {
    s.parse().unwrap()
}

fn set(v: &[u32]) -> BTreeSet<u32> {
    v.iter().copied().collect()
}

fn projection(points: &[StablePoint], coord: impl Fn(&StablePoint) -> Q) -> Vec<Root> {
    let mut acc: BTreeMap<Q, u32> = BTreeMap::new();
    for p in points {
        *acc.entry(coord(p)).or_default() += p.multiplicity as u32;
    }
    acc.into_iter().map(|(value, multiplicity)| Root { value, multiplicity }).collect()
}

#[test]
fn pipeline_matches_stable_intersection() {
    let mut done = 0;
    let mut skipped = 0;
    for idx in 0..150 {
        let (f, g) = pipeline_pair(0x3e50, idx);
        match stable_via_resultants(&f, &g, CharMode::EquiCharZero) {
            Ok(pts) => {
                assert_eq!(pts, stable_intersection(&f, &g), "{f} / {g}");
                done += 1;
            }
            Err(Error::MatrixTooLarge { .. }) => skipped += 1,
            Err(e) => panic!("{f} / {g}: {e}"),
        }
    }
    assert!(done >= 100, "only {done} pairs within size limits ({skipped} skipped)");
}

#[test]
fn resultant_roots_project_the_stable_intersection() {
    for idx in 0..100 {
        let (f, g) = pipeline_pair(0x9a0e, idx);
        let pts = stable_intersection(&f, &g);
        let rx = trop_resultant_wrt_x(&f, &g, CharMode::EquiCharZero).unwrap();
        let ry = trop_resultant_wrt_y(&f, &g, CharMode::EquiCharZero).unwrap();
        assert_eq!(rx.roots(), projection(&pts, |p| p.point.y.clone()), "{f} / {g}");
        assert_eq!(ry.roots(), projection(&pts, |p| p.point.x.clone()), "{f} / {g}");
        assert_eq!(root_total(&rx.roots()) as u64, total_multiplicity(&pts));
    }
}

#[test]
fn pipeline_report_is_consistent() {
    for idx in 0..60 {
        let (f, g) = pipeline_pair(0x7e9c, idx);
        let Ok(r) = resultant_pipeline(&f, &g, CharMode::EquiCharZero) else { continue };
        for c in &r.candidates {
            assert!(f.is_trop_zero(c) && g.is_trop_zero(c));
            assert!(r.x_roots.iter().any(|x| x.value == c.x) && r.y_roots.iter().any(|y| y.value == c.y));
        }
        for p in &r.points {
            assert!(r.candidates.contains(&p.point));
        }
    }
}

#[test]
fn characteristic_modes_of_the_quadratic_resultant() {
    let names = [('a', Var::A(0)), ('b', Var::A(1)), ('c', Var::A(2)), ('p', Var::B(0)), ('q', Var::B(1)), ('r', Var::B(2))];
    let i = set(&[0, 1, 2]);
    let r0 = sylvester_resultant(&i, &i, CharMode::EquiCharZero).unwrap();
    let r2 = sylvester_resultant(&i, &i, CharMode::EquiCharP(2)).unwrap();
    let want0 = SymPoly::parse_with("r^2a^2 - 2racp + c^2p^2 - qrba - qbcp + cq^2a + prb^2", &names).unwrap();
    let want2 = SymPoly::parse_with("r^2a^2 + c^2p^2 + qrba + qbcp + cq^2a + prb^2", &names).unwrap();
    assert_eq!(r0, want0);
    assert_eq!(r2, want2);

    let p1 = tropicalize_resultant(&r0, CharMode::EquiCharZero);
    let p2 = tropicalize_resultant(&r0, CharMode::PAdic(2));
    let p3 = tropicalize_resultant(&r2, CharMode::EquiCharP(2));
    assert_eq!(p1.len(), 7);
    assert!(p1.terms().values().all(|c| *c == Q::from_integer(0.into())));
    let racp = Monomial::new([(Var::A(0), 1), (Var::A(2), 1), (Var::B(0), 1), (Var::B(2), 1)]);
    assert_eq!(p2.coeff(&racp), Some(&Q::from_integer((-1).into())));
    assert_eq!(p3.len(), 6);
    for (x, y) in [(&p1, &p2), (&p1, &p3), (&p2, &p3), (&p1, &p1)] {
        assert!(same_trop_variety(x, y, 200, 11));
        assert!(same_trop_variety(y, x, 200, 12));
    }
    let vertex = upper_hull_vertices(&p1).into_iter().next().unwrap();
    let raised = p1.with_coeff(&vertex, Q::from_integer(1.into()));
    assert!(!same_trop_variety(&p1, &raised, 200, 13));
}

fn supports_up_to(max: u32) -> Vec<BTreeSet<u32>> {
    (1u32..1 << max)
        .map(|mask| std::iter::once(0).chain((1..=max).filter(|k| mask & (1 << (k - 1)) != 0)).collect())
        .collect()
}

#[test]
fn extreme_coefficients_are_units() {
    let mut violations = Vec::new();
    let mut checked = 0;
    for i in supports_up_to(4) {
        for j in supports_up_to(4) {
            let r = sylvester_resultant(&i, &j, CharMode::EquiCharZero).unwrap();
            let t = tropicalize_resultant(&r, CharMode::EquiCharZero);
            for m in upper_hull_vertices(&t) {
                let c = r.coeff(&m);
                if c != 1.into() && c != (-1).into() {
                    violations.push((i.clone(), j.clone(), m.to_string(), c));
                }
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 225);
    for v in &violations {
        eprintln!("extreme coefficient not a unit: I={:?} J={:?} {} has {}", v.0, v.1, v.2, v.3);
    }
    // the dense case is the one covered by the Newton polytope argument
    let dense: Vec<_> = violations
        .iter()
        .filter(|(i, j, _, _)| i.len() == *i.last().unwrap() as usize + 1 && j.len() == *j.last().unwrap() as usize + 1)
        .collect();
    assert!(dense.is_empty(), "{dense:?}");
}

#[test]
fn bidegree_of_resultants() {
    for i in supports_up_to(3) {
        for j in supports_up_to(3) {
            let r = sylvester_resultant(&i, &j, CharMode::EquiCharZero).unwrap();
            assert!(r.is_bihomogeneous(*j.last().unwrap(), *i.last().unwrap()), "{i:?} {j:?}");
        }
    }
}

#[test]
fn small_permanent_sweep() {
    let report =
        conjecture_sweep(&SweepConfig { min_degree: 1, max_degree: 3, trials: 20, seed: 5, allow_large: false }).unwrap();
    assert!(report.discrepancies.is_empty(), "{:?}", report.discrepancies);
    assert!(report.domination_failures.is_empty());
}

#[test]
fn conic_resultants() {
    let c = poly("0+1x+1y+1xy+0x²+0y²");
    let r = resultant_pipeline(&c, &c, CharMode::EquiCharZero).unwrap();
    assert_eq!(r.a, 3);
    assert_eq!(r.res_z, Some(TropPoly1::parse("6z^8+9z^9+9z^10+8z^11+6z^12").unwrap()));
    let zs: Vec<(Q, u32)> = r.z_roots.iter().map(|r| (r.value.clone(), r.multiplicity)).collect();
    let want: Vec<(Q, u32)> = [-3, 0, 1, 2].iter().map(|&v| (Q::from_integer(v.into()), 1)).collect();
    assert_eq!(zs, want);
}
