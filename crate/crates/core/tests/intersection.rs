use std::collections::BTreeMap;

use proptest::prelude::*;
use tropres::polytope::{mixed_volume, Polygon};
use tropres::random::{bernstein_pair, poly_on, random_support, trial_rng};
use tropres::stable::{
    bernstein_bound, mixed_cells, oracle_directions, oracle_intersection, stable_intersection, total_multiplicity,
    StablePoint,
};
use tropres::subdivision::dual_complex;
use tropres::{QPoint, TropPoly2, Q};

fn poly(s: &str) -> TropPoly2 {
    s.parse().unwrap()
}

/// Multiplicities computed point by point: at each vertex of the union of
/// the two curves, the mixed area of the two argmax polygons.
fn brute_force(f: &TropPoly2, g: &TropPoly2) -> Vec<StablePoint> {
    let mut out = Vec::new();
    for v in dual_complex(&f.mul(g)).vertices {
        let pf = Polygon::of_exponents(&f.eval(&v.point).argmax);
        let pg = Polygon::of_exponents(&g.eval(&v.point).argmax);
        let m = mixed_volume(&pf, &pg);
        if m > 0 {
            out.push(StablePoint { point: v.point, multiplicity: m });
        }
    }
    out.sort();
    out
}

fn shifted(points: &[StablePoint], u: &QPoint) -> Vec<StablePoint> {
    let mut v: Vec<StablePoint> =
        points.iter().map(|p| StablePoint { point: p.point.add(u), multiplicity: p.multiplicity }).collect();
    v.sort();
    v
}

#[test]
fn bernstein_count_on_seeded_pairs() {
    for idx in 0..200 {
        let (f, g) = bernstein_pair(0xbe25, idx);
        let pts = stable_intersection(&f, &g);
        assert_eq!(total_multiplicity(&pts), bernstein_bound(&f, &g), "{f} / {g}");
    }
}

#[test]
fn oracle_agrees_in_three_directions() {
    for idx in 0..60 {
        let (f, g) = bernstein_pair(0x0a0c, idx);
        let expect = stable_intersection(&f, &g);
        for d in oracle_directions(&f, &g, 3, idx) {
            let got = oracle_intersection(&f, &g, &d).unwrap();
            assert_eq!(got, expect, "{f} / {g} along {d}");
        }
    }
}

#[test]
fn refinement_matches_mixed_cells() {
    for idx in 0..200 {
        let (f, g) = bernstein_pair(0x5e1f, idx);
        assert_eq!(stable_intersection(&f, &g), brute_force(&f, &g), "{f} / {g}");
    }
}

#[test]
fn mixed_cells_tile_the_minkowski_sum() {
    for idx in 0..100 {
        let (f, g) = bernstein_pair(0x711e, idx);
        let cells = mixed_cells(&f, &g);
        let total: Q = cells.iter().filter(|c| c.kind.2 == 2).map(|c| Polygon::of_exponents(&c.sum).area()).sum();
        let sum = tropres::polytope::minkowski_sum(
            &tropres::polytope::newton_polygon(&f),
            &tropres::polytope::newton_polygon(&g),
        );
        assert_eq!(total, sum.area(), "{f} / {g}");
    }
}

#[test]
fn conic_with_itself() {
    let c = poly("0+1x+1y+1xy+0x²+0y²");
    let pts = stable_intersection(&c, &c);
    let got: Vec<(QPoint, u64)> = pts.into_iter().map(|p| (p.point, p.multiplicity)).collect();
    let mut want: Vec<(QPoint, u64)> =
        [(-1, -1), (0, 1), (1, 0), (0, 0)].iter().map(|&(x, y)| (QPoint::from_ints(x, y), 1)).collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn a_line_meets_a_conic_twice() {
    let pts = stable_intersection(&poly("0+0x+0y"), &poly("0+0x^2+0y^2+3xy"));
    assert_eq!(total_multiplicity(&pts), 2);
}

fn pair_strategy() -> impl Strategy<Value = (TropPoly2, TropPoly2)> {
    (any::<u64>(), 0u64..1000).prop_map(|(seed, idx)| {
        let mut rng = trial_rng(seed, idx);
        let sf = random_support(&mut rng, 7, 3);
        let sg = random_support(&mut rng, 7, 3);
        (poly_on(&mut rng, &sf), poly_on(&mut rng, &sg))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_equals_mixed_volume((f, g) in pair_strategy()) {
        prop_assert_eq!(total_multiplicity(&stable_intersection(&f, &g)), bernstein_bound(&f, &g));
    }

    #[test]
    fn symmetric_in_the_two_curves((f, g) in pair_strategy()) {
        prop_assert_eq!(stable_intersection(&f, &g), stable_intersection(&g, &f));
    }

    #[test]
    fn translation_equivariance((f, g) in pair_strategy(), ux in -6i64..6, uy in -6i64..6, d in 1i64..4) {
        let u = QPoint::new(Q::new(ux.into(), d.into()), Q::new(uy.into(), d.into()));
        let moved = stable_intersection(&f.translate(&u), &g.translate(&u));
        prop_assert_eq!(moved, shifted(&stable_intersection(&f, &g), &u));
    }

    #[test]
    fn swapping_variables_swaps_points((f, g) in pair_strategy()) {
        let mut swapped: Vec<StablePoint> = stable_intersection(&f, &g)
            .into_iter()
            .map(|p| StablePoint { point: QPoint::new(p.point.y.clone(), p.point.x.clone()), multiplicity: p.multiplicity })
            .collect();
        swapped.sort();
        prop_assert_eq!(stable_intersection(&f.swap_variables(), &g.swap_variables()), swapped);
    }

    #[test]
    fn multiplicities_are_local((f, g) in pair_strategy()) {
        let by_point: BTreeMap<QPoint, u64> =
            brute_force(&f, &g).into_iter().map(|p| (p.point, p.multiplicity)).collect();
        for p in stable_intersection(&f, &g) {
            prop_assert_eq!(by_point.get(&p.point), Some(&p.multiplicity));
        }
    }
}
