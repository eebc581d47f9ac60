use proptest::prelude::*;
use tropres::random::{poly_on, random_curve, random_support, trial_rng};
use tropres::subdivision::{dual_complex, regular_subdivision, verify_duality};
use tropres::{Exp2, Q, TropPoly2};

fn poly(s: &str) -> TropPoly2 {
    s.parse().unwrap()
}

#[test]
fn named_curves_are_dual_to_their_subdivisions() {
    for s in ["0+0x+0y", "0+1x+1y+1xy+0x²+0y²", "3x^2y", "0+1x+0x^2", "0+0x^3+0y^3+2xy", "0+0x+0y+0xy"] {
        let bad = verify_duality(&poly(s));
        assert!(bad.is_empty(), "{s}: {bad:?}");
    }
}

#[test]
fn seeded_random_curves() {
    for idx in 0..200 {
        let f = random_curve(0xd0a1, idx);
        let bad = verify_duality(&f);
        assert!(bad.is_empty(), "{f}: {bad:?}");
    }
}

#[test]
fn a_monomial_has_one_unbounded_region_and_no_edges() {
    let c = dual_complex(&poly("3x^2y"));
    assert!(c.edges.is_empty() && c.vertices.is_empty());
    assert_eq!(c.faces.len(), 1);
    assert!(!c.faces[0].bounded);
}

#[test]
fn interior_point_of_a_subdivision_bounds_a_region() {
    let c = dual_complex(&poly("0+0x^3+0y^3+2xy"));
    let inner: Vec<_> = c.faces.iter().filter(|f| f.bounded).collect();
    assert_eq!(inner.len(), 1);
    assert_eq!(inner[0].exponent, Exp2::new(1, 1));
}

fn curve_strategy() -> impl Strategy<Value = TropPoly2> {
    (any::<u64>(), 0u64..1000).prop_map(|(seed, idx)| {
        let mut rng = trial_rng(seed, idx);
        let s = random_support(&mut rng, 10, 4);
        poly_on(&mut rng, &s)
    })
}

proptest! {
    #[test]
    fn duality_holds(f in curve_strategy()) {
        let bad = verify_duality(&f);
        prop_assert!(bad.is_empty(), "{}: {:?}", f, bad);
    }

    #[test]
    fn adding_a_constant_keeps_the_subdivision(f in curve_strategy(), c in -20i64..20) {
        let g = f.add_constant(&Q::from_integer(c.into()));
        let a = regular_subdivision(&f);
        let b = regular_subdivision(&g);
        let cells = |s: &tropres::subdivision::Subdivision| {
            let mut v: Vec<_> = s.cells.iter().map(|c| (c.dim, c.point_set())).collect();
            v.sort();
            v
        };
        prop_assert_eq!(cells(&a), cells(&b));
    }

    #[test]
    fn a_monomial_factor_translates_the_subdivision(f in curve_strategy(), i in 0u32..3, j in 0u32..3) {
        let g = f.mul_monomial(Exp2::new(i, j));
        let shift = |s: &tropres::subdivision::Subdivision, di: u32, dj: u32| {
            let mut v: Vec<_> = s
                .cells
                .iter()
                .map(|c| (c.dim, c.points.iter().map(|e| Exp2::new(e.i + di, e.j + dj)).collect::<std::collections::BTreeSet<_>>()))
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(shift(&regular_subdivision(&f), i, j), shift(&regular_subdivision(&g), 0, 0));
    }
}
