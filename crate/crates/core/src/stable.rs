//! Mixed subdivisions, stable intersection of two tropical curves, and a
//! perturbation oracle that recovers it by translating one curve.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{mixed_volume, Lattice, Polygon};
use crate::rational::{q, qf, QPoint, Q};
use crate::subdivision::{affine_dim, dist2, dual_complex, CurveEdge, TropCurveComplex};
use crate::trop::{Exp2, TropPoly2};

/// A cell of the subdivision of `Δ_fg` together with its decomposition into
/// a cell of `f` and a cell of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedCell {
    pub cell_f: Vec<Exp2>,
    pub cell_g: Vec<Exp2>,
    pub sum: Vec<Exp2>,
    /// `(dim cell_f, dim cell_g, dim sum)`
    pub kind: (u8, u8, u8),
    /// A point in the relative interior of the dual cell.
    pub witness: QPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StablePoint {
    pub point: QPoint,
    #[serde(rename = "mult")]
    pub multiplicity: u64,
}

fn lattice_q(v: Lattice) -> QPoint {
    QPoint::from_ints(v.0, v.1)
}

fn det(a: Lattice, b: Lattice) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// How two closed edges meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Meet {
    None,
    /// A single point; `interior` is true when it lies in the relative
    /// interior of both edges.
    Point { at: QPoint, interior: bool },
    /// Collinear edges sharing at least one point.
    Overlap,
}

fn in_range(s: &Q, lo: &Option<Q>, hi: &Option<Q>) -> bool {
    lo.as_ref().is_none_or(|lo| s >= lo) && hi.as_ref().is_none_or(|hi| s <= hi)
}

fn at_end(s: &Q, lo: &Option<Q>, hi: &Option<Q>) -> bool {
    lo.as_ref() == Some(s) || hi.as_ref() == Some(s)
}

pub(crate) fn meet(r: &CurveEdge, s: &CurveEdge) -> Meet {
    let (p1, d1, lo1, hi1) = r.parametrize();
    let (p2, d2, lo2, hi2) = s.parametrize();
    let c = d1.cross(&d2);
    let w = p2.sub(&p1);
    if c.is_zero() {
        if !w.cross(&d1).is_zero() {
            return Meet::None;
        }
        // collinear: project the second edge's range onto the first's parameter
        let scale = d2.dot(&d1) / d1.norm2();
        let shift = w.dot(&d1) / d1.norm2();
        let map = |b: &Option<Q>| b.as_ref().map(|v| &shift + v * &scale);
        let (mut a, mut b) = (map(&lo2), map(&hi2));
        if scale.is_negative() {
            std::mem::swap(&mut a, &mut b);
        }
        let lo = match (&lo1, &a) {
            (Some(x), Some(y)) => Some(x.max(y).clone()),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        };
        let hi = match (&hi1, &b) {
            (Some(x), Some(y)) => Some(x.min(y).clone()),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        };
        return match (lo, hi) {
            (Some(l), Some(h)) if l > h => Meet::None,
            _ => Meet::Overlap,
        };
    }
    let t1 = w.cross(&d2) / &c;
    let t2 = w.cross(&d1) / &c;
    if !in_range(&t1, &lo1, &hi1) || !in_range(&t2, &lo2, &hi2) {
        return Meet::None;
    }
    let interior = !at_end(&t1, &lo1, &hi1) && !at_end(&t2, &lo2, &hi2);
    Meet::Point { at: p1.add(&d1.scale(&t1)), interior }
}

/// Vertices of `C_f ∪ C_g`: the vertices of both curves and the points where
/// an edge of one crosses an edge of the other.
pub(crate) fn union_vertices(cf: &TropCurveComplex, cg: &TropCurveComplex) -> BTreeSet<QPoint> {
    let mut out: BTreeSet<QPoint> = cf.vertices.iter().chain(&cg.vertices).map(|v| v.point.clone()).collect();
    for r in &cf.edges {
        for s in &cg.edges {
            if let Meet::Point { at, .. } = meet(r, s) {
                out.insert(at);
            }
        }
    }
    out
}

fn sum_set(a: &BTreeSet<Exp2>, b: &BTreeSet<Exp2>) -> BTreeSet<Exp2> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.add(*y))).collect()
}

fn mixed_cell(f: &TropPoly2, g: &TropPoly2, p: &QPoint) -> MixedCell {
    let af = f.eval(p).argmax;
    let ag = g.eval(p).argmax;
    let sum = sum_set(&af, &ag);
    let kind = (affine_dim(&af), affine_dim(&ag), affine_dim(&sum));
    MixedCell {
        cell_f: af.into_iter().collect(),
        cell_g: ag.into_iter().collect(),
        sum: sum.into_iter().collect(),
        kind,
        witness: p.clone(),
    }
}

/// Sample points in the relative interior of each piece obtained by cutting
/// `edge` at the given points.
fn piece_samples(edge: &CurveEdge, cuts: &BTreeSet<QPoint>) -> Vec<QPoint> {
    let (base, d, lo, hi) = edge.parametrize();
    let dd = d.norm2();
    let mut params: BTreeSet<Q> = BTreeSet::new();
    for p in cuts {
        let diff = p.sub(&base);
        if !diff.cross(&d).is_zero() {
            continue;
        }
        let s = diff.dot(&d) / &dd;
        if in_range(&s, &lo, &hi) {
            params.insert(s);
        }
    }
    if let Some(l) = &lo {
        params.insert(l.clone());
    }
    if let Some(h) = &hi {
        params.insert(h.clone());
    }
    let ps: Vec<Q> = params.into_iter().collect();
    let mut samples = Vec::new();
    if ps.is_empty() {
        samples.push(base.clone());
    } else {
        if lo.is_none() {
            samples.push(base.add(&d.scale(&(&ps[0] - Q::one()))));
        }
        for w in ps.windows(2) {
            samples.push(base.add(&d.scale(&((&w[0] + &w[1]) * qf(1, 2)))));
        }
        if hi.is_none() {
            samples.push(base.add(&d.scale(&(&ps[ps.len() - 1] + Q::one()))));
        }
    }
    samples
}

/// Moves from `start` along `dir` with shrinking steps until `f` and `g`
/// each attain their maximum only at the given exponents.
fn region_point(f: &TropPoly2, g: &TropPoly2, start: &QPoint, dir: &QPoint, ef: Exp2, eg: Exp2) -> QPoint {
    let mut step = q(1);
    for _ in 0..200 {
        let p = start.add(&dir.scale(&step));
        let af = f.eval(&p).argmax;
        let ag = g.eval(&p).argmax;
        if af.len() == 1 && af.contains(&ef) && ag.len() == 1 && ag.contains(&eg) {
            return p;
        }
        step *= qf(1, 2);
    }
    panic!("no region point for ({ef:?}, {eg:?})");
}

fn extreme(points: &[Exp2], dir: Lattice) -> Exp2 {
    *points
        .iter()
        .max_by_key(|e| e.i as i64 * dir.0 + e.j as i64 * dir.1)
        .expect("nonempty cell")
}

/// Cells of the regular subdivision of `Δ_fg` with their provenance.
///
/// The cells are read off the union of the two curves rather than by
/// subdividing the product: vertices of the union give the 2-cells, pieces of
/// edges give the 1-cells and the regions between them give the 0-cells.
pub fn mixed_cells(f: &TropPoly2, g: &TropPoly2) -> Vec<MixedCell> {
    let cf = dual_complex(f);
    let cg = dual_complex(g);
    let verts = union_vertices(&cf, &cg);
    let mut out: Vec<MixedCell> = verts.iter().map(|p| mixed_cell(f, g, p)).collect();
    debug_assert!(out.iter().all(|c| c.kind.2 == 2));

    let mut ones: BTreeMap<(Vec<Exp2>, Vec<Exp2>), MixedCell> = BTreeMap::new();
    for edge in cf.edges.iter().chain(&cg.edges) {
        for p in piece_samples(edge, &verts) {
            let cell = mixed_cell(f, g, &p);
            debug_assert_eq!(cell.kind.2, 1);
            ones.entry((cell.cell_f.clone(), cell.cell_g.clone())).or_insert(cell);
        }
    }

    let mut zeros: BTreeMap<(Exp2, Exp2), MixedCell> = BTreeMap::new();
    for cell in ones.values() {
        let hull = Polygon::of_exponents(&cell.sum);
        let (a, b) = (hull.vertices()[0], hull.vertices()[1]);
        let d = (b.0 - a.0, b.1 - a.1);
        for dir in [d, (-d.0, -d.1)] {
            let key = (extreme(&cell.cell_f, dir), extreme(&cell.cell_g, dir));
            if zeros.contains_key(&key) {
                continue;
            }
            let p = region_point(f, g, &cell.witness, &lattice_q(dir), key.0, key.1);
            zeros.insert(key, mixed_cell(f, g, &p));
        }
    }
    if ones.is_empty() && out.is_empty() {
        // Δ_fg is a single point
        let p = QPoint::from_ints(0, 0);
        out.push(mixed_cell(f, g, &p));
    }
    out.extend(ones.into_values());
    out.extend(zeros.into_values());
    out
}

/// Points of positive intersection multiplicity, sorted by `(x, y)`.
pub fn stable_intersection(f: &TropPoly2, g: &TropPoly2) -> Vec<StablePoint> {
    let cf = dual_complex(f);
    let cg = dual_complex(g);
    let mut out: Vec<StablePoint> = union_vertices(&cf, &cg)
        .into_iter()
        .filter_map(|p| {
            let cell = mixed_cell(f, g, &p);
            if cell.kind.0 == 0 || cell.kind.1 == 0 {
                return None;
            }
            let m = mixed_volume(&Polygon::of_exponents(&cell.cell_f), &Polygon::of_exponents(&cell.cell_g));
            (m > 0).then_some(StablePoint { point: p, multiplicity: m })
        })
        .collect();
    out.sort();
    out
}

/// Sum of the multiplicities.
pub fn total_multiplicity(points: &[StablePoint]) -> u64 {
    points.iter().map(|p| p.multiplicity).sum()
}

/// `m_u·m_v·|det(u, v)|` for edges of weights `m_u`, `m_v` and primitive
/// directions `u`, `v`.
pub fn transversal_mult(r: &CurveEdge, s: &CurveEdge) -> Result<u64> {
    transversal_mult_of(r.weight, r.direction, s.weight, s.direction)
}

pub fn transversal_mult_of(wr: u64, dr: Lattice, ws: u64, ds: Lattice) -> Result<u64> {
    let d = det(dr, ds);
    if d == 0 {
        return Err(Error::NotTransversal);
    }
    Ok(wr * ws * d.unsigned_abs())
}

/// Smallest positive translation parameter `t` at which the combinatorics of
/// `C_f + t·dir` against `C_g` change, or `None` when they never do.
pub fn critical_magnitude(f: &TropPoly2, g: &TropPoly2, dir: &QPoint) -> Option<Q> {
    let cf = dual_complex(f);
    let cg = dual_complex(g);
    let mut best: Option<Q> = None;
    let mut consider = |t: Q| {
        if t.is_positive() && best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    };
    let base = |e: &CurveEdge| e.parametrize().0;
    // a moving vertex of f meets the supporting line of an edge of g
    for v in &cf.vertices {
        for s in &cg.edges {
            let ds = lattice_q(s.direction);
            let c = dir.cross(&ds);
            if !c.is_zero() {
                consider(base(s).sub(&v.point).cross(&ds) / c);
            }
        }
    }
    // a vertex of g meets the moving supporting line of an edge of f
    for w in &cg.vertices {
        for r in &cf.edges {
            let dr = lattice_q(r.direction);
            let c = dir.cross(&dr);
            if !c.is_zero() {
                consider(w.point.sub(&base(r)).cross(&dr) / c);
            }
        }
    }
    // parallel supporting lines coincide
    for r in &cf.edges {
        for s in &cg.edges {
            if det(r.direction, s.direction) == 0 {
                let dr = lattice_q(r.direction);
                let c = dir.cross(&dr);
                if !c.is_zero() {
                    consider(base(s).sub(&base(r)).cross(&dr) / c);
                }
            }
        }
    }
    best
}

/// A translation size for the oracle: below every critical parameter, and
/// small enough that each translated intersection point stays closer to its
/// limit than to any other vertex of `C_f ∪ C_g`.
pub fn admissible_magnitude(f: &TropPoly2, g: &TropPoly2, dir: &QPoint) -> Q {
    let mut t = match critical_magnitude(f, g, dir) {
        Some(c) => c * qf(1, 2),
        None => Q::one(),
    };
    let cf = dual_complex(f);
    let cg = dual_complex(g);
    let limits: Vec<QPoint> = union_vertices(&cf, &cg).into_iter().collect();
    let mut min_d2: Option<Q> = None;
    for a in 0..limits.len() {
        for b in a + 1..limits.len() {
            let d = dist2(&limits[a], &limits[b]);
            if min_d2.as_ref().is_none_or(|m| d < *m) {
                min_d2 = Some(d);
            }
        }
    }
    let mut max_speed2 = Q::zero();
    for r in &cf.edges {
        for s in &cg.edges {
            if det(r.direction, s.direction) == 0 {
                continue;
            }
            let (dr, ds) = (lattice_q(r.direction), lattice_q(s.direction));
            let vel = dir.sub(&dr.scale(&(dir.cross(&ds) / dr.cross(&ds))));
            let sp = vel.norm2();
            if sp > max_speed2 {
                max_speed2 = sp;
            }
        }
    }
    if let Some(m) = min_d2 {
        let bound = m * qf(1, 4);
        while &t * &t * &max_speed2 >= bound {
            t *= qf(1, 2);
        }
    }
    t
}

/// Intersection of `C_f` translated by `magnitude·direction` with `C_g`,
/// every point counted with its transversal multiplicity.
pub fn perturbed_intersection(f: &TropPoly2, g: &TropPoly2, direction: &QPoint, magnitude: &Q) -> Result<Vec<StablePoint>> {
    if !magnitude.is_positive() {
        return Err(Error::DegenerateDirection("magnitude must be positive".into()));
    }
    if let Some(c) = critical_magnitude(f, g, direction) {
        if *magnitude >= c {
            return Err(Error::DegenerateDirection(format!(
                "magnitude {} reaches the critical value {}",
                crate::rational::fmt_q(magnitude),
                crate::rational::fmt_q(&c)
            )));
        }
    }
    let shift = direction.scale(magnitude);
    let cf = dual_complex(&f.translate(&shift));
    let cg = dual_complex(g);
    let mut out = Vec::new();
    for r in &cf.edges {
        for s in &cg.edges {
            match meet(r, s) {
                Meet::None => {}
                Meet::Overlap => {
                    return Err(Error::DegenerateDirection("translated edges overlap".into()));
                }
                Meet::Point { interior: false, at } => {
                    return Err(Error::DegenerateDirection(format!("translated curves meet at a vertex {at}")));
                }
                Meet::Point { at, interior: true } => {
                    out.push(StablePoint { point: at, multiplicity: transversal_mult(r, s)? });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Assigns each point to its nearest center and sums multiplicities per
/// center. Centers receiving nothing are omitted.
pub fn cluster(centers: &[QPoint], points: &[StablePoint]) -> Vec<StablePoint> {
    let mut acc: BTreeMap<QPoint, u64> = BTreeMap::new();
    for p in points {
        let nearest = centers
            .iter()
            .min_by(|a, b| dist2(a, &p.point).cmp(&dist2(b, &p.point)))
            .expect("at least one center");
        *acc.entry(nearest.clone()).or_default() += p.multiplicity;
    }
    acc.into_iter().map(|(point, multiplicity)| StablePoint { point, multiplicity }).collect()
}

/// Random small integer directions, none parallel to an edge of either curve.
pub fn oracle_directions(f: &TropPoly2, g: &TropPoly2, count: usize, seed: u64) -> Vec<QPoint> {
    let mut edge_dirs: BTreeSet<Lattice> = BTreeSet::new();
    for c in [dual_complex(f), dual_complex(g)] {
        edge_dirs.extend(c.edges.iter().map(|e| e.direction));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Lattice> = Vec::new();
    while out.len() < count {
        let d = (rng.gen_range(-9i64..=9), rng.gen_range(-9i64..=9));
        if d == (0, 0) || edge_dirs.iter().any(|&e| det(e, d) == 0) || out.iter().any(|&o| det(o, d) == 0) {
            continue;
        }
        out.push(d);
    }
    out.into_iter().map(lattice_q).collect()
}

/// Stable intersection recovered by translation: perturb along `direction`
/// by an admissible amount and cluster onto the vertices of `C_f ∪ C_g`.
pub fn oracle_intersection(f: &TropPoly2, g: &TropPoly2, direction: &QPoint) -> Result<Vec<StablePoint>> {
    let t = admissible_magnitude(f, g, direction);
    let pts = perturbed_intersection(f, g, direction, &t)?;
    if pts.is_empty() {
        return Ok(pts);
    }
    let centers: Vec<QPoint> = union_vertices(&dual_complex(f), &dual_complex(g)).into_iter().collect();
    Ok(cluster(&centers, &pts))
}

/// Mixed volume of the Newton polygons, the Bernstein count.
pub fn bernstein_bound(f: &TropPoly2, g: &TropPoly2) -> u64 {
    mixed_volume(&crate::polytope::newton_polygon(f), &crate::polytope::newton_polygon(g))
}
