//! Regular subdivisions of Newton polygons and the dual tropical curve.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::polytope::{integer_length, newton_polygon, primitive, Lattice, Polygon};
use crate::rational::{common_denominator, q, qf, QPoint, Q};
use crate::trop::{Exp2, TropPoly2};

/// A cell of a regular subdivision: the support points lying on one upper
/// facet of the lifted point set, together with a point in the relative
/// interior of its dual cell (where the argmax is exactly `points`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub points: Vec<Exp2>,
    pub dim: u8,
    pub witness: QPoint,
}

impl Cell {
    pub fn polygon(&self) -> Polygon {
        Polygon::of_exponents(&self.points)
    }

    pub fn point_set(&self) -> BTreeSet<Exp2> {
        self.points.iter().copied().collect()
    }
}

/// Affine dimension of a finite lattice point set.
pub fn affine_dim<'a>(points: impl IntoIterator<Item = &'a Exp2>) -> u8 {
    Polygon::of_exponents(points).dim()
}

#[derive(Clone, Debug, Serialize)]
pub struct Subdivision {
    pub parent: Polygon,
    pub cells: Vec<Cell>,
    #[serde(serialize_with = "serialize_lift")]
    pub lift: BTreeMap<Exp2, Q>,
}

fn serialize_lift<S: serde::Serializer>(lift: &BTreeMap<Exp2, Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(lift.len()))?;
    for (e, c) in lift {
        seq.serialize_element(&(e, crate::rational::fmt_q(c)))?;
    }
    seq.end()
}

impl Subdivision {
    pub fn cells_of_dim(&self, dim: u8) -> impl Iterator<Item = (usize, &Cell)> {
        self.cells.iter().enumerate().filter(move |(_, c)| c.dim == dim)
    }
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction.
pub fn primitive_of(v: &QPoint) -> Lattice {
    let den = common_denominator([&v.x, &v.y]);
    let den = Q::from_integer(den);
    let x = (&v.x * &den).to_integer();
    let y = (&v.y * &den).to_integer();
    let to_i64 = |b: num_bigint::BigInt| -> i64 { i64::try_from(b).expect("direction fits in i64") };
    primitive((to_i64(x), to_i64(y)))
}

fn lattice_q(v: Lattice) -> QPoint {
    QPoint::from_ints(v.0, v.1)
}

fn exp_diff(a: Exp2, b: Exp2) -> Lattice {
    (a.i as i64 - b.i as i64, a.j as i64 - b.j as i64)
}

/// Moves from `start` along `dir` by shrinking steps until the argmax is
/// exactly `{target}`.
fn region_witness(f: &TropPoly2, start: &QPoint, dir: Lattice, target: Exp2) -> QPoint {
    let dir = lattice_q(dir);
    let mut step = q(1);
    for _ in 0..200 {
        let p = start.add(&dir.scale(&step));
        let ev = f.eval(&p);
        if ev.argmax.len() == 1 && ev.argmax.contains(&target) {
            return p;
        }
        step *= qf(1, 2);
    }
    panic!("no region witness found for {target:?}");
}

/// Regular subdivision of the Newton polygon induced by the coefficients.
pub fn regular_subdivision(f: &TropPoly2) -> Subdivision {
    let parent = newton_polygon(f);
    let lift = f.terms().clone();
    let cells = match parent.dim() {
        0 => {
            let e = *f.terms().keys().next().expect("nonempty");
            vec![Cell { points: vec![e], dim: 0, witness: QPoint::from_ints(0, 0) }]
        }
        1 => collinear_cells(f, &parent),
        _ => planar_cells(f),
    };
    Subdivision { parent, cells, lift }
}

fn collinear_cells(f: &TropPoly2, parent: &Polygon) -> Vec<Cell> {
    let v = parent.vertices();
    let base = v[0];
    let d = primitive((v[1].0 - base.0, v[1].1 - base.1));
    let dq = lattice_q(d);
    let dd = dq.norm2();
    // position of each support point along the segment
    let pos = |e: Exp2| -> i64 {
        let (dx, dy) = (e.i as i64 - base.0, e.j as i64 - base.1);
        if d.0 != 0 { dx / d.0 } else { dy / d.1 }
    };
    let mut pts: Vec<(i64, Exp2, Q)> = f.terms().iter().map(|(&e, c)| (pos(e), e, c.clone())).collect();
    pts.sort_by_key(|t| t.0);
    // upper hull of (pos, coeff), collinear points dropped from the chain
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..pts.len() {
        while hull.len() >= 2 {
            let (a, b) = (&pts[hull[hull.len() - 2]], &pts[hull[hull.len() - 1]]);
            let c = &pts[k];
            let lhs = (&b.2 - &a.2) * q(c.0 - a.0);
            let rhs = (&c.2 - &a.2) * q(b.0 - a.0);
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut cells = Vec::new();
    for w in hull.windows(2) {
        let (u, wv) = (&pts[w[0]], &pts[w[1]]);
        let len = wv.0 - u.0;
        let s = (&u.2 - &wv.2) / (q(len) * &dd);
        let witness = dq.scale(&s);
        let ev = f.eval(&witness);
        debug_assert!(ev.argmax.contains(&u.1) && ev.argmax.contains(&wv.1));
        cells.push(Cell { points: ev.argmax.into_iter().collect(), dim: 1, witness });
    }
    for (k, &h) in hull.iter().enumerate() {
        let e = pts[h].1;
        let (start, toward) = if k + 1 < hull.len() {
            (&cells[k].witness, exp_diff(e, pts[hull[k + 1]].1))
        } else {
            (&cells[k - 1].witness, exp_diff(e, pts[hull[k - 1]].1))
        };
        let witness = region_witness(f, start, toward, e);
        cells.push(Cell { points: vec![e], dim: 0, witness });
    }
    cells
}

fn planar_cells(f: &TropPoly2) -> Vec<Cell> {
    let terms: Vec<(Exp2, Q)> = f.terms().iter().map(|(&e, c)| (e, c.clone())).collect();
    let n = terms.len();
    let mut facets: BTreeMap<QPoint, BTreeSet<Exp2>> = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ea, eb, ec) = (terms[a].0, terms[b].0, terms[c].0);
                let u = exp_diff(eb, ea);
                let v = exp_diff(ec, ea);
                let det = u.0 * v.1 - u.1 * v.0;
                if det == 0 {
                    continue;
                }
                // u·p = a_a − a_b, v·p = a_a − a_c
                let r1 = &terms[a].1 - &terms[b].1;
                let r2 = &terms[a].1 - &terms[c].1;
                let detq = q(det);
                let x = (&r1 * q(v.1) - &r2 * q(u.1)) / &detq;
                let y = (&r2 * q(u.0) - &r1 * q(v.0)) / &detq;
                let p = QPoint::new(x, y);
                if facets.contains_key(&p) {
                    continue;
                }
                let ev = f.eval(&p);
                if ev.argmax.contains(&ea) && ev.argmax.contains(&eb) && ev.argmax.contains(&ec) {
                    facets.insert(p, ev.argmax);
                }
            }
        }
    }

    let mut cells: Vec<Cell> = Vec::new();
    let mut edges: BTreeMap<Vec<Exp2>, Vec<(QPoint, Lattice)>> = BTreeMap::new();
    let mut vertices: BTreeMap<Exp2, (QPoint, Lattice)> = BTreeMap::new();
    for (p, pts) in &facets {
        let poly = Polygon::of_exponents(pts);
        let vs = poly.vertices();
        for k in 0..vs.len() {
            let (s, t) = (vs[k], vs[(k + 1) % vs.len()]);
            let on: Vec<Exp2> = pts
                .iter()
                .copied()
                .filter(|e| Polygon::hull([s, t]).contains(e.as_i64()))
                .collect();
            // outward normal of a counterclockwise edge
            let normal = primitive((t.1 - s.1, s.0 - t.0));
            edges.entry(on).or_default().push((p.clone(), normal));
            let prev = vs[(k + vs.len() - 1) % vs.len()];
            let n1 = primitive((s.1 - prev.1, prev.0 - s.0));
            let cone = (n1.0 + normal.0, n1.1 + normal.1);
            vertices.entry(Exp2::new(s.0 as u32, s.1 as u32)).or_insert((p.clone(), cone));
        }
        cells.push(Cell { points: pts.iter().copied().collect(), dim: 2, witness: p.clone() });
    }
    for (pts, adj) in edges {
        let witness = match adj.as_slice() {
            [(p1, _), (p2, _)] => p1.midpoint(p2),
            [(p, normal)] => p.add(&lattice_q(*normal)),
            other => panic!("subdivision edge shared by {} cells", other.len()),
        };
        cells.push(Cell { points: pts, dim: 1, witness });
    }
    for (e, (p, cone)) in vertices {
        let witness = region_witness(f, &p, cone, e);
        cells.push(Cell { points: vec![e], dim: 0, witness });
    }
    cells
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EdgeShape {
    Segment { from: QPoint, to: QPoint },
    Ray { from: QPoint },
    Line { through: QPoint },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveVertex {
    pub point: QPoint,
    /// Index of the dual 2-cell in the subdivision.
    pub cell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveEdge {
    #[serde(flatten)]
    pub shape: EdgeShape,
    /// Primitive direction: from `from` to `to` for segments, outward for rays.
    pub direction: Lattice,
    pub weight: u64,
    /// Index of the dual 1-cell in the subdivision.
    pub cell: usize,
}

impl CurveEdge {
    /// Base point, direction and parameter range `[lo, hi]` with `None`
    /// standing for an infinite end.
    pub fn parametrize(&self) -> (QPoint, QPoint, Option<Q>, Option<Q>) {
        let d = lattice_q(self.direction);
        match &self.shape {
            EdgeShape::Segment { from, to } => {
                let diff = to.sub(from);
                let len = if !d.x.is_zero() { &diff.x / &d.x } else { &diff.y / &d.y };
                (from.clone(), d, Some(Q::zero()), Some(len))
            }
            EdgeShape::Ray { from } => (from.clone(), d, Some(Q::zero()), None),
            EdgeShape::Line { through } => (through.clone(), d, None, None),
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.shape, EdgeShape::Segment { .. })
    }

    /// A point in the relative interior.
    pub fn interior_point(&self) -> QPoint {
        match &self.shape {
            EdgeShape::Segment { from, to } => from.midpoint(to),
            EdgeShape::Ray { from } => from.add(&lattice_q(self.direction)),
            EdgeShape::Line { through } => through.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveFace {
    pub exponent: Exp2,
    pub bounded: bool,
    /// Index of the dual 0-cell in the subdivision.
    pub cell: usize,
}

/// The tropical curve as a weighted polyhedral complex dual to the
/// regular subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropCurveComplex {
    pub vertices: Vec<CurveVertex>,
    pub edges: Vec<CurveEdge>,
    pub faces: Vec<CurveFace>,
}

impl TropCurveComplex {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Weighted sum of primitive directions leaving the vertex.
    pub fn balancing_sum(&self, vertex: usize) -> Lattice {
        let p = &self.vertices[vertex].point;
        let mut sum = (0i64, 0i64);
        for e in &self.edges {
            let w = e.weight as i64;
            let sign = match &e.shape {
                EdgeShape::Segment { from, to } if from == p => Some(1),
                EdgeShape::Segment { to, .. } if to == p => Some(-1),
                EdgeShape::Ray { from } if from == p => Some(1),
                _ => None,
            };
            if let Some(s) = sign {
                sum.0 += s * w * e.direction.0;
                sum.1 += s * w * e.direction.1;
            }
        }
        sum
    }
}

pub fn dual_complex(f: &TropPoly2) -> TropCurveComplex {
    dual_complex_of(&regular_subdivision(f))
}

/// Builds the dual complex of an already computed subdivision.
pub fn dual_complex_of(sub: &Subdivision) -> TropCurveComplex {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    let two_cells: Vec<(usize, BTreeSet<Exp2>)> =
        sub.cells_of_dim(2).map(|(k, c)| (k, c.point_set())).collect();
    for (k, _) in &two_cells {
        vertices.push(CurveVertex { point: sub.cells[*k].witness.clone(), cell: *k });
    }
    for (k, cell) in sub.cells_of_dim(1) {
        let ends = Polygon::of_exponents(&cell.points);
        let (a, b) = (ends.vertices()[0], ends.vertices()[1]);
        let weight = integer_length(a, b);
        let along = primitive((b.0 - a.0, b.1 - a.1));
        let normal = (-along.1, along.0);
        let set = cell.point_set();
        let adjacent: Vec<&QPoint> = two_cells
            .iter()
            .filter(|(_, pts)| set.is_subset(pts))
            .map(|(c, _)| &sub.cells[*c].witness)
            .collect();
        let (shape, direction) = match adjacent.as_slice() {
            [] => {
                let n = if normal.0 < 0 || (normal.0 == 0 && normal.1 < 0) { (-normal.0, -normal.1) } else { normal };
                (EdgeShape::Line { through: cell.witness.clone() }, n)
            }
            [p] => {
                let dir = primitive_of(&cell.witness.sub(p));
                (EdgeShape::Ray { from: (*p).clone() }, dir)
            }
            [p1, p2] => {
                let dir = primitive_of(&p2.sub(p1));
                (EdgeShape::Segment { from: (*p1).clone(), to: (*p2).clone() }, dir)
            }
            _ => panic!("1-cell adjacent to more than two 2-cells"),
        };
        edges.push(CurveEdge { shape, direction, weight, cell: k });
    }
    for (k, cell) in sub.cells_of_dim(0) {
        let e = cell.points[0];
        faces.push(CurveFace { exponent: e, bounded: !sub.parent.on_boundary(e.as_i64()), cell: k });
    }
    TropCurveComplex { vertices, edges, faces }
}

/// Euclidean distance squared between two rational points.
pub fn dist2(a: &QPoint, b: &QPoint) -> Q {
    a.sub(b).norm2()
}

/// True if `p` lies on the closed edge.
pub fn edge_contains(edge: &CurveEdge, p: &QPoint) -> bool {
    let (base, d, lo, hi) = edge.parametrize();
    let diff = p.sub(&base);
    if !diff.cross(&d).is_zero() {
        return false;
    }
    let s = diff.dot(&d) / d.norm2();
    lo.is_none_or(|lo| s >= lo) && hi.is_none_or(|hi| s <= hi)
}

/// Checks the duality between the curve of `f` and its subdivision and
/// returns a description of every violation found: cell counts, argmax on
/// sample points of each cell, orthogonality of edges to their dual
/// segments, weights, boundedness against the boundary of the Newton
/// polygon, and balancing.
pub fn verify_duality(f: &TropPoly2) -> Vec<String> {
    let sub = regular_subdivision(f);
    let cx = dual_complex_of(&sub);
    let mut bad = Vec::new();
    let count = |d: u8| sub.cells_of_dim(d).count();
    if cx.vertices.len() != count(2) || cx.edges.len() != count(1) || cx.faces.len() != count(0) {
        bad.push(format!(
            "cell counts {}/{}/{} vs subdivision {}/{}/{}",
            cx.vertices.len(),
            cx.edges.len(),
            cx.faces.len(),
            count(2),
            count(1),
            count(0)
        ));
    }
    let mut check_argmax = |what: &str, p: &QPoint, cell: usize| {
        let arg = f.eval(p).argmax;
        if arg != sub.cells[cell].point_set() {
            bad.push(format!("{what} at {p}: argmax {arg:?} differs from its dual cell"));
        }
    };
    for v in &cx.vertices {
        check_argmax("vertex", &v.point, v.cell);
    }
    for e in &cx.edges {
        let (base, d, lo, hi) = e.parametrize();
        let params: Vec<Q> = match (lo, hi) {
            (Some(lo), Some(hi)) => [qf(1, 4), qf(1, 2), qf(3, 4)].iter().map(|t| &lo + (&hi - &lo) * t).collect(),
            (Some(lo), None) => vec![&lo + q(1), &lo + qf(7, 2)],
            _ => vec![q(-3), q(0), qf(5, 2)],
        };
        for t in params {
            check_argmax("edge", &base.add(&d.scale(&t)), e.cell);
        }
    }
    for face in &cx.faces {
        check_argmax("region", &sub.cells[face.cell].witness, face.cell);
    }
    let doubled = sub.parent.scale(2);
    for e in &cx.edges {
        let ends = Polygon::of_exponents(&sub.cells[e.cell].points);
        let (a, b) = (ends.vertices()[0], ends.vertices()[1]);
        if e.direction.0 * (b.0 - a.0) + e.direction.1 * (b.1 - a.1) != 0 {
            bad.push(format!("edge direction {:?} not orthogonal to its dual segment", e.direction));
        }
        if e.weight != integer_length(a, b) {
            bad.push(format!("edge weight {} differs from lattice length", e.weight));
        }
        let on_boundary = doubled.on_boundary((a.0 + b.0, a.1 + b.1));
        if e.is_bounded() == on_boundary {
            bad.push(format!("edge dual to {a:?}-{b:?}: bounded {} but boundary {on_boundary}", e.is_bounded()));
        }
    }
    for face in &cx.faces {
        let incident: Vec<&CurveEdge> =
            cx.edges.iter().filter(|e| sub.cells[e.cell].points.contains(&face.exponent)).collect();
        let bounded = !incident.is_empty() && incident.iter().all(|e| e.is_bounded());
        if bounded != face.bounded {
            bad.push(format!("region of {:?} has inconsistent boundedness", face.exponent));
        }
    }
    for (k, v) in cx.vertices.iter().enumerate() {
        if cx.vertices[..k].iter().any(|w| w.point == v.point) {
            bad.push(format!("vertex {} repeated", v.point));
        }
        let s = cx.balancing_sum(k);
        if s != (0, 0) {
            bad.push(format!("vertex {} unbalanced by {s:?}", v.point));
        }
    }
    bad
}
