//! Lattice polygons: convex hulls, Minkowski sums, areas and mixed volumes.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::rational::Q;
use crate::trop::{Exp2, TropPoly2};

/// A point of ℤ².
pub type Lattice = (i64, i64);

fn cross(o: Lattice, a: Lattice, b: Lattice) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// Convex lattice polygon stored as a counterclockwise cycle of vertices
/// without collinear triples. A point has one vertex and a segment two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Polygon {
    vertices: Vec<Lattice>,
}

impl Polygon {
    /// Convex hull of a nonempty point set (Andrew's monotone chain).
    pub fn hull(points: impl IntoIterator<Item = Lattice>) -> Polygon {
        let mut pts: Vec<Lattice> = points.into_iter().collect();
        pts.sort_unstable();
        pts.dedup();
        assert!(!pts.is_empty(), "hull of an empty point set");
        if pts.len() <= 2 {
            return Polygon { vertices: pts };
        }
        let mut lower: Vec<Lattice> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Lattice> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        // all points collinear: the chain is [first, last]
        Polygon { vertices: lower }
    }

    pub fn of_exponents<'a>(points: impl IntoIterator<Item = &'a Exp2>) -> Polygon {
        Polygon::hull(points.into_iter().map(|e| e.as_i64()))
    }

    pub fn point(p: Lattice) -> Polygon {
        Polygon { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[Lattice] {
        &self.vertices
    }

    /// 0 for a point, 1 for a segment, 2 otherwise.
    pub fn dim(&self) -> u8 {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Twice the area, always an integer for lattice polygons.
    pub fn double_area(&self) -> i128 {
        let n = self.vertices.len();
        if n < 3 {
            return 0;
        }
        let mut s = 0i128;
        for k in 0..n {
            let (x1, y1) = self.vertices[k];
            let (x2, y2) = self.vertices[(k + 1) % n];
            s += x1 as i128 * y2 as i128 - x2 as i128 * y1 as i128;
        }
        s
    }

    pub fn area(&self) -> Q {
        Q::new(self.double_area().into(), 2.into())
    }

    /// Edge vectors in counterclockwise order starting from the lowest
    /// (then leftmost) vertex. A segment yields its two opposite vectors.
    fn edge_vectors(&self) -> Vec<Lattice> {
        let n = self.vertices.len();
        if n == 1 {
            return Vec::new();
        }
        let start = (0..n)
            .min_by_key(|&k| (self.vertices[k].1, self.vertices[k].0))
            .expect("nonempty");
        (0..n)
            .map(|k| {
                let a = self.vertices[(start + k) % n];
                let b = self.vertices[(start + k + 1) % n];
                (b.0 - a.0, b.1 - a.1)
            })
            .collect()
    }

    fn lowest_vertex(&self) -> Lattice {
        *self.vertices.iter().min_by_key(|v| (v.1, v.0)).expect("nonempty")
    }

    pub fn translate(&self, by: Lattice) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|&(x, y)| (x + by.0, y + by.1)).collect() }
    }

    pub fn scale(&self, k: i64) -> Polygon {
        assert!(k > 0);
        Polygon { vertices: self.vertices.iter().map(|&(x, y)| (k * x, k * y)).collect() }
    }

    pub fn contains(&self, p: Lattice) -> bool {
        match self.vertices.len() {
            1 => self.vertices[0] == p,
            2 => on_segment(self.vertices[0], self.vertices[1], p),
            n => (0..n).all(|k| cross(self.vertices[k], self.vertices[(k + 1) % n], p) >= 0),
        }
    }

    /// True if `p` lies on the relative boundary.
    pub fn on_boundary(&self, p: Lattice) -> bool {
        match self.vertices.len() {
            1 | 2 => self.contains(p),
            n => (0..n).any(|k| on_segment(self.vertices[k], self.vertices[(k + 1) % n], p)),
        }
    }
}

fn on_segment(a: Lattice, b: Lattice, p: Lattice) -> bool {
    cross(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Counterclockwise angular order of nonzero vectors starting at (1, 0).
fn angle_cmp(a: Lattice, b: Lattice) -> std::cmp::Ordering {
    let half = |v: Lattice| u8::from(!(v.1 > 0 || (v.1 == 0 && v.0 > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross((0, 0), a, b)))
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Minkowski sum by merging edge vectors in angular order.
pub fn minkowski_sum(p: &Polygon, r: &Polygon) -> Polygon {
    let start = {
        let a = p.lowest_vertex();
        let b = r.lowest_vertex();
        (a.0 + b.0, a.1 + b.1)
    };
    let mut edges: Vec<Lattice> = p.edge_vectors();
    edges.extend(r.edge_vectors());
    edges.sort_by(|a, b| angle_cmp(*a, *b));
    let mut pts = vec![start];
    let mut cur = start;
    for (dx, dy) in edges {
        cur = (cur.0 + dx, cur.1 + dy);
        pts.push(cur);
    }
    // the walk closes up; re-hulling drops the collinear joints
    Polygon::hull(pts)
}

/// `area(P+R) − area(P) − area(R)`; an integer for lattice polygons.
pub fn mixed_volume(p: &Polygon, r: &Polygon) -> u64 {
    let s = minkowski_sum(p, r);
    let twice = s.double_area() - p.double_area() - r.double_area();
    debug_assert!(twice >= 0 && twice % 2 == 0, "mixed volume {twice}/2");
    (twice / 2) as u64
}

/// Number of lattice points on the closed segment minus one.
pub fn integer_length(a: Lattice, b: Lattice) -> u64 {
    (b.0 - a.0).unsigned_abs().gcd(&(b.1 - a.1).unsigned_abs())
}

/// Primitive lattice direction of a nonzero vector.
pub fn primitive(v: Lattice) -> Lattice {
    let g = (v.0.unsigned_abs()).gcd(&v.1.unsigned_abs()) as i64;
    assert!(g > 0, "zero vector has no direction");
    (v.0 / g, v.1 / g)
}

pub fn newton_polygon(f: &TropPoly2) -> Polygon {
    Polygon::of_exponents(f.terms().keys())
}
