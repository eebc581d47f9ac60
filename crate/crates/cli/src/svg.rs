//! Static SVG figures of tropical curves and stable points.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};
use tropres::rational::{q, QPoint, Q};
use tropres::stable::StablePoint;
use tropres::subdivision::{CurveEdge, EdgeShape, TropCurveComplex};

const SIZE: f64 = 480.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Axis-aligned box `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Viewport {
    pub x0: Q,
    pub x1: Q,
    pub y0: Q,
    pub y1: Q,
}

impl Viewport {
    /// Bounding box of the vertices, line anchors and points, padded by 2.
    pub fn around(curves: &[&TropCurveComplex], points: &[StablePoint]) -> Viewport {
        let mut pts: Vec<QPoint> = points.iter().map(|p| p.point.clone()).collect();
        for c in curves {
            pts.extend(c.vertices.iter().map(|v| v.point.clone()));
            pts.extend(c.edges.iter().filter(|e| matches!(e.shape, EdgeShape::Line { .. })).map(|e| e.parametrize().0));
        }
        if pts.is_empty() {
            pts.push(QPoint::from_ints(0, 0));
        }
        let min = |f: fn(&QPoint) -> &Q| pts.iter().map(f).min().expect("nonempty").clone();
        let max = |f: fn(&QPoint) -> &Q| pts.iter().map(f).max().expect("nonempty").clone();
        let pad = q(2);
        Viewport {
            x0: min(|p| &p.x) - &pad,
            x1: max(|p| &p.x) + &pad,
            y0: min(|p| &p.y) - &pad,
            y1: max(|p| &p.y) + &pad,
        }
    }
}

/// The part of an edge inside the viewport, as parameter bounds.
fn clip(edge: &CurveEdge, vp: &Viewport) -> Option<(QPoint, QPoint)> {
    let (base, dir, lo, hi) = edge.parametrize();
    let mut lo = lo;
    let mut hi = hi;
    for (b, d, min, max) in [(&base.x, &dir.x, &vp.x0, &vp.x1), (&base.y, &dir.y, &vp.y0, &vp.y1)] {
        if d.is_zero() {
            if b < min || b > max {
                return None;
            }
            continue;
        }
        let (mut a, mut c) = ((min - b) / d, (max - b) / d);
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        if lo.as_ref().is_none_or(|l| *l < a) {
            lo = Some(a);
        }
        if hi.as_ref().is_none_or(|h| *h > c) {
            hi = Some(c);
        }
    }
    let (lo, hi) = (lo?, hi?);
    if lo > hi {
        return None;
    }
    Some((base.add(&dir.scale(&lo)), base.add(&dir.scale(&hi))))
}

struct Frame<'a> {
    vp: &'a Viewport,
    sx: f64,
    sy: f64,
}

impl Frame<'_> {
    fn new(vp: &Viewport) -> Frame<'_> {
        let w = (&vp.x1 - &vp.x0).to_f64().unwrap_or(1.0).max(1e-9);
        let h = (&vp.y1 - &vp.y0).to_f64().unwrap_or(1.0).max(1e-9);
        Frame { vp, sx: SIZE / w, sy: SIZE / h }
    }

    fn map(&self, p: &QPoint) -> (f64, f64) {
        let x = (&p.x - &self.vp.x0).to_f64().unwrap_or(0.0) * self.sx;
        let y = (&self.vp.y1 - &p.y).to_f64().unwrap_or(0.0) * self.sy;
        (x, y)
    }
}

/// Curves in distinct colors, stable points as dots labelled by their
/// multiplicity. Output depends only on the inputs.
pub fn render_svg(curves: &[&TropCurveComplex], points: &[StablePoint], vp: &Viewport) -> String {
    let fr = Frame::new(vp);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    for (k, c) in curves.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let _ = writeln!(s, r#"<g stroke="{color}" stroke-width="2" fill="none">"#);
        for e in &c.edges {
            let Some((a, b)) = clip(e, vp) else { continue };
            let ((x1, y1), (x2, y2)) = (fr.map(&a), fr.map(&b));
            let _ = writeln!(s, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
            if e.weight > 1 {
                let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
                let _ = writeln!(
                    s,
                    r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="{color}" stroke="none">{}</text>"#,
                    mx + 4.0,
                    my - 4.0,
                    e.weight
                );
            }
        }
        for v in &c.vertices {
            let (x, y) = fr.map(&v.point);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="{color}"/>"#);
        }
        let _ = writeln!(s, "</g>");
    }
    for p in points {
        let (x, y) = fr.map(&p.point);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="5" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="13" fill="black">{}</text>"#,
            x + 7.0,
            y - 7.0,
            p.multiplicity
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropres::subdivision::dual_complex;
    use tropres::TropPoly2;

    #[test]
    fn line_has_one_vertex_and_three_rays() {
        let f: TropPoly2 = "0+0x+0y".parse().unwrap();
        let c = dual_complex(&f);
        let svg = render_svg(&[&c], &[], &Viewport::around(&[&c], &[]));
        assert_eq!(svg.matches("<line ").count(), 3);
        assert_eq!(svg.matches("<circle ").count(), 1);
        assert_eq!(svg, render_svg(&[&c], &[], &Viewport::around(&[&c], &[])));
    }

    #[test]
    fn viewport_without_vertices_keeps_rays() {
        let f: TropPoly2 = "0+0x+0y".parse().unwrap();
        let c = dual_complex(&f);
        let vp = Viewport { x0: q(5), x1: q(9), y0: q(5), y1: q(9) };
        let svg = render_svg(&[&c], &[], &vp);
        assert_eq!(svg.matches("<line ").count(), 1);
    }
}
