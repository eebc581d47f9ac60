//! Tropical resultants of bivariate tropical polynomials and the
//! three-resultant computation of the stable intersection.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use super::maxplus::{permanent, substitute, Substitution};
use super::sylvester::sylvester_resultant;
use super::tropical::tropicalize_resultant;
use super::CharMode;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, QPoint, Q};
use crate::stable::StablePoint;
use crate::trop::{Exp2, Root, TropPoly1, TropPoly2};

/// Coefficient polynomials of `f = Σ f_i(y) x^i` after dividing out the
/// largest power of `x`.
pub(crate) fn x_coefficients(f: &TropPoly2, which: &str) -> Result<BTreeMap<u32, TropPoly1>> {
    let slices = f.x_slices();
    if slices.len() < 2 {
        return Err(Error::SupportTooSmall(format!(
            "{which} = {f} needs two distinct exponents in the eliminated variable"
        )));
    }
    let shift = *slices.keys().next().expect("nonempty");
    Ok(slices.into_iter().map(|(i, p)| (i - shift, p)).collect())
}

/// Resultant of `f` and `g` with respect to `x`, a tropical polynomial in `y`.
pub fn trop_resultant_wrt_x(f: &TropPoly2, g: &TropPoly2, mode: CharMode) -> Result<TropPoly1> {
    let a = x_coefficients(f, "f")?;
    let b = x_coefficients(g, "g")?;
    let i: BTreeSet<u32> = a.keys().copied().collect();
    let j: BTreeSet<u32> = b.keys().copied().collect();
    let r = sylvester_resultant(&i, &j, mode)?;
    let rt = tropicalize_resultant(&r, mode);
    substitute(&Substitution { resultant: &rt, a, b })
        .ok_or_else(|| Error::Empty("the resultant vanishes in this characteristic".into()))
}

/// Resultant with respect to `y`, a tropical polynomial in `x`.
pub fn trop_resultant_wrt_y(f: &TropPoly2, g: &TropPoly2, mode: CharMode) -> Result<TropPoly1> {
    trop_resultant_wrt_x(&f.swap_variables(), &g.swap_variables(), mode)
}

/// `Res_y(f(z·y^a, y), g(z·y^a, y))`, a tropical polynomial in `z`.
pub fn trop_resultant_wrt_z(f: &TropPoly2, g: &TropPoly2, a: u32, mode: CharMode) -> Result<TropPoly1> {
    trop_resultant_wrt_y(&monomial_substitute(f, a), &monomial_substitute(g, a), mode)
}

/// Realizes `x = z·y^a`: the exponent `(i, j)` becomes `(i, j + a·i)`, the
/// first coordinate now being the exponent of `z`.
pub fn monomial_substitute(f: &TropPoly2, a: u32) -> TropPoly2 {
    TropPoly2::new(f.terms().iter().map(|(e, c)| (Exp2::new(e.i, e.j + a * e.i), c.clone())))
        .expect("the substitution is injective on exponents")
}

fn injective(points: &[QPoint], a: u32) -> bool {
    let aq = q(a as i64);
    let values: BTreeSet<Q> = points.iter().map(|p| &p.x - &aq * &p.y).collect();
    values.len() == points.len()
}

/// Smallest natural `a` such that `x − a·y` separates the points.
pub fn choose_injective_a(points: &[QPoint]) -> u32 {
    let distinct: BTreeSet<&QPoint> = points.iter().collect();
    let pts: Vec<QPoint> = distinct.into_iter().cloned().collect();
    (0..).find(|&a| injective(&pts, a)).expect("a finite set admits a separating a")
}

fn ser_poly<S: Serializer>(p: &TropPoly1, var: &str, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.display_with(var))
}

fn ser_y<S: Serializer>(p: &TropPoly1, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_poly(p, "y", s)
}

fn ser_x<S: Serializer>(p: &TropPoly1, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_poly(p, "x", s)
}

fn ser_z<S: Serializer>(p: &Option<TropPoly1>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => ser_poly(p, "z", s),
        None => s.serialize_none(),
    }
}

fn ser_qs<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(fmt_q).collect();
    strs.serialize(s)
}

/// Every intermediate object of the three-resultant computation.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    #[serde(serialize_with = "ser_y")]
    pub res_x: TropPoly1,
    #[serde(serialize_with = "ser_x")]
    pub res_y: TropPoly1,
    /// Roots of `res_x`: candidate `y` coordinates.
    pub y_roots: Vec<Root>,
    /// Roots of `res_y`: candidate `x` coordinates.
    pub x_roots: Vec<Root>,
    /// Grid points lying on both curves.
    pub candidates: Vec<QPoint>,
    pub a: u32,
    #[serde(serialize_with = "ser_z")]
    pub res_z: Option<TropPoly1>,
    pub z_roots: Vec<Root>,
    /// Values of `x − a·y` at candidates that are not roots of `res_z`.
    #[serde(serialize_with = "ser_qs")]
    pub extra_values: Vec<Q>,
    pub points: Vec<StablePoint>,
}

/// Runs the three-resultant computation and keeps all intermediate data.
pub fn resultant_pipeline(f: &TropPoly2, g: &TropPoly2, mode: CharMode) -> Result<PipelineReport> {
    let res_x = trop_resultant_wrt_x(f, g, mode)?;
    let res_y = trop_resultant_wrt_y(f, g, mode)?;
    let y_roots = res_x.roots();
    let x_roots = res_y.roots();
    let mut candidates = Vec::new();
    for xr in &x_roots {
        for yr in &y_roots {
            let p = QPoint::new(xr.value.clone(), yr.value.clone());
            if f.is_trop_zero(&p) && g.is_trop_zero(&p) {
                candidates.push(p);
            }
        }
    }
    candidates.sort();
    let mut report = PipelineReport {
        res_x,
        res_y,
        y_roots,
        x_roots,
        candidates,
        a: 0,
        res_z: None,
        z_roots: Vec::new(),
        extra_values: Vec::new(),
        points: Vec::new(),
    };
    if report.candidates.is_empty() {
        return Ok(report);
    }
    let first = choose_injective_a(&report.candidates);
    let mut last_err = None;
    for a in first..first + 16 {
        if !injective(&report.candidates, a) {
            continue;
        }
        match trop_resultant_wrt_z(f, g, a, mode) {
            Ok(rz) => {
                report.a = a;
                report.z_roots = rz.roots();
                report.res_z = Some(rz);
                last_err = None;
                break;
            }
            Err(e @ Error::SupportTooSmall(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    if let Some(e) = last_err {
        return Err(e);
    }
    let aq = q(report.a as i64);
    let roots: BTreeMap<&Q, u32> = report.z_roots.iter().map(|r| (&r.value, r.multiplicity)).collect();
    let mut points = Vec::new();
    let mut extras = Vec::new();
    for p in &report.candidates {
        let z = &p.x - &aq * &p.y;
        match roots.get(&z) {
            Some(&m) => points.push(StablePoint { point: p.clone(), multiplicity: m as u64 }),
            None => extras.push(z),
        }
    }
    extras.sort();
    points.sort();
    report.points = points;
    report.extra_values = extras;
    Ok(report)
}

/// Stable intersection read off the three tropical resultants.
pub fn stable_via_resultants(f: &TropPoly2, g: &TropPoly2, mode: CharMode) -> Result<Vec<StablePoint>> {
    Ok(resultant_pipeline(f, g, mode)?.points)
}

/// Max-plus permanent of the Sylvester matrix whose entries are the
/// tropical coefficient polynomials `f_i(y)`, `g_j(y)`.
pub fn trop_sylvester_permanent(f: &TropPoly2, g: &TropPoly2) -> Result<TropPoly1> {
    let a = x_coefficients(f, "f")?;
    let b = x_coefficients(g, "g")?;
    let n = *a.keys().last().expect("nonempty") as usize;
    let m = *b.keys().last().expect("nonempty") as usize;
    super::det::check_size(n + m)?;
    let fa: Vec<(u32, TropPoly1)> = a.into_iter().collect();
    let gb: Vec<(u32, TropPoly1)> = b.into_iter().collect();
    let rows = super::det::sylvester_rows(&fa, &gb);
    permanent(&rows).ok_or_else(|| Error::Empty("permanent is −∞".into()))
}
