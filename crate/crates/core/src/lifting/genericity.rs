//! Residual genericity conditions on the principal coefficients of two
//! lifted curves, and certificates checking them on concrete lifts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::algpoly::{tropicalize_alg, AlgPoly2};
use super::algres::{alg_resultant, group_terms, Elimination};
use crate::error::{Error, Result};
use crate::polytope::primitive;
use crate::rational::{common_denominator, serialize_q, QPoint, Q};
use crate::resultant::sylvester::integer_resultant;
use crate::resultant::{resultant_pipeline, CharMode, Monomial, SymPoly, Var};
use crate::stable::mixed_cells;
use crate::trop::{Exp2, TropPoly1, TropPoly2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConditionSource {
    /// Extremal coefficient of the algebraic resultant in the given degree.
    Resultant { resultant: Elimination, degree: u32 },
    /// Resultant of the residual polynomials along two overlapping parallel
    /// edges.
    ParallelCell { point: QPoint },
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub label: String,
    pub source: ConditionSource,
    /// Polynomial in `alpha_i_j` (principal coefficients of `F`) and
    /// `beta_i_j` (of `G`).
    pub poly: SymPoly,
}

impl Condition {
    pub fn resultant(&self) -> Option<Elimination> {
        match self.source {
            ConditionSource::Resultant { resultant, .. } => Some(resultant),
            ConditionSource::ParallelCell { .. } => None,
        }
    }
}

type Term = (u32, i64, u128);
/// Terms grouped by eliminated exponent: (kept degree, (coefficient, variable)).
type Slots = BTreeMap<u32, Vec<(u32, (Q, Var))>>;

/// For every degree `r` of the tropical resultant, the symbolic coefficient
/// of its extremal `t`-power in the algebraic resultant of generic lifts.
pub fn gamma_polynomials(f: &TropPoly2, g: &TropPoly2, elim: Elimination) -> Result<(TropPoly1, BTreeMap<u32, SymPoly>)> {
    let fa = group_terms(f.terms().iter().map(|(e, c)| (*e, (c.clone(), Var::Alpha(e.i, e.j)))), elim, "f")?;
    let gb = group_terms(g.terms().iter().map(|(e, c)| (*e, (c.clone(), Var::Beta(e.i, e.j)))), elim, "g")?;
    let iset: BTreeSet<u32> = fa.keys().copied().collect();
    let jset: BTreeSet<u32> = gb.keys().copied().collect();
    let r = integer_resultant(&iset, &jset)?;
    let h = elim.tropical(f, g)?;
    let vars: Vec<Var> =
        fa.values().chain(gb.values()).flatten().map(|(_, (_, v))| *v).collect::<BTreeSet<_>>().into_iter().collect();
    if vars.len() > 32 {
        return Err(Error::UnsupportedSupport("more than 32 coefficients".into()));
    }
    let slot: HashMap<Var, u32> = vars.iter().enumerate().map(|(k, v)| (*v, k as u32)).collect();
    let all: Vec<&Q> = fa.values().chain(gb.values()).flatten().map(|(_, (c, _))| c).chain(h.terms().values()).collect();
    let den = Q::from_integer(common_denominator(all.iter().copied()));
    let scale = |c: &Q| (c * &den).to_integer().to_i64().ok_or(Error::CoefficientOverflow);
    let convert = |m: &Slots| -> Result<HashMap<u32, Vec<Term>>> {
        m.iter()
            .map(|(i, ts)| {
                let v = ts.iter().map(|(k, (c, var))| Ok((*k, scale(c)?, 1u128 << (4 * slot[var])))).collect::<Result<_>>()?;
                Ok((*i, v))
            })
            .collect()
    };
    let fs = convert(&fa)?;
    let gs = convert(&gb)?;
    let mut hmax: Vec<Option<i64>> = vec![None; h.degree() as usize + 1];
    for (k, c) in h.terms() {
        hmax[*k as usize] = Some(scale(c)?);
    }
    let mut acc: BTreeMap<u32, HashMap<u128, i128>> = BTreeMap::new();
    for (m, c) in r.terms() {
        let factors: Vec<&Vec<Term>> = m
            .factors()
            .iter()
            .flat_map(|&(v, e)| {
                let list = match v {
                    Var::A(i) => &fs[&i],
                    Var::B(j) => &gs[&j],
                    _ => unreachable!("integer resultants use a/b variables"),
                };
                std::iter::repeat_n(list, e as usize)
            })
            .collect();
        let suffix = suffix_bounds(&factors);
        let c = c.to_i128().ok_or(Error::CoefficientOverflow)?;
        let mut states: HashMap<(u32, i64, u128), i128> = [((0, 0, 0), c)].into();
        for (p, factor) in factors.iter().enumerate() {
            let mut next: HashMap<(u32, i64, u128), i128> = HashMap::new();
            for (&(y, t, mono), &coef) in &states {
                for &(k, v, bit) in factor.iter() {
                    let (y2, t2) = (y + k, t + v);
                    let reachable = suffix[p + 1]
                        .iter()
                        .enumerate()
                        .any(|(d, s)| s.is_some_and(|s| hmax.get(y2 as usize + d) == Some(&Some(t2 + s))));
                    if !reachable {
                        continue;
                    }
                    let e = next.entry((y2, t2, mono + bit)).or_insert(0);
                    *e = e.checked_add(coef).ok_or(Error::CoefficientOverflow)?;
                }
            }
            next.retain(|_, c| *c != 0);
            states = next;
        }
        for ((y, t, mono), coef) in states {
            if hmax[y as usize] == Some(t) {
                let e = acc.entry(y).or_default().entry(mono).or_insert(0);
                *e = e.checked_add(coef).ok_or(Error::CoefficientOverflow)?;
            }
        }
    }
    let gammas = acc
        .into_iter()
        .map(|(y, terms)| {
            let poly = SymPoly::from_terms(terms.into_iter().filter(|(_, c)| *c != 0).map(|(mono, c)| {
                let factors = (0..vars.len()).filter_map(|s| {
                    let e = ((mono >> (4 * s)) & 0xf) as u32;
                    (e > 0).then_some((vars[s], e))
                });
                (Monomial::new(factors), BigInt::from(c))
            }));
            (y, poly)
        })
        .collect();
    Ok((h, gammas))
}

/// `suffix[p][d]`: the largest total value of degree `d` obtainable from
/// factors `p..`.
fn suffix_bounds(factors: &[&Vec<Term>]) -> Vec<Vec<Option<i64>>> {
    let mut out = vec![vec![Some(0i64)]; factors.len() + 1];
    for p in (0..factors.len()).rev() {
        let next = &out[p + 1];
        let top = factors[p].iter().map(|t| t.0).max().unwrap_or(0) as usize;
        let mut cur: Vec<Option<i64>> = vec![None; next.len() + top];
        for &(k, v, _) in factors[p].iter() {
            for (d, s) in next.iter().enumerate() {
                let Some(s) = s else { continue };
                let slot = &mut cur[d + k as usize];
                if slot.is_none_or(|c| c < v + s) {
                    *slot = Some(v + s);
                }
            }
        }
        out[p] = cur;
    }
    out
}

/// One condition per vertex of the upper hull of the tropical resultant's
/// coefficient sequence, highest degree first.
pub fn resultant_conditions(f: &TropPoly2, g: &TropPoly2, elim: Elimination) -> Result<Vec<Condition>> {
    let (h, gammas) = gamma_polynomials(f, g, elim)?;
    let var = elim.kept_variable();
    Ok(h.hull_vertices()
        .into_iter()
        .rev()
        .map(|r| Condition {
            label: format!("{}[{var}^{r}]", elim.name()),
            source: ConditionSource::Resultant { resultant: elim, degree: r },
            poly: gammas.get(&r).cloned().unwrap_or_else(SymPoly::zero),
        })
        .collect())
}

/// Positions of collinear exponents along their primitive direction `d`,
/// measured from the least one.
fn segment_indices(points: &[Exp2], d: (i64, i64)) -> Vec<(u32, Exp2)> {
    let proj = |e: &Exp2| e.i as i64 * d.0 + e.j as i64 * d.1;
    let base = points.iter().map(proj).min().expect("nonempty");
    let len2 = d.0 * d.0 + d.1 * d.1;
    points.iter().map(|e| (((proj(e) - base) / len2) as u32, *e)).collect()
}

/// Resultants of the residual polynomials along every pair of overlapping
/// parallel edges; their vanishing is necessary for an intersection point
/// of the lifts over such a cell.
pub fn cell_conditions(f: &TropPoly2, g: &TropPoly2) -> Result<Vec<Condition>> {
    let mut out = Vec::new();
    for cell in mixed_cells(f, g) {
        if cell.kind != (1, 1, 1) {
            continue;
        }
        let (a, b) = (cell.cell_f[0].as_i64(), cell.cell_f.last().expect("segment").as_i64());
        let d = primitive((b.0 - a.0, b.1 - a.1));
        let fi = segment_indices(&cell.cell_f, d);
        let gi = segment_indices(&cell.cell_g, d);
        let iset: BTreeSet<u32> = fi.iter().map(|p| p.0).collect();
        let jset: BTreeSet<u32> = gi.iter().map(|p| p.0).collect();
        let fmap: HashMap<u32, Exp2> = fi.into_iter().collect();
        let gmap: HashMap<u32, Exp2> = gi.into_iter().collect();
        let r = integer_resultant(&iset, &jset)?;
        let poly = r.rename(|v| match v {
            Var::A(i) => Var::Alpha(fmap[&i].i, fmap[&i].j),
            Var::B(j) => Var::Beta(gmap[&j].i, gmap[&j].j),
            other => other,
        });
        out.push(Condition {
            label: format!("parallel cell at {}", cell.witness),
            source: ConditionSource::ParallelCell { point: cell.witness.clone() },
            poly,
        });
    }
    Ok(out)
}

/// The exponent `a` of the substitution `x = z·y^a` used for the third
/// resultant, or `None` when the curves have no common point to separate.
pub fn separating_exponent(f: &TropPoly2, g: &TropPoly2) -> Result<Option<u32>> {
    let report = resultant_pipeline(f, g, CharMode::EquiCharZero)?;
    Ok(report.res_z.is_some().then_some(report.a))
}

/// Parallel-cell conditions, then the conditions for `res_x`, `res_y` and
/// `res_z`.
pub fn genericity_conditions(f: &TropPoly2, g: &TropPoly2) -> Result<Vec<Condition>> {
    let mut out = cell_conditions(f, g)?;
    out.extend(resultant_conditions(f, g, Elimination::X)?);
    out.extend(resultant_conditions(f, g, Elimination::Y)?);
    if let Some(a) = separating_exponent(f, g)? {
        out.extend(resultant_conditions(f, g, Elimination::Z(a))?);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EvaluatedCondition {
    #[serde(flatten)]
    pub condition: Condition,
    #[serde(serialize_with = "serialize_q")]
    pub value: Q,
    pub satisfied: bool,
}

/// Comparison of one tropicalized algebraic resultant with its tropical
/// counterpart.
#[derive(Clone, Debug, Serialize)]
pub struct ResultantCheck {
    pub resultant: Elimination,
    pub tropical: String,
    /// `None` when the algebraic resultant vanishes identically.
    pub algebraic: Option<String>,
    pub same_roots: bool,
    pub vertex_coefficients_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericityCertificate {
    pub a: Option<u32>,
    pub conditions: Vec<EvaluatedCondition>,
    pub all_satisfied: bool,
    pub checks: Vec<ResultantCheck>,
    /// All conditions hold and every resultant tropicalizes correctly.
    pub verified: bool,
}

fn principal_value(f: &AlgPoly2, g: &AlgPoly2, v: Var) -> Option<Q> {
    match v {
        Var::Alpha(i, j) => f.principal(Exp2::new(i, j)).cloned(),
        Var::Beta(i, j) => g.principal(Exp2::new(i, j)).cloned(),
        _ => None,
    }
}

pub fn evaluate_condition(c: &Condition, f: &AlgPoly2, g: &AlgPoly2) -> Result<EvaluatedCondition> {
    let value = c.poly.eval(|v| principal_value(f, g, v))?;
    Ok(EvaluatedCondition { condition: c.clone(), satisfied: !value.is_zero(), value })
}

pub fn compare_resultant(f: &AlgPoly2, g: &AlgPoly2, elim: Elimination) -> Result<ResultantCheck> {
    let tf = tropicalize_alg(f)?;
    let tg = tropicalize_alg(g)?;
    let h = elim.tropical(&tf, &tg)?;
    let alg = alg_resultant(f, g, elim)?.tropicalize();
    let var = elim.kept_variable();
    let (same_roots, vertex_coefficients_match) = match &alg {
        Some(t) => (t.roots() == h.roots(), h.hull_vertices().iter().all(|r| t.coeff(*r) == h.coeff(*r))),
        None => (false, false),
    };
    Ok(ResultantCheck {
        resultant: elim,
        tropical: h.display_with(var),
        algebraic: alg.map(|t| t.display_with(var)),
        same_roots,
        vertex_coefficients_match,
    })
}

/// Evaluates every condition at the principal coefficients of `F` and `G`;
/// when all hold, also computes the algebraic resultants and compares them
/// with the tropical ones.
pub fn check_lift(f: &AlgPoly2, g: &AlgPoly2) -> Result<GenericityCertificate> {
    let tf = tropicalize_alg(f)?;
    let tg = tropicalize_alg(g)?;
    let a = separating_exponent(&tf, &tg)?;
    let conditions: Vec<EvaluatedCondition> =
        genericity_conditions(&tf, &tg)?.iter().map(|c| evaluate_condition(c, f, g)).collect::<Result<_>>()?;
    let all_satisfied = conditions.iter().all(|c| c.satisfied);
    let mut checks = Vec::new();
    if all_satisfied {
        let mut elims = vec![Elimination::X, Elimination::Y];
        elims.extend(a.map(Elimination::Z));
        for e in elims {
            checks.push(compare_resultant(f, g, e)?);
        }
    }
    let verified = all_satisfied && checks.iter().all(|c| c.same_roots && c.vertex_coefficients_match);
    Ok(GenericityCertificate { a, conditions, all_satisfied, checks, verified })
}
