//! Tropicalization of integer resultants and comparison of the resulting
//! tropical hypersurfaces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::lp::feasible;
use super::sympoly::{Monomial, SymPoly, Var};
use super::CharMode;
use crate::rational::{fmt_q, q, qf, Q};

/// A tropical polynomial in the coefficient variables: one rational
/// coefficient per surviving monomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TropResultant {
    terms: BTreeMap<Monomial, Q>,
}

impl TropResultant {
    pub fn new(terms: BTreeMap<Monomial, Q>) -> Self {
        Self { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Q> {
        self.terms.get(m)
    }

    /// A copy with one coefficient replaced.
    pub fn with_coeff(&self, m: &Monomial, c: Q) -> TropResultant {
        let mut terms = self.terms.clone();
        terms.insert(m.clone(), c);
        TropResultant { terms }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(v, _)| *v)).collect()
    }

    /// Value and maximizing monomials at a point given per variable
    /// (missing variables count as 0).
    pub fn eval(&self, point: &BTreeMap<Var, Q>) -> (Q, BTreeSet<Monomial>) {
        let mut best: Option<Q> = None;
        let mut arg = BTreeSet::new();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (var, e) in m.factors() {
                if let Some(x) = point.get(var) {
                    v += x * Q::from_integer((*e).into());
                }
            }
            match best.as_ref().map(|b| v.cmp(b)) {
                None | Some(std::cmp::Ordering::Greater) => {
                    best = Some(v);
                    arg.clear();
                    arg.insert(m.clone());
                }
                Some(std::cmp::Ordering::Equal) => {
                    arg.insert(m.clone());
                }
                _ => {}
            }
        }
        (best.unwrap_or_else(Q::zero), arg)
    }
}

impl fmt::Display for TropResultant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("({})*{m}", fmt_q(c))).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for TropResultant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in self.terms.iter().rev() {
            seq.serialize_element(&(m.to_string(), fmt_q(c)))?;
        }
        seq.end()
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn p_valuation(c: &BigInt, p: u64) -> u32 {
    assert!(!c.is_zero());
    let p = BigInt::from(p);
    let mut c = c.abs();
    let mut v = 0;
    loop {
        let (quot, rem) = c.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        c = quot;
        v += 1;
    }
}

/// Maps integer coefficients to tropical ones: 0 in equicharacteristic,
/// `−v_p(c)` in the `p`-adic case; terms divisible by `p` vanish in
/// characteristic `p`.
pub fn tropicalize_resultant(r: &SymPoly, mode: CharMode) -> TropResultant {
    let terms = r
        .terms()
        .iter()
        .filter_map(|(m, c)| {
            let t = match mode {
                CharMode::EquiCharZero => Q::zero(),
                CharMode::PAdic(p) => -q(p_valuation(c, p) as i64),
                CharMode::EquiCharP(p) => {
                    if (c % BigInt::from(p)).is_zero() {
                        return None;
                    }
                    Q::zero()
                }
            };
            Some((m.clone(), t))
        })
        .collect();
    TropResultant { terms }
}

fn dense(m: &Monomial, vars: &[Var]) -> Vec<Q> {
    vars.iter().map(|v| q(m.exponent(*v) as i64)).collect()
}

/// Monomials whose lifted points `(exponent, coefficient)` are vertices of
/// the upper hull. Random linear functionals certify most vertices cheaply;
/// the rest are decided by an exact linear program.
pub fn upper_hull_vertices(t: &TropResultant) -> BTreeSet<Monomial> {
    let vars: Vec<Var> = t.variables().into_iter().collect();
    let pts: Vec<(&Monomial, Vec<Q>, &Q)> = t.terms.iter().map(|(m, c)| (m, dense(m, &vars), c)).collect();
    let mut out = BTreeSet::new();
    if pts.len() == 1 {
        out.insert(pts[0].0.clone());
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57_ab1e);
    for _ in 0..4 * pts.len().max(8) {
        let w: Vec<Q> = vars.iter().map(|_| q(rng.gen_range(-1000..=1000))).collect();
        let mut best: Option<Q> = None;
        let mut arg: Vec<usize> = Vec::new();
        for (k, (_, e, c)) in pts.iter().enumerate() {
            let v = e.iter().zip(&w).fold((*c).clone(), |acc, (a, b)| acc + a * b);
            match best.as_ref().map(|b| v.cmp(b)) {
                None | Some(std::cmp::Ordering::Greater) => {
                    best = Some(v);
                    arg = vec![k];
                }
                Some(std::cmp::Ordering::Equal) => arg.push(k),
                _ => {}
            }
        }
        if arg.len() == 1 {
            out.insert(pts[arg[0]].0.clone());
        }
    }
    let index: std::collections::HashMap<&Vec<Q>, &Q> = pts.iter().map(|(_, e, c)| (e, *c)).collect();
    let two = q(2);
    for (k, (m, e, c)) in pts.iter().enumerate() {
        if out.contains(*m) {
            continue;
        }
        // cheap test first: a midpoint of two other points at least as high
        let midpoint = pts.iter().any(|(o, a, ca)| {
            if o == m {
                return false;
            }
            let b: Vec<Q> = e.iter().zip(a).map(|(x, y)| x * &two - y).collect();
            index.get(&b).is_some_and(|cb| *ca + *cb >= *c * &two)
        });
        if midpoint {
            continue;
        }
        // not a vertex iff some convex combination of the others reaches
        // exponent e with height ≥ c
        let others: Vec<usize> = (0..pts.len()).filter(|&o| o != k).collect();
        let mut a: Vec<Vec<Q>> = Vec::new();
        let mut b: Vec<Q> = Vec::new();
        for d in 0..vars.len() {
            a.push(others.iter().map(|&o| pts[o].1[d].clone()).chain([Q::zero()]).collect());
            b.push(e[d].clone());
        }
        a.push(others.iter().map(|_| q(1)).chain([Q::zero()]).collect());
        b.push(q(1));
        a.push(others.iter().map(|&o| pts[o].2.clone()).chain([q(-1)]).collect());
        b.push((*c).clone());
        if !feasible(&a, &b) {
            out.insert((*m).clone());
        }
    }
    out
}

/// Exact comparison of the tropical hypersurfaces: equal upper-hull vertex
/// sets with a constant coefficient difference on them. `samples` random
/// points then cross-check zero-set membership and the maximizing monomial.
pub fn same_trop_variety(r1: &TropResultant, r2: &TropResultant, samples: usize, seed: u64) -> bool {
    if r1.is_empty() || r2.is_empty() {
        return r1.is_empty() && r2.is_empty();
    }
    let v1 = upper_hull_vertices(r1);
    let v2 = upper_hull_vertices(r2);
    if v1 != v2 {
        return false;
    }
    let mut diffs = v1.iter().map(|m| r1.terms[m].clone() - &r2.terms[m]);
    let first = diffs.next().expect("nonempty");
    if diffs.any(|d| d != first) {
        return false;
    }
    let vars: BTreeSet<Var> = r1.variables().union(&r2.variables()).copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let point: BTreeMap<Var, Q> = vars.iter().map(|v| (*v, qf(rng.gen_range(-12..=12), 2))).collect();
        let (_, a1) = r1.eval(&point);
        let (_, a2) = r2.eval(&point);
        let (z1, z2) = (a1.len() >= 2, a2.len() >= 2);
        if z1 != z2 || (!z1 && a1 != a2) {
            return false;
        }
    }
    true
}
