//! Max-plus polynomials in one and two variables.
//!
//! A tropical polynomial stores only its finite coefficients; an absent
//! monomial stands for −∞. Evaluation is `max(coeff + i·x + j·y)` and the zero
//! set is where that maximum is attained at least twice.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, QPoint, Q};
use crate::text::{format_power, parse_tropical_terms};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
///
/// Ordered graded-lexicographically: by total degree, then by decreasing
/// `i`, so `1, x, y, x^2, xy, y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exp2 {
    pub i: u32,
    pub j: u32,
}

impl Exp2 {
    pub const fn new(i: u32, j: u32) -> Self {
        Self { i, j }
    }

    pub fn degree(self) -> u32 {
        self.i + self.j
    }

    pub fn add(self, other: Exp2) -> Exp2 {
        Exp2::new(self.i + other.i, self.j + other.j)
    }

    pub fn as_i64(self) -> (i64, i64) {
        (self.i as i64, self.j as i64)
    }

    /// `i·x + j·y`
    pub fn pair(self, p: &QPoint) -> Q {
        &p.x * Q::from_integer(self.i.into()) + &p.y * Q::from_integer(self.j.into())
    }
}

impl Serialize for Exp2 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(serializer)
    }
}

impl Ord for Exp2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.i.cmp(&self.i))
    }
}

impl PartialOrd for Exp2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Value of a tropical polynomial at a point together with the monomials
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation<E> {
    pub value: Q,
    pub argmax: BTreeSet<E>,
}

/// Bivariate max-plus polynomial with nonempty support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropPoly2 {
    terms: BTreeMap<Exp2, Q>,
}

impl TropPoly2 {
    /// Builds a polynomial, rejecting an empty support or a repeated monomial.
    pub fn new(terms: impl IntoIterator<Item = (Exp2, Q)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if map.insert(e, c).is_some() {
                return Err(Error::Parse(format!("repeated monomial x^{} y^{}", e.i, e.j)));
            }
        }
        Self::from_map(map)
    }

    pub fn from_map(terms: BTreeMap<Exp2, Q>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Empty("tropical polynomial with empty support".into()));
        }
        Ok(Self { terms })
    }

    pub fn monomial(e: Exp2, coeff: Q) -> Self {
        Self { terms: BTreeMap::from([(e, coeff)]) }
    }

    pub fn terms(&self) -> &BTreeMap<Exp2, Q> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = Exp2> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, e: Exp2) -> Option<&Q> {
        self.terms.get(&e)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, p: &QPoint) -> Evaluation<Exp2> {
        let mut best: Option<Q> = None;
        let mut argmax = BTreeSet::new();
        for (&e, c) in &self.terms {
            let v = c + e.pair(p);
            match best.as_ref().map(|b| v.cmp(b)) {
                None | Some(Ordering::Greater) => {
                    best = Some(v);
                    argmax.clear();
                    argmax.insert(e);
                }
                Some(Ordering::Equal) => {
                    argmax.insert(e);
                }
                Some(Ordering::Less) => {}
            }
        }
        Evaluation { value: best.expect("nonempty support"), argmax }
    }

    pub fn value_at(&self, p: &QPoint) -> Q {
        self.eval(p).value
    }

    pub fn is_trop_zero(&self, p: &QPoint) -> bool {
        self.eval(p).argmax.len() >= 2
    }

    /// Max-plus product; as functions `(f ⊗ g)(p) = f(p) + g(p)`.
    pub fn mul(&self, other: &TropPoly2) -> TropPoly2 {
        let mut terms: BTreeMap<Exp2, Q> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                let v = c1 + c2;
                terms
                    .entry(e1.add(e2))
                    .and_modify(|cur| {
                        if v > *cur {
                            *cur = v.clone();
                        }
                    })
                    .or_insert_with(|| v.clone());
            }
        }
        TropPoly2 { terms }
    }

    /// Adds `c` to every coefficient (tropical scalar multiplication).
    pub fn add_constant(&self, c: &Q) -> TropPoly2 {
        TropPoly2 { terms: self.terms.iter().map(|(&e, v)| (e, v + c)).collect() }
    }

    pub fn mul_monomial(&self, shift: Exp2) -> TropPoly2 {
        TropPoly2 { terms: self.terms.iter().map(|(&e, v)| (e.add(shift), v.clone())).collect() }
    }

    /// The polynomial whose zero set is this one's translated by `u`:
    /// coefficients become `a_e − e·u`.
    pub fn translate(&self, u: &QPoint) -> TropPoly2 {
        TropPoly2 { terms: self.terms.iter().map(|(&e, v)| (e, v - e.pair(u))).collect() }
    }

    pub fn swap_variables(&self) -> TropPoly2 {
        TropPoly2 { terms: self.terms.iter().map(|(&e, v)| (Exp2::new(e.j, e.i), v.clone())).collect() }
    }

    /// Divides out the largest monomial factor `x^a y^b`.
    pub fn normalize_order(&self) -> TropPoly2 {
        let mi = self.terms.keys().map(|e| e.i).min().unwrap_or(0);
        let mj = self.terms.keys().map(|e| e.j).min().unwrap_or(0);
        TropPoly2 {
            terms: self.terms.iter().map(|(&e, v)| (Exp2::new(e.i - mi, e.j - mj), v.clone())).collect(),
        }
    }

    /// Coefficient polynomials with respect to `x`: `f = Σ f_i(y) x^i`.
    pub fn x_slices(&self) -> BTreeMap<u32, TropPoly1> {
        let mut out: BTreeMap<u32, BTreeMap<u32, Q>> = BTreeMap::new();
        for (&e, c) in &self.terms {
            out.entry(e.i).or_default().insert(e.j, c.clone());
        }
        out.into_iter().map(|(i, t)| (i, TropPoly1 { terms: t })).collect()
    }

    pub fn x_exponents(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|e| e.i).collect()
    }

    pub fn y_exponents(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|e| e.j).collect()
    }

    pub fn display_with(&self, vars: [&str; 2]) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = [format_power(vars[0], e.i), format_power(vars[1], e.j)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect();
                if mono.is_empty() {
                    fmt_q(c)
                } else {
                    format!("{}*{}", fmt_q(c), mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for TropPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["x", "y"]))
    }
}

impl FromStr for TropPoly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_tropical_terms(s, &['x', 'y'])?;
        TropPoly2::new(terms.into_iter().map(|(e, c)| (Exp2::new(e[0], e[1]), c)))
    }
}

/// A tropical root with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Root {
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub value: Q,
    pub multiplicity: u32,
}

/// Univariate max-plus polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropPoly1 {
    terms: BTreeMap<u32, Q>,
}

impl TropPoly1 {
    pub fn new(terms: impl IntoIterator<Item = (u32, Q)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if map.insert(e, c).is_some() {
                return Err(Error::Parse(format!("repeated monomial of degree {e}")));
            }
        }
        Self::from_map(map)
    }

    pub fn from_map(terms: BTreeMap<u32, Q>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Empty("tropical polynomial with empty support".into()));
        }
        Ok(Self { terms })
    }

    pub fn constant(c: Q) -> Self {
        Self { terms: BTreeMap::from([(0, c)]) }
    }

    pub fn terms(&self) -> &BTreeMap<u32, Q> {
        &self.terms
    }

    pub fn coeff(&self, e: u32) -> Option<&Q> {
        self.terms.get(&e)
    }

    pub fn degree(&self) -> u32 {
        *self.terms.keys().next_back().expect("nonempty")
    }

    pub fn order(&self) -> u32 {
        *self.terms.keys().next().expect("nonempty")
    }

    pub fn eval(&self, y: &Q) -> Evaluation<u32> {
        let mut best: Option<Q> = None;
        let mut argmax = BTreeSet::new();
        for (&e, c) in &self.terms {
            let v = c + y * Q::from_integer(e.into());
            match best.as_ref().map(|b| v.cmp(b)) {
                None | Some(Ordering::Greater) => {
                    best = Some(v);
                    argmax.clear();
                    argmax.insert(e);
                }
                Some(Ordering::Equal) => {
                    argmax.insert(e);
                }
                Some(Ordering::Less) => {}
            }
        }
        Evaluation { value: best.expect("nonempty support"), argmax }
    }

    pub fn is_trop_zero(&self, y: &Q) -> bool {
        self.eval(y).argmax.len() >= 2
    }

    pub fn mul(&self, other: &TropPoly1) -> TropPoly1 {
        let mut terms: BTreeMap<u32, Q> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                let v = c1 + c2;
                match terms.get_mut(&(e1 + e2)) {
                    Some(cur) if *cur >= v => {}
                    Some(cur) => *cur = v,
                    None => {
                        terms.insert(e1 + e2, v);
                    }
                }
            }
        }
        TropPoly1 { terms }
    }

    /// Tropical sum: coefficientwise maximum.
    pub fn max(&self, other: &TropPoly1) -> TropPoly1 {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            match terms.get_mut(&e) {
                Some(cur) if *cur >= *c => {}
                Some(cur) => *cur = c.clone(),
                None => {
                    terms.insert(e, c.clone());
                }
            }
        }
        TropPoly1 { terms }
    }

    /// Max-plus `n`-th power by repeated convolution.
    pub fn pow(&self, n: u32) -> TropPoly1 {
        let mut acc = TropPoly1::constant(Q::zero());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add_constant(&self, c: &Q) -> TropPoly1 {
        TropPoly1 { terms: self.terms.iter().map(|(&e, v)| (e, v + c)).collect() }
    }

    /// Roots are the breakpoints of `y ↦ max(c_e + e·y)`. Each edge of the
    /// upper hull of `{(e, c_e)}` gives one root whose multiplicity is the
    /// edge's horizontal length. Sorted increasingly.
    pub fn roots(&self) -> Vec<Root> {
        let hull = upper_hull_1d(&self.terms);
        hull.windows(2)
            .map(|w| {
                let (e1, c1) = (&w[0].0, &w[0].1);
                let (e2, c2) = (&w[1].0, &w[1].1);
                let len = e2 - e1;
                Root { value: (c1 - c2) / Q::from_integer(len.into()), multiplicity: len }
            })
            .collect()
    }

    /// Exponents that are vertices of the upper hull of `{(e, c_e)}`.
    pub fn hull_vertices(&self) -> Vec<u32> {
        upper_hull_1d(&self.terms).into_iter().map(|(e, _)| e).collect()
    }

    pub fn display_with(&self, var: &str) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&e, c)| {
                if e == 0 {
                    fmt_q(c)
                } else {
                    format!("{}*{}", fmt_q(c), format_power(var, e))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses a univariate polynomial in whichever single letter it uses.
    pub fn parse(text: &str) -> Result<Self> {
        let var = text
            .chars()
            .find(|c| c.is_ascii_alphabetic())
            .unwrap_or('y');
        let terms = parse_tropical_terms(text, &[var])?;
        TropPoly1::new(terms.into_iter().map(|(e, c)| (e[0], c)))
    }
}

impl fmt::Display for TropPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("y"))
    }
}

impl FromStr for TropPoly1 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TropPoly1::parse(s)
    }
}

/// Upper hull of `(e, c)` in order of increasing `e`, collinear points removed.
fn upper_hull_1d(terms: &BTreeMap<u32, Q>) -> Vec<(u32, Q)> {
    let mut hull: Vec<(u32, Q)> = Vec::new();
    for (&e, c) in terms {
        while hull.len() >= 2 {
            let (e1, c1) = &hull[hull.len() - 2];
            let (e2, c2) = &hull[hull.len() - 1];
            // drop the middle point unless it lies strictly above the chord
            let lhs = (c2 - c1) * Q::from_integer((e - e1).into());
            let rhs = (c - c1) * Q::from_integer((e2 - e1).into());
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((e, c.clone()));
    }
    hull
}

/// Total multiplicity of a root list.
pub fn total_multiplicity(roots: &[Root]) -> u32 {
    roots.iter().map(|r| r.multiplicity).sum()
}

/// Convenience for tests and examples: `[(value, mult)]` into roots.
pub fn roots_from(pairs: &[(i64, u32)]) -> Vec<Root> {
    pairs.iter().map(|&(v, m)| Root { value: q(v), multiplicity: m }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn conic() -> TropPoly2 {
        "0+1x+1y+1xy+0x²+0y²".parse().unwrap()
    }

    #[test]
    fn conic_at_origin_ties_three_monomials() {
        let ev = conic().eval(&QPoint::from_ints(0, 0));
        assert_eq!(ev.value, q(1));
        let expect: BTreeSet<Exp2> = [Exp2::new(1, 0), Exp2::new(0, 1), Exp2::new(1, 1)].into();
        assert_eq!(ev.argmax, expect);
    }

    #[test]
    fn constant_polynomial_is_never_zero() {
        let f: TropPoly2 = "0".parse().unwrap();
        let ev = f.eval(&QPoint::from_ints(7, -2));
        assert_eq!(ev.value, q(0));
        assert_eq!(ev.argmax.len(), 1);
        assert!(!f.is_trop_zero(&QPoint::from_ints(3, 3)));
    }

    #[test]
    fn tropical_line_at_vertex() {
        let f: TropPoly2 = "0+0x+0y".parse().unwrap();
        let ev = f.eval(&QPoint::from_ints(0, 0));
        assert_eq!(ev.argmax.len(), 3);
        assert_eq!(ev.value, q(0));
    }

    #[test]
    fn zero_set_membership() {
        assert!(conic().is_trop_zero(&QPoint::from_ints(-1, -1)));
        let f: TropPoly2 = "0+0x".parse().unwrap();
        assert!(!f.is_trop_zero(&QPoint::from_ints(5, 3)));
    }

    #[test]
    fn products_of_lines_and_scalars() {
        let f: TropPoly2 = "0+0x".parse().unwrap();
        let g: TropPoly2 = "0+0y".parse().unwrap();
        assert_eq!(f.mul(&g), "0+0x+0y+0xy".parse().unwrap());
        let c: TropPoly2 = "3".parse().unwrap();
        assert_eq!(conic().mul(&c), conic().add_constant(&q(3)));
    }

    #[test]
    fn conic_squared_support_and_value() {
        let sq = conic().mul(&conic());
        let support: BTreeSet<Exp2> = sq.support().collect();
        let mut expect = BTreeSet::new();
        for i in 0..=4 {
            for j in 0..=(4 - i) {
                expect.insert(Exp2::new(i, j));
            }
        }
        assert_eq!(support, expect);
        assert_eq!(sq.value_at(&QPoint::from_ints(0, 0)), q(2));
    }

    #[test]
    fn repeated_monomials_are_rejected() {
        assert!("0+1x+2x".parse::<TropPoly2>().is_err());
        assert!("1*x*y + 2*y*x".parse::<TropPoly2>().is_err());
    }

    #[test]
    fn display_uses_graded_order() {
        assert_eq!(conic().to_string(), "0 + 1*x + 1*y + 0*x^2 + 1*x*y + 0*y^2");
        let f: TropPoly2 = "-1/2 x + 3".parse().unwrap();
        assert_eq!(f.to_string(), "3 + -1/2*x");
    }

    #[test]
    fn roots_of_conic_resultant() {
        let h = TropPoly1::parse("0+1y+1y²+1y³+0y⁴").unwrap();
        assert_eq!(h.roots(), roots_from(&[(-1, 1), (0, 2), (1, 1)]));
    }

    #[test]
    fn roots_of_conic_z_resultant() {
        let h = TropPoly1::parse("6z⁸+9z⁹+9z¹⁰+8z¹¹+6z¹²").unwrap();
        assert_eq!(h.roots(), roots_from(&[(-3, 1), (0, 1), (1, 1), (2, 1)]));
        assert_eq!(h.hull_vertices(), vec![8, 9, 10, 11, 12]);
    }

    #[test]
    fn roots_of_linear_and_constant() {
        assert_eq!(TropPoly1::parse("0+0y").unwrap().roots(), roots_from(&[(0, 1)]));
        assert!(TropPoly1::parse("5y^3").unwrap().roots().is_empty());
        let h = TropPoly1::parse("0 + 1y^2").unwrap();
        assert_eq!(h.roots(), vec![Root { value: qf(-1, 2), multiplicity: 2 }]);
    }

    #[test]
    fn power_matches_scaled_function() {
        let h = TropPoly1::parse("0 + 1y + 0y^2").unwrap();
        let cube = h.pow(3);
        for k in -6..=6 {
            let y = qf(k, 2);
            assert_eq!(cube.eval(&y).value, h.eval(&y).value * q(3));
        }
    }
}
