//! Polynomials with Puiseux-scalar coefficients and their tropicalizations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::puiseux::{parse_exponent, parse_signed_product, split_signed, PuiseuxScalar};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, QPoint, Q};
use crate::trop::{Exp2, TropPoly1, TropPoly2};

/// A bivariate polynomial over Puiseux scalars with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgPoly2 {
    terms: BTreeMap<Exp2, PuiseuxScalar>,
}

impl AlgPoly2 {
    /// Adds up repeated exponents and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Exp2, PuiseuxScalar)>) -> Self {
        let mut map: BTreeMap<Exp2, PuiseuxScalar> = BTreeMap::new();
        for (e, c) in terms {
            let sum = map.get(&e).map_or(c.clone(), |old| old.add(&c));
            map.insert(e, sum);
        }
        map.retain(|_, c| !c.is_zero());
        AlgPoly2 { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<Exp2, PuiseuxScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exp2) -> Option<&PuiseuxScalar> {
        self.terms.get(&e)
    }

    /// Principal coefficient of the coefficient of `x^i y^j`.
    pub fn principal(&self, e: Exp2) -> Option<&Q> {
        self.terms.get(&e).and_then(PuiseuxScalar::pc)
    }
}

/// Coefficientwise `T = −v`.
pub fn tropicalize_alg(f: &AlgPoly2) -> Result<TropPoly2> {
    if f.is_zero() {
        return Err(Error::Empty("the zero polynomial has no tropicalization".into()));
    }
    TropPoly2::new(f.terms.iter().map(|(e, c)| (*e, c.trop().expect("nonzero"))))
}

/// A polynomial over the residue field ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ResidualPoly {
    pub terms: BTreeMap<Exp2, Q>,
}

impl fmt::Display for ResidualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{}*x^{}*y^{}", fmt_q(c), e.i, e.j)).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for ResidualPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Principal part of `f(x t^{−q₁}, y t^{−q₂})`: the principal coefficients
/// of the terms maximizing the tropicalization at `q`.
pub fn residual_polynomial(f: &AlgPoly2, point: &QPoint) -> Result<ResidualPoly> {
    let trop = tropicalize_alg(f)?;
    let ev = trop.eval(point);
    Ok(ResidualPoly {
        terms: ev.argmax.iter().map(|e| (*e, f.principal(*e).expect("in support").clone())).collect(),
    })
}

/// Each coefficient `c` becomes `k · t^{−c}` with `k` a seeded random
/// integer in `±[1, 1000]`.
pub fn lift_generic(f: &TropPoly2, seed: u64) -> AlgPoly2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    AlgPoly2::new(f.terms().iter().map(|(e, c)| {
        let k: i64 = rng.gen_range(1..=1000);
        let k = if rng.gen_bool(0.5) { -k } else { k };
        (*e, PuiseuxScalar::monomial(q(k), -c))
    }))
}

fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (k, p) in parts.iter().enumerate() {
        match (k, p.strip_prefix('-')) {
            (0, _) => out.push_str(p),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

fn fmt_coeff(c: &PuiseuxScalar) -> String {
    if c.terms().len() == 1 {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for AlgPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = fmt_coeff(c);
                if e.i > 0 {
                    s += &format!("*x^{}", e.i);
                }
                if e.j > 0 {
                    s += &format!("*y^{}", e.j);
                }
                s
            })
            .collect();
        f.write_str(&join_signed(&parts))
    }
}

impl Serialize for AlgPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn var_power(factor: &str, var: char) -> Result<Option<u32>> {
    let mut chars = factor.chars();
    if chars.next() != Some(var) {
        return Ok(None);
    }
    let rest = chars.as_str();
    if rest.is_empty() {
        return Ok(Some(1));
    }
    let Some(e) = rest.strip_prefix('^') else { return Ok(None) };
    let v = parse_exponent(e)?;
    if !v.is_integer() || v < Q::zero() {
        return Err(Error::Parse(format!("exponent of {var} must be a natural number in `{factor}`")));
    }
    Ok(Some(v.to_integer().try_into().map_err(|_| Error::Parse(format!("exponent too large in `{factor}`")))?))
}

/// Accepts terms such as `3*t^(-1)*x^2*y`, `(1 + t)*x` or `-y^2`.
impl FromStr for AlgPoly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pieces = split_signed(s);
        if pieces.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        for piece in pieces {
            let (mut i, mut j) = (0u32, 0u32);
            let c = parse_signed_product(&piece, |factor| {
                if let Some(e) = var_power(factor, 'x')? {
                    i += e;
                    return Ok(true);
                }
                if let Some(e) = var_power(factor, 'y')? {
                    j += e;
                    return Ok(true);
                }
                Ok(false)
            })?;
            terms.push((Exp2::new(i, j), c));
        }
        Ok(AlgPoly2::new(terms))
    }
}

/// A univariate polynomial over Puiseux scalars.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgPoly1 {
    terms: BTreeMap<u32, PuiseuxScalar>,
}

impl AlgPoly1 {
    pub fn new(terms: impl IntoIterator<Item = (u32, PuiseuxScalar)>) -> Self {
        let mut map: BTreeMap<u32, PuiseuxScalar> = BTreeMap::new();
        for (e, c) in terms {
            let sum = map.get(&e).map_or(c.clone(), |old| old.add(&c));
            map.insert(e, sum);
        }
        map.retain(|_, c| !c.is_zero());
        AlgPoly1 { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<u32, PuiseuxScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().last().copied()
    }

    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn tropicalize(&self) -> Option<TropPoly1> {
        TropPoly1::new(self.terms.iter().map(|(k, c)| (*k, c.trop().expect("nonzero")))).ok()
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| if *k == 0 { fmt_coeff(c) } else { format!("{}*{var}^{k}", fmt_coeff(c)) })
            .collect();
        join_signed(&parts)
    }
}
