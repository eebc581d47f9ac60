//! Multivariate integer polynomials in indexed coefficient variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Coefficient variables: `A(i)`/`B(j)` stand for the coefficients `a_i`,
/// `b_j` of two univariate polynomials; `Alpha(i, j)`/`Beta(i, j)` for the
/// principal coefficients of the monomial `x^i y^j` in two lifted curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A(u32),
    B(u32),
    Alpha(u32, u32),
    Beta(u32, u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A(i) => write!(f, "a{i}"),
            Var::B(j) => write!(f, "b{j}"),
            Var::Alpha(i, j) => write!(f, "alpha_{i}_{j}"),
            Var::Beta(i, j) => write!(f, "beta_{i}_{j}"),
        }
    }
}

/// A monomial as a sorted list of `(variable, exponent)` with positive
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Degree in the `A`/`Alpha` variables and in the `B`/`Beta` variables.
    pub fn bidegree(&self) -> (u32, u32) {
        let mut d = (0, 0);
        for &(v, e) in &self.0 {
            match v {
                Var::A(_) | Var::Alpha(..) => d.0 += e,
                Var::B(_) | Var::Beta(..) => d.1 += e,
            }
        }
        d
    }

    /// Applies a variable renaming.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::new(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

/// Graded lexicographic: total degree first, then the exponent of the
/// smallest variable, and so on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    // the monomial containing the smaller variable is larger
                    return b.0.cmp(&a.0);
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Integer polynomial in [`Var`]s. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SymPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = SymPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn neg(&self) -> SymPoly {
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var + Copy) -> SymPoly {
        SymPoly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(f), c.clone())))
    }

    /// Reduces coefficients into `[0, p)` and drops the vanishing ones.
    pub fn reduce_mod(&self, p: u64) -> SymPoly {
        let p = BigInt::from(p);
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let mut r = c % &p;
            if r.is_negative() {
                r += &p;
            }
            (!r.is_zero()).then(|| (m.clone(), r))
        });
        SymPoly::from_terms(terms)
    }

    /// Evaluates at rational values; missing variables are an error.
    pub fn eval(&self, value: impl Fn(Var) -> Option<Q>) -> Result<Q> {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = Q::from_integer(c.clone());
            for &(v, e) in m.factors() {
                let x = value(v).ok_or_else(|| Error::Empty(format!("no value for {v}")))?;
                t *= num_traits::pow(x, e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// True if every term has the same bidegree `(da, db)`.
    pub fn is_bihomogeneous(&self, da: u32, db: u32) -> bool {
        self.terms.keys().all(|m| m.bidegree() == (da, db))
    }

    /// Equal up to a global sign.
    pub fn equal_up_to_sign(&self, other: &SymPoly) -> bool {
        self == other || *self == other.neg()
    }

    /// Parses a sum of signed terms such as `r^2a^2 - 2racp + prb^2`, where
    /// each variable is a single character looked up in `names`.
    pub fn parse_with(text: &str, names: &[(char, Var)]) -> Result<SymPoly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        let mut out = SymPoly::zero();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let negative = rest.starts_with('-');
            if rest.starts_with('+') || rest.starts_with('-') {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mut coeff = if digits.is_empty() { BigInt::one() } else { digits.parse::<BigInt>().expect("digits") };
            if negative {
                coeff = -coeff;
            }
            let chars: Vec<char> = term[digits.len()..].chars().filter(|&c| c != '*').collect();
            let mut factors = Vec::new();
            let mut k = 0;
            while k < chars.len() {
                let var = names
                    .iter()
                    .find(|(c, _)| *c == chars[k])
                    .map(|(_, v)| *v)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{}`", chars[k])))?;
                k += 1;
                let mut e = 1;
                if k < chars.len() && chars[k] == '^' {
                    k += 1;
                    let start = k;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    e = chars[start..k].iter().collect::<String>().parse().map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
                }
                factors.push((var, e));
            }
            out.add_term(Monomial::new(factors), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if m.factors().is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

fn parse_var(text: &str) -> Result<Var> {
    let bad = || Error::Parse(format!("unknown variable `{text}`"));
    let num = |s: &str| s.parse::<u32>().map_err(|_| bad());
    let pair = |s: &str| -> Result<(u32, u32)> {
        let (i, j) = s.split_once('_').ok_or_else(bad)?;
        Ok((num(i)?, num(j)?))
    };
    if let Some(rest) = text.strip_prefix("alpha_") {
        let (i, j) = pair(rest)?;
        return Ok(Var::Alpha(i, j));
    }
    if let Some(rest) = text.strip_prefix("beta_") {
        let (i, j) = pair(rest)?;
        return Ok(Var::Beta(i, j));
    }
    if let Some(rest) = text.strip_prefix('a') {
        return Ok(Var::A(num(rest)?));
    }
    if let Some(rest) = text.strip_prefix('b') {
        return Ok(Var::B(num(rest)?));
    }
    Err(bad())
}

/// Parses the printed form: `-2*a0*a2*b0*b2 + alpha_1_0^2*beta_0_0`.
impl std::str::FromStr for SymPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<SymPoly> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = SymPoly::zero();
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let negative = rest.starts_with('-');
            if rest.starts_with('+') || rest.starts_with('-') {
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            let mut coeff = BigInt::one();
            let mut factors = Vec::new();
            for factor in term.split('*') {
                if factor.chars().all(|c| c.is_ascii_digit()) && !factor.is_empty() {
                    coeff *= factor.parse::<BigInt>().expect("digits");
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                factors.push((parse_var(name)?, e));
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial::new(factors), coeff);
        }
        Ok(out)
    }
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Packed monomial in `a_i` (bits `4i`) and `b_j` (bits `64 + 4j`), exponents
/// below 16 and indices below 16.
pub(crate) type Packed = u128;

pub(crate) fn pack_var(v: Var) -> Packed {
    match v {
        Var::A(i) => 1u128 << (4 * i),
        Var::B(j) => 1u128 << (64 + 4 * j),
        _ => unreachable!("only a/b variables are packed"),
    }
}

pub(crate) fn unpack(m: Packed) -> Monomial {
    let mut factors = Vec::new();
    for slot in 0..32u32 {
        let e = ((m >> (4 * slot)) & 0xf) as u32;
        if e > 0 {
            let v = if slot < 16 { Var::A(slot) } else { Var::B(slot - 16) };
            factors.push((v, e));
        }
    }
    Monomial::new(factors)
}
