//! Finite generalized Puiseux series `Σ c_k t^{e_k}` with rational
//! coefficients and exponents.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};

/// Terms are kept sorted by strictly increasing exponent with nonzero
/// coefficients; the empty sum is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxScalar {
    terms: Vec<(Q, Q)>,
}

impl PuiseuxScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Q::one(), Q::zero())
    }

    /// `c · t^e`.
    pub fn monomial(c: Q, e: Q) -> Self {
        Self::from_terms([(c, e)])
    }

    /// Merges equal exponents and drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Q, Q)>) -> Self {
        let mut v: Vec<(Q, Q)> = terms.into_iter().collect();
        v.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(v.len());
        for (c, e) in v {
            match out.last_mut() {
                Some(last) if last.1 == e => last.0 += c,
                _ => out.push((c, e)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        PuiseuxScalar { terms: out }
    }

    /// `(coefficient, exponent)` pairs in increasing exponent order.
    pub fn terms(&self) -> &[(Q, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least exponent.
    pub fn valuation(&self) -> Option<&Q> {
        self.terms.first().map(|(_, e)| e)
    }

    /// Minus the valuation.
    pub fn trop(&self) -> Option<Q> {
        self.valuation().map(|v| -v)
    }

    /// Principal coefficient: the coefficient of the least exponent.
    pub fn pc(&self) -> Option<&Q> {
        self.terms.first().map(|(c, _)| c)
    }

    /// Principal term `Pc · t^v`.
    pub fn pt(&self) -> Option<PuiseuxScalar> {
        self.terms.first().map(|(c, e)| Self::monomial(c.clone(), e.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn neg(&self) -> Self {
        PuiseuxScalar { terms: self.terms.iter().map(|(c, e)| (-c, e.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms.iter().flat_map(|(c1, e1)| other.terms.iter().map(move |(c2, e2)| (c1 * c2, e1 + e2))),
        )
    }
}

impl fmt::Display for PuiseuxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, e)) in self.terms.iter().enumerate() {
            if k == 0 {
                write!(f, "{}", fmt_q(c))?;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_q(&-c))?;
            } else {
                write!(f, " + {}", fmt_q(c))?;
            }
            write!(f, "*t^({})", fmt_q(e))?;
        }
        Ok(())
    }
}

/// Splits at `+`/`-` signs that are outside parentheses and not part of an
/// exponent; each piece keeps its sign.
pub(crate) fn split_signed(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let sign = (ch == '+' || ch == '-') && depth == 0 && !matches!(prev, Some('^') | Some('*') | None);
        if sign && !cur.trim().is_empty() {
            parts.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        parts.push(cur);
    }
    parts
}

/// Splits at `*` outside parentheses.
pub(crate) fn split_factors(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&text[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Exponent text after `^`: `(p/q)`, `p/q` or an integer.
pub(crate) fn parse_exponent(text: &str) -> Result<Q> {
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
    parse_q(t)
}

/// Parses one factor of a Puiseux expression: a rational, `t`, `t^e` or a
/// parenthesized sum.
fn parse_scalar_factor(text: &str) -> Result<PuiseuxScalar> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        return inner.parse();
    }
    if t == "t" {
        return Ok(PuiseuxScalar::monomial(Q::one(), Q::one()));
    }
    if let Some(e) = t.strip_prefix("t^") {
        return Ok(PuiseuxScalar::monomial(Q::one(), parse_exponent(e)?));
    }
    Ok(PuiseuxScalar::monomial(parse_q(t)?, Q::zero()))
}

pub(crate) fn parse_signed_product(
    piece: &str,
    mut other: impl FnMut(&str) -> Result<bool>,
) -> Result<PuiseuxScalar> {
    let p = piece.trim();
    let (negative, body) = match p.chars().next() {
        Some('-') => (true, &p[1..]),
        Some('+') => (false, &p[1..]),
        _ => (false, p),
    };
    if body.trim().is_empty() {
        return Err(Error::Parse(format!("empty term in `{piece}`")));
    }
    let mut acc = PuiseuxScalar::one();
    for factor in split_factors(body) {
        if factor.trim().is_empty() {
            return Err(Error::Parse(format!("empty factor in `{piece}`")));
        }
        if !other(factor.trim())? {
            acc = acc.mul(&parse_scalar_factor(factor)?);
        }
    }
    Ok(if negative { acc.neg() } else { acc })
}

impl FromStr for PuiseuxScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pieces = split_signed(s);
        if pieces.is_empty() {
            return Err(Error::Parse("empty Puiseux scalar".into()));
        }
        let mut acc = PuiseuxScalar::zero();
        for piece in pieces {
            acc = acc.add(&parse_signed_product(&piece, |_| Ok(false))?);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn ps(s: &str) -> PuiseuxScalar {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let x = ps("3*t^(-1) + 1/2*t^(0) + 2*t^(1/2)");
        assert_eq!(x.terms().len(), 3);
        assert_eq!(x.valuation(), Some(&q(-1)));
        assert_eq!(x.trop(), Some(q(1)));
        assert_eq!(x.pc(), Some(&q(3)));
        assert_eq!(x.to_string(), "3*t^(-1) + 1/2*t^(0) + 2*t^(1/2)");
        assert_eq!(ps(&x.to_string()), x);
        assert_eq!(ps("t + t^2").trop(), Some(q(-1)));
        assert_eq!(ps("-t^(1/3) - 2"), PuiseuxScalar::from_terms([(q(-2), q(0)), (q(-1), qf(1, 3))]));
        assert!("".parse::<PuiseuxScalar>().is_err());
    }

    #[test]
    fn ring_operations() {
        let a = ps("1 + t");
        let b = ps("1 - t");
        assert_eq!(a.mul(&b), ps("1 - t^2"));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&b), ps("2"));
    }

    #[test]
    fn cancellation_raises_valuation() {
        let a = ps("1 + t");
        let b = ps("-1 + t^2");
        assert_eq!(a.add(&b).valuation(), Some(&q(1)));
    }
}
