//! Exact rational scalars and rational points.
//!
//! Every coordinate and tropical coefficient in the crate is a [`Q`]. Text
//! and JSON forms print rationals as `p/q` (or `p` when the denominator is 1),
//! never as floats.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `-3`, `3/2`, `−1` (unicode minus), `1.25` or a parenthesised form
/// of any of these.
pub fn parse_q(text: &str) -> Result<Q> {
    let s = text.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .map(str::trim)
        .unwrap_or(s);
    let s = s.replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let whole = if int == "-" || int.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = Q::from_integer(whole.abs()) + Q::new(frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(&s).map(Q::from_integer).map_err(|_| bad())
}

pub fn fmt_q(value: &Q) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn serialize_q<S: Serializer>(value: &Q, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&fmt_q(value))
}

/// Least common multiple of the denominators, used to move a set of
/// rationals onto an integer grid.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()))
}

/// A point of ℚ².
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPoint {
    pub x: Q,
    pub y: Q,
}

impl QPoint {
    pub fn new(x: Q, y: Q) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(q(x), q(y))
    }

    pub fn add(&self, other: &QPoint) -> QPoint {
        QPoint::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &QPoint) -> QPoint {
        QPoint::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn scale(&self, k: &Q) -> QPoint {
        QPoint::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, other: &QPoint) -> Q {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &QPoint) -> Q {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn norm2(&self) -> Q {
        self.dot(self)
    }

    pub fn midpoint(&self, other: &QPoint) -> QPoint {
        self.add(other).scale(&qf(1, 2))
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_q(&self.x), fmt_q(&self.y))
    }
}

impl Serialize for QPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [fmt_q(&self.x), fmt_q(&self.y)].serialize(serializer)
    }
}
