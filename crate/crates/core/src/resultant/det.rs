//! Sylvester matrices and determinant expansion over small commutative rings.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Matrices larger than this are rejected.
pub const MAX_SYLVESTER_SIZE: usize = 12;

/// The operations the subset expansion needs from an entry ring.
pub(crate) trait DetRing: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Result<Self>;
    /// `self += other` or `self -= other`.
    fn accumulate(&mut self, other: &Self, negate: bool) -> Result<()>;
}

/// Sylvester layout: `max J` rows carrying the coefficients of the first
/// polynomial (row `r` has `f_i` in column `r + i`), then `max I` rows for
/// the second. `None` marks a structural zero.
pub(crate) fn sylvester_rows<T: Clone>(f: &[(u32, T)], g: &[(u32, T)]) -> Vec<Vec<Option<T>>> {
    let n = f.iter().map(|(i, _)| *i).max().unwrap_or(0) as usize;
    let m = g.iter().map(|(j, _)| *j).max().unwrap_or(0) as usize;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for r in 0..m {
        let mut row = vec![None; size];
        for (i, c) in f {
            row[r + *i as usize] = Some(c.clone());
        }
        rows.push(row);
    }
    for r in 0..n {
        let mut row = vec![None; size];
        for (j, c) in g {
            row[r + *j as usize] = Some(c.clone());
        }
        rows.push(row);
    }
    rows
}

pub(crate) fn check_size(size: usize) -> Result<()> {
    if size > MAX_SYLVESTER_SIZE {
        return Err(Error::MatrixTooLarge { size, limit: MAX_SYLVESTER_SIZE });
    }
    Ok(())
}

/// Laplace expansion along rows, memoized over the set of used columns.
/// Assigning column `c` after the columns in `used` contributes one
/// inversion for each used column to the right of `c`.
pub(crate) fn determinant<R: DetRing>(rows: &[Vec<Option<R>>]) -> Result<R> {
    let n = rows.len();
    check_size(n)?;
    if n == 0 {
        return Err(Error::UnsupportedSupport("empty matrix".into()));
    }
    let mut layer: HashMap<u32, R> = HashMap::new();
    let mut first = true;
    for row in rows {
        let mut next: HashMap<u32, R> = HashMap::new();
        let sources: Vec<(u32, Option<&R>)> =
            if first { vec![(0, None)] } else { layer.iter().map(|(k, v)| (*k, Some(v))).collect() };
        for (used, val) in sources {
            for (c, entry) in row.iter().enumerate() {
                let Some(entry) = entry else { continue };
                if used & (1 << c) != 0 {
                    continue;
                }
                let negate = (used >> (c + 1)).count_ones() % 2 == 1;
                let prod = match val {
                    None => entry.clone(),
                    Some(v) => v.mul(entry)?,
                };
                next.entry(used | (1 << c)).or_insert_with(R::zero).accumulate(&prod, negate)?;
            }
        }
        next.retain(|_, v| !v.is_zero());
        layer = next;
        first = false;
    }
    Ok(layer.remove(&((1u32 << n) - 1)).unwrap_or_else(R::zero))
}

/// Sparse polynomial with hashable keys and checked `i128` coefficients;
/// key multiplication is supplied by [`KeyMul`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct IntPoly<K: Eq + Hash> {
    pub terms: HashMap<K, i128>,
}

pub(crate) trait KeyMul: Copy + Eq + Hash {
    fn key_mul(self, other: Self) -> Self;
}

impl KeyMul for u128 {
    fn key_mul(self, other: Self) -> Self {
        self + other
    }
}

impl<K: KeyMul> IntPoly<K> {
    pub fn monomial(k: K, c: i128) -> Self {
        let mut terms = HashMap::new();
        if c != 0 {
            terms.insert(k, c);
        }
        IntPoly { terms }
    }
}

impl<K: KeyMul> DetRing for IntPoly<K> {
    fn zero() -> Self {
        IntPoly { terms: HashMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let mut out: HashMap<K, i128> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let p = c1.checked_mul(*c2).ok_or(Error::CoefficientOverflow)?;
                let e = out.entry(k1.key_mul(*k2)).or_insert(0);
                *e = e.checked_add(p).ok_or(Error::CoefficientOverflow)?;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(IntPoly { terms: out })
    }

    fn accumulate(&mut self, other: &Self, negate: bool) -> Result<()> {
        for (k, c) in &other.terms {
            let c = if negate { c.checked_neg().ok_or(Error::CoefficientOverflow)? } else { *c };
            let e = self.terms.entry(*k).or_insert(0);
            *e = e.checked_add(c).ok_or(Error::CoefficientOverflow)?;
            if *e == 0 {
                self.terms.remove(k);
            }
        }
        Ok(())
    }
}
