//! Dense univariate max-plus polynomials used while substituting tropical
//! coefficient polynomials into resultants and permanents.
//!
//! Coefficients are either exact rationals or, after scaling every input to
//! a common denominator, `i128` integers; the integer path is much faster
//! and is taken whenever the scaled data fits in `i64`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::sympoly::{Monomial, Var};
use super::tropical::TropResultant;
use crate::rational::{common_denominator, Q};
use crate::trop::TropPoly1;

pub(crate) trait MaxPlus: Clone + Ord + std::fmt::Debug {
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, k: u32) -> Self;
}

impl MaxPlus for i128 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, k: u32) -> Self {
        self * k as i128
    }
}

impl MaxPlus for Q {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, k: u32) -> Self {
        self * Q::from_integer(k.into())
    }
}

/// Coefficient of `y^k` at index `k`; `None` is −∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense<T> {
    pub c: Vec<Option<T>>,
}

impl<T: MaxPlus> Dense<T> {
    pub fn constant(v: T) -> Self {
        Dense { c: vec![Some(v)] }
    }

    pub fn is_neg_inf(&self) -> bool {
        self.c.iter().all(Option::is_none)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.c.is_empty() || other.c.is_empty() {
            return Dense { c: Vec::new() };
        }
        let mut c: Vec<Option<T>> = vec![None; self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            let Some(a) = a else { continue };
            for (j, b) in other.c.iter().enumerate() {
                let Some(b) = b else { continue };
                let v = a.plus(b);
                match &c[i + j] {
                    Some(cur) if *cur >= v => {}
                    _ => c[i + j] = Some(v),
                }
            }
        }
        Dense { c }
    }

    pub fn max_assign(&mut self, other: &Self) {
        if self.c.len() < other.c.len() {
            self.c.resize(other.c.len(), None);
        }
        for (k, v) in other.c.iter().enumerate() {
            let Some(v) = v else { continue };
            match &self.c[k] {
                Some(cur) if cur >= v => {}
                _ => self.c[k] = Some(v.clone()),
            }
        }
    }

    pub fn eval(&self, y: &T) -> Option<T> {
        self.c
            .iter()
            .enumerate()
            .filter_map(|(k, v)| v.as_ref().map(|v| v.plus(&y.times(k as u32))))
            .max()
    }
}

/// Exact rational data for a substitution: the tropical resultant and the
/// coefficient polynomials assigned to `a_i` and `b_j`.
pub(crate) struct Substitution<'a> {
    pub resultant: &'a TropResultant,
    pub a: BTreeMap<u32, TropPoly1>,
    pub b: BTreeMap<u32, TropPoly1>,
}

fn to_dense<T: MaxPlus>(p: &TropPoly1, conv: &impl Fn(&Q) -> T) -> Dense<T> {
    let mut c = vec![None; p.degree() as usize + 1];
    for (&k, v) in p.terms() {
        c[k as usize] = Some(conv(v));
    }
    Dense { c }
}

fn from_dense<T: MaxPlus>(d: &Dense<T>, back: impl Fn(&T) -> Q) -> Option<TropPoly1> {
    let terms: BTreeMap<u32, Q> =
        d.c.iter().enumerate().filter_map(|(k, v)| v.as_ref().map(|v| (k as u32, back(v)))).collect();
    TropPoly1::from_map(terms).ok()
}

fn run<T: MaxPlus>(s: &Substitution<'_>, conv: impl Fn(&Q) -> T, samples: &[T]) -> Dense<T> {
    let a: BTreeMap<u32, Dense<T>> = s.a.iter().map(|(k, p)| (*k, to_dense(p, &conv))).collect();
    let b: BTreeMap<u32, Dense<T>> = s.b.iter().map(|(k, p)| (*k, to_dense(p, &conv))).collect();
    let mut powers: HashMap<(Var, u32), Dense<T>> = HashMap::new();
    let mut power = |v: Var, e: u32| -> Dense<T> {
        if let Some(p) = powers.get(&(v, e)) {
            return p.clone();
        }
        let base = match v {
            Var::A(i) => &a[&i],
            Var::B(j) => &b[&j],
            _ => unreachable!("resultants only involve a/b variables"),
        };
        let mut acc = base.clone();
        for _ in 1..e {
            acc = acc.mul(base);
        }
        // as functions, the N-th max-plus power is N times the base
        for y in samples {
            assert_eq!(acc.eval(y), base.eval(y).map(|v| v.times(e)), "max-plus power identity");
        }
        powers.insert((v, e), acc.clone());
        acc
    };
    let mut total: Dense<T> = Dense { c: Vec::new() };
    for (m, c) in s.resultant.terms() {
        let mut term = Dense::constant(conv(c));
        for &(v, e) in Monomial::factors(m) {
            term = term.mul(&power(v, e));
        }
        total.max_assign(&term);
    }
    total
}

/// Substitutes and expands, returning `None` when the result is −∞.
pub(crate) fn substitute(s: &Substitution<'_>) -> Option<TropPoly1> {
    let all: Vec<&Q> = s
        .resultant
        .terms()
        .values()
        .chain(s.a.values().flat_map(|p| p.terms().values()))
        .chain(s.b.values().flat_map(|p| p.terms().values()))
        .collect();
    let den = common_denominator(all.iter().copied());
    let scaled: Option<Vec<i64>> = all.iter().map(|v| (*v * Q::from_integer(den.clone())).to_integer().to_i64()).collect();
    match (scaled, den.to_i64()) {
        (Some(_), Some(l)) => {
            let conv = |v: &Q| -> i128 { (v * Q::from_integer(den.clone())).to_integer().to_i128().expect("fits") };
            let samples: Vec<i128> = (-4..=4).map(|k| k as i128 * l as i128).collect();
            let d = run(s, conv, &samples);
            from_dense(&d, |v| Q::new(BigInt::from(*v), BigInt::from(l)))
        }
        _ => {
            let samples: Vec<Q> = (-4..=4).map(|k| Q::from_integer(k.into())).collect();
            let d = run(s, |v: &Q| v.clone(), &samples);
            from_dense(&d, |v| v.clone())
        }
    }
}

/// Max-plus permanent of a square matrix with univariate entries, by the
/// same subset recursion as the determinant but without signs.
pub(crate) fn permanent(rows: &[Vec<Option<TropPoly1>>]) -> Option<TropPoly1> {
    let all: Vec<&Q> = rows.iter().flatten().flatten().flat_map(|p| p.terms().values()).collect();
    let den = common_denominator(all.iter().copied());
    let fits = den.to_i64().is_some()
        && all.iter().all(|v| (*v * Q::from_integer(den.clone())).to_integer().to_i64().is_some());
    if fits {
        let l = den.to_i64().expect("fits");
        let conv = |v: &Q| -> i128 { (v * Q::from_integer(den.clone())).to_integer().to_i128().expect("fits") };
        let d = permanent_dense(rows, conv)?;
        from_dense(&d, |v| Q::new(BigInt::from(*v), BigInt::from(l)))
    } else {
        let d = permanent_dense(rows, |v: &Q| v.clone())?;
        from_dense(&d, |v| v.clone())
    }
}

fn permanent_dense<T: MaxPlus>(rows: &[Vec<Option<TropPoly1>>], conv: impl Fn(&Q) -> T) -> Option<Dense<T>> {
    let dense: Vec<Vec<Option<Dense<T>>>> =
        rows.iter().map(|r| r.iter().map(|e| e.as_ref().map(|p| to_dense(p, &conv))).collect()).collect();
    let mut layer: HashMap<u32, Dense<T>> = HashMap::new();
    layer.insert(0, Dense::constant(conv(&Q::from_integer(0.into()))));
    for row in &dense {
        let mut next: HashMap<u32, Dense<T>> = HashMap::new();
        for (used, val) in &layer {
            for (c, entry) in row.iter().enumerate() {
                let Some(entry) = entry else { continue };
                if used & (1 << c) != 0 {
                    continue;
                }
                let prod = val.mul(entry);
                next.entry(used | (1 << c)).and_modify(|cur| cur.max_assign(&prod)).or_insert(prod);
            }
        }
        layer = next;
    }
    let full = (1u32 << rows.len()) - 1;
    layer.remove(&full).filter(|d| !d.is_neg_inf())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_products_match_trop_poly() {
        let h = TropPoly1::parse("0 + 1y + 0y^2").unwrap();
        let g = TropPoly1::parse("-1/2 + 3y^3").unwrap();
        let conv = |v: &Q| v.clone();
        let prod = to_dense(&h, &conv).mul(&to_dense(&g, &conv));
        assert_eq!(from_dense(&prod, |v| v.clone()).unwrap(), h.mul(&g));
    }

    #[test]
    fn permanent_of_two_by_two() {
        let p = |s: &str| Some(TropPoly1::parse(s).unwrap());
        let rows = vec![vec![p("1"), p("0 + 0y")], vec![p("2"), p("5")]];
        // max(1 + 5, (0 + 0y) + 2) = 6 + 2y
        assert_eq!(permanent(&rows).unwrap(), TropPoly1::parse("6 + 2y").unwrap());
    }
}
