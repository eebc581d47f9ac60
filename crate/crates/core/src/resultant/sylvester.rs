//! The resultant of two univariate polynomials with indeterminate
//! coefficients on prescribed supports.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::det::{check_size, determinant, sylvester_rows, IntPoly};
use super::sympoly::{pack_var, unpack, SymPoly, Var};
use super::CharMode;
use crate::error::{Error, Result};

type Key = (Vec<u32>, Vec<u32>);

fn cache() -> &'static Mutex<HashMap<Key, Arc<SymPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<SymPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn check_supports(i: &BTreeSet<u32>, j: &BTreeSet<u32>) -> Result<(u32, u32)> {
    for (name, s) in [("I", i), ("J", j)] {
        if s.len() < 2 {
            return Err(Error::UnsupportedSupport(format!("{name} needs at least two exponents")));
        }
        if !s.contains(&0) {
            return Err(Error::UnsupportedSupport(format!("{name} must contain 0")));
        }
        if *s.last().expect("nonempty") > 15 {
            return Err(Error::UnsupportedSupport(format!("{name} has an exponent above 15")));
        }
    }
    let n = *i.last().expect("nonempty");
    let m = *j.last().expect("nonempty");
    check_size((n + m) as usize)?;
    Ok((n, m))
}

/// Characteristic-zero resultant `R(I, J)` over ℤ, cached per support pair.
pub(crate) fn integer_resultant(i: &BTreeSet<u32>, j: &BTreeSet<u32>) -> Result<Arc<SymPoly>> {
    check_supports(i, j)?;
    let key: Key = (i.iter().copied().collect(), j.iter().copied().collect());
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let f: Vec<(u32, IntPoly<u128>)> = i.iter().map(|&e| (e, IntPoly::monomial(pack_var(Var::A(e)), 1))).collect();
    let g: Vec<(u32, IntPoly<u128>)> = j.iter().map(|&e| (e, IntPoly::monomial(pack_var(Var::B(e)), 1))).collect();
    let det = determinant(&sylvester_rows(&f, &g))?;
    let poly = Arc::new(SymPoly::from_terms(det.terms.into_iter().map(|(m, c)| (unpack(m), BigInt::from(c)))));
    cache().lock().expect("cache lock").insert(key, poly.clone());
    Ok(poly)
}

/// Determinant of the Sylvester matrix with indeterminate entries `a_i`
/// (`i ∈ I`) and `b_j` (`j ∈ J`). In characteristic `p` the coefficients are
/// reduced into `[0, p)`.
pub fn sylvester_resultant(i: &BTreeSet<u32>, j: &BTreeSet<u32>, mode: CharMode) -> Result<SymPoly> {
    let r = integer_resultant(i, j)?;
    Ok(match mode {
        CharMode::EquiCharP(p) => r.reduce_mod(p),
        CharMode::EquiCharZero | CharMode::PAdic(_) => (*r).clone(),
    })
}
