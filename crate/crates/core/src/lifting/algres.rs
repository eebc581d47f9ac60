//! Algebraic resultants of lifted curves, computed as Sylvester
//! determinants over univariate polynomials with Puiseux coefficients.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::algpoly::{AlgPoly1, AlgPoly2};
use super::puiseux::PuiseuxScalar;
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Q};
use crate::resultant::det::{check_size, determinant, sylvester_rows, DetRing};
use crate::resultant::{trop_resultant_wrt_x, trop_resultant_wrt_y, trop_resultant_wrt_z, CharMode};
use crate::trop::{Exp2, TropPoly1, TropPoly2};

/// Which variable a resultant eliminates. `Z(a)` eliminates `y` after the
/// substitution `x = z·y^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Elimination {
    X,
    Y,
    Z(u32),
}

impl Elimination {
    /// `(eliminated exponent, kept exponent)` of `x^i y^j`.
    pub fn split(self, e: Exp2) -> (u32, u32) {
        match self {
            Elimination::X => (e.i, e.j),
            Elimination::Y => (e.j, e.i),
            Elimination::Z(a) => (e.j + a * e.i, e.i),
        }
    }

    /// The variable of the resultant.
    pub fn kept_variable(self) -> &'static str {
        match self {
            Elimination::X => "y",
            Elimination::Y => "x",
            Elimination::Z(_) => "z",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Elimination::X => "res_x",
            Elimination::Y => "res_y",
            Elimination::Z(_) => "res_z",
        }
    }

    /// The tropical resultant of the tropicalizations, in characteristic 0.
    pub fn tropical(self, f: &TropPoly2, g: &TropPoly2) -> Result<TropPoly1> {
        match self {
            Elimination::X => trop_resultant_wrt_x(f, g, CharMode::EquiCharZero),
            Elimination::Y => trop_resultant_wrt_y(f, g, CharMode::EquiCharZero),
            Elimination::Z(a) => trop_resultant_wrt_z(f, g, a, CharMode::EquiCharZero),
        }
    }
}

/// Terms grouped by eliminated exponent, shifted so the least one is 0.
pub(crate) fn group_terms<T: Clone>(
    terms: impl IntoIterator<Item = (Exp2, T)>,
    elim: Elimination,
    which: &str,
) -> Result<BTreeMap<u32, Vec<(u32, T)>>> {
    let mut map: BTreeMap<u32, Vec<(u32, T)>> = BTreeMap::new();
    for (e, c) in terms {
        let (i, k) = elim.split(e);
        map.entry(i).or_default().push((k, c));
    }
    if map.len() < 2 {
        return Err(Error::SupportTooSmall(format!(
            "{which} needs two distinct exponents in the eliminated variable"
        )));
    }
    let shift = *map.keys().next().expect("nonempty");
    Ok(map.into_iter().map(|(i, v)| (i - shift, v)).collect())
}

/// Polynomial in the kept variable with coefficients in `t^{1/N}`:
/// key `(degree, N·exponent)`.
#[derive(Clone, Debug, Default)]
struct PRing {
    terms: HashMap<(u32, i64), Q>,
}

impl DetRing for PRing {
    fn zero() -> Self {
        PRing::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn mul(&self, other: &Self) -> Result<Self> {
        let mut out: HashMap<(u32, i64), Q> = HashMap::new();
        for ((d1, e1), c1) in &self.terms {
            for ((d2, e2), c2) in &other.terms {
                let e = e1.checked_add(*e2).ok_or(Error::CoefficientOverflow)?;
                *out.entry((d1 + d2, e)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(PRing { terms: out })
    }

    fn accumulate(&mut self, other: &Self, negate: bool) -> Result<()> {
        for (k, c) in &other.terms {
            let e = self.terms.entry(*k).or_insert_with(Q::zero);
            if negate {
                *e -= c;
            } else {
                *e += c;
            }
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
        Ok(())
    }
}

/// Either a nonzero polynomial or the tagged identically-zero case, which
/// happens when the inputs share a factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgResultant {
    Poly(AlgPoly1),
    IdenticallyZero,
}

impl AlgResultant {
    pub fn poly(&self) -> Option<&AlgPoly1> {
        match self {
            AlgResultant::Poly(p) => Some(p),
            AlgResultant::IdenticallyZero => None,
        }
    }

    pub fn tropicalize(&self) -> Option<TropPoly1> {
        self.poly().and_then(AlgPoly1::tropicalize)
    }

    pub fn display_with(&self, var: &str) -> String {
        match self {
            AlgResultant::Poly(p) => p.display_with(var),
            AlgResultant::IdenticallyZero => "0".into(),
        }
    }
}

pub fn alg_resultant(f: &AlgPoly2, g: &AlgPoly2, elim: Elimination) -> Result<AlgResultant> {
    let fa = group_terms(f.terms().iter().map(|(e, c)| (*e, c.clone())), elim, "F")?;
    let gb = group_terms(g.terms().iter().map(|(e, c)| (*e, c.clone())), elim, "G")?;
    let n = *fa.keys().last().expect("nonempty") as usize;
    let m = *gb.keys().last().expect("nonempty") as usize;
    check_size(n + m)?;
    let exps: Vec<&Q> =
        fa.values().chain(gb.values()).flatten().flat_map(|(_, c)| c.terms().iter().map(|(_, e)| e)).collect();
    let den = common_denominator(exps.iter().copied());
    let den_i = den.to_i64().ok_or(Error::CoefficientOverflow)?;
    let scale = |e: &Q| -> Result<i64> { (e * Q::from_integer(den.clone())).to_integer().to_i64().ok_or(Error::CoefficientOverflow) };
    let ring = |terms: &Vec<(u32, PuiseuxScalar)>| -> Result<PRing> {
        let mut r = PRing::default();
        for (k, c) in terms {
            for (coef, e) in c.terms() {
                r.accumulate(&PRing { terms: [((*k, scale(e)?), coef.clone())].into() }, false)?;
            }
        }
        Ok(r)
    };
    let fr: Vec<(u32, PRing)> = fa.iter().map(|(i, t)| Ok((*i, ring(t)?))).collect::<Result<_>>()?;
    let gr: Vec<(u32, PRing)> = gb.iter().map(|(j, t)| Ok((*j, ring(t)?))).collect::<Result<_>>()?;
    let det = determinant(&sylvester_rows(&fr, &gr))?;
    if det.is_zero() {
        return Ok(AlgResultant::IdenticallyZero);
    }
    let mut by_degree: BTreeMap<u32, Vec<(Q, Q)>> = BTreeMap::new();
    for ((d, e), c) in det.terms {
        by_degree.entry(d).or_default().push((c, Q::new(BigInt::from(e), BigInt::from(den_i))));
    }
    Ok(AlgResultant::Poly(AlgPoly1::new(by_degree.into_iter().map(|(d, t)| (d, PuiseuxScalar::from_terms(t))))))
}

pub fn alg_resultant_wrt_x(f: &AlgPoly2, g: &AlgPoly2) -> Result<AlgResultant> {
    alg_resultant(f, g, Elimination::X)
}

pub fn alg_resultant_wrt_y(f: &AlgPoly2, g: &AlgPoly2) -> Result<AlgResultant> {
    alg_resultant(f, g, Elimination::Y)
}

/// `Res_y(F(z·y^a, y), G(z·y^a, y))`.
pub fn alg_resultant_wrt_z(f: &AlgPoly2, g: &AlgPoly2, a: u32) -> Result<AlgResultant> {
    alg_resultant(f, g, Elimination::Z(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::algpoly::{lift_generic, tropicalize_alg};
    use crate::trop::roots_from;

    fn conic() -> TropPoly2 {
        "0+1x+1y+1xy+0x²+0y²".parse().unwrap()
    }

    #[test]
    fn generic_lines() {
        let f: AlgPoly2 = "2 + 3*x - 5*y".parse().unwrap();
        let g: AlgPoly2 = "7*t^(-1) + x + 4*t*y".parse().unwrap();
        let r = alg_resultant_wrt_x(&f, &g).unwrap();
        let p = r.poly().unwrap();
        assert_eq!(p.degree(), Some(1));
        // 2·1 − 3·7t^{-1} + (−5·1 − 3·4t)·y
        assert_eq!(p.terms()[&0], "2 - 21*t^(-1)".parse().unwrap());
        assert_eq!(p.terms()[&1], "-5 - 12*t".parse().unwrap());
        let tf = tropicalize_alg(&f).unwrap();
        let tg = tropicalize_alg(&g).unwrap();
        assert_eq!(r.tropicalize().unwrap().roots(), Elimination::X.tropical(&tf, &tg).unwrap().roots());
    }

    #[test]
    fn identical_inputs_vanish() {
        let f = lift_generic(&conic(), 4);
        assert_eq!(alg_resultant_wrt_x(&f, &f).unwrap(), AlgResultant::IdenticallyZero);
    }

    #[test]
    fn lifted_conics() {
        let f = lift_generic(&conic(), 1);
        let g = lift_generic(&conic(), 2);
        let rx = alg_resultant_wrt_x(&f, &g).unwrap().tropicalize().unwrap();
        assert_eq!(rx.degree(), 4);
        assert_eq!(rx.roots(), roots_from(&[(-1, 1), (0, 2), (1, 1)]));
        let rz = alg_resultant_wrt_z(&f, &g, 3).unwrap().tropicalize().unwrap();
        assert_eq!(rz.roots(), roots_from(&[(-3, 1), (0, 1), (1, 1), (2, 1)]));
    }

    #[test]
    fn too_large() {
        let f: AlgPoly2 = "1 + x^7 + y".parse().unwrap();
        let g: AlgPoly2 = "1 + x^6 + y".parse().unwrap();
        assert!(matches!(alg_resultant_wrt_x(&f, &g), Err(Error::MatrixTooLarge { size: 13, .. })));
    }
}
