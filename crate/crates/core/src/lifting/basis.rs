//! The five polynomials `F, G, Res_x, Res_y, Res_z` whose tropical
//! hypersurfaces cut out the tropicalization of `F = G = 0`.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::algpoly::{tropicalize_alg, AlgPoly2};
use super::algres::{alg_resultant, AlgResultant, Elimination};
use super::genericity::separating_exponent;
use crate::error::{Error, Result};
use crate::rational::{q, QPoint, Q};
use crate::stable::StablePoint;
use crate::trop::TropPoly1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalBasis {
    pub f: AlgPoly2,
    pub g: AlgPoly2,
    pub res_x: AlgResultant,
    pub res_y: AlgResultant,
    /// Absent when the tropical curves do not meet.
    pub res_z: Option<AlgResultant>,
    pub a: Option<u32>,
}

/// Callers are responsible for `F = G = 0` being zero-dimensional; this is
/// not checked.
pub fn tropical_basis(f: &AlgPoly2, g: &AlgPoly2) -> Result<TropicalBasis> {
    let a = separating_exponent(&tropicalize_alg(f)?, &tropicalize_alg(g)?)?;
    Ok(TropicalBasis {
        f: f.clone(),
        g: g.clone(),
        res_x: alg_resultant(f, g, Elimination::X)?,
        res_y: alg_resultant(f, g, Elimination::Y)?,
        res_z: a.map(|a| alg_resultant(f, g, Elimination::Z(a))).transpose()?,
        a,
    })
}

fn trop_of(r: &AlgResultant, name: &str) -> Result<TropPoly1> {
    r.tropicalize().ok_or_else(|| Error::Empty(format!("{name} vanishes identically")))
}

impl TropicalBasis {
    /// Intersection of the five tropical hypersurfaces, with the multiplicity
    /// of `x − a·y` as a root of the tropicalized third resultant.
    pub fn tropical_points(&self) -> Result<Vec<StablePoint>> {
        let (Some(rz), Some(a)) = (&self.res_z, self.a) else { return Ok(Vec::new()) };
        let tf = tropicalize_alg(&self.f)?;
        let tg = tropicalize_alg(&self.g)?;
        let ys = trop_of(&self.res_x, "res_x")?.roots();
        let xs = trop_of(&self.res_y, "res_y")?.roots();
        let zs: BTreeMap<Q, u32> = trop_of(rz, "res_z")?.roots().into_iter().map(|r| (r.value, r.multiplicity)).collect();
        let mut out = Vec::new();
        for x in &xs {
            for y in &ys {
                let p = QPoint::new(x.value.clone(), y.value.clone());
                if !tf.is_trop_zero(&p) || !tg.is_trop_zero(&p) {
                    continue;
                }
                if let Some(&m) = zs.get(&(&p.x - q(a as i64) * &p.y)) {
                    out.push(StablePoint { point: p, multiplicity: m as u64 });
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

fn ser_res(r: &AlgResultant, var: &str) -> String {
    r.display_with(var)
}

impl Serialize for TropicalBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TropicalBasis", 6)?;
        st.serialize_field("f", &self.f)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("res_x", &ser_res(&self.res_x, "y"))?;
        st.serialize_field("res_y", &ser_res(&self.res_y, "x"))?;
        st.serialize_field("res_z", &self.res_z.as_ref().map(|r| ser_res(r, "z")))?;
        st.serialize_field("a", &self.a)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::algpoly::lift_generic;
    use crate::resultant::{stable_via_resultants, CharMode};
    use crate::trop::TropPoly2;

    #[test]
    fn conic_basis() {
        let c: TropPoly2 = "0+1x+1y+1xy+0x²+0y²".parse().unwrap();
        let b = tropical_basis(&lift_generic(&c, 5), &lift_generic(&c, 6)).unwrap();
        assert_eq!(b.a, Some(3));
        let pts = b.tropical_points().unwrap();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts, stable_via_resultants(&c, &c, CharMode::EquiCharZero).unwrap());
    }

    #[test]
    fn lines_basis() {
        let f: TropPoly2 = "0+0x+0y".parse().unwrap();
        let g: TropPoly2 = "0+1x+0y".parse().unwrap();
        let b = tropical_basis(&lift_generic(&f, 1), &lift_generic(&g, 2)).unwrap();
        let pts = b.tropical_points().unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts, stable_via_resultants(&f, &g, CharMode::EquiCharZero).unwrap());
    }
}
