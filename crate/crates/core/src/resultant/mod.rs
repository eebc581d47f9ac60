//! Sparse Sylvester resultants, their tropicalizations and the tropical
//! resultants of bivariate tropical polynomials.

mod bivariate;
pub(crate) mod det;
pub(crate) mod lp;
pub(crate) mod maxplus;
mod permanent;
pub(crate) mod sylvester;
mod sympoly;
mod tropical;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use bivariate::{
    choose_injective_a, monomial_substitute, resultant_pipeline, stable_via_resultants, trop_resultant_wrt_x,
    trop_resultant_wrt_y, trop_resultant_wrt_z, trop_sylvester_permanent, PipelineReport,
};
pub use det::MAX_SYLVESTER_SIZE;
pub use permanent::{conjecture_sweep, Discrepancy, SweepConfig, SweepReport};
pub use sylvester::sylvester_resultant;
pub use sympoly::{Monomial, SymPoly, Var};
pub use tropical::{p_valuation, same_trop_variety, tropicalize_resultant, upper_hull_vertices, TropResultant};

/// The valued field over which resultants are tropicalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CharMode {
    /// Residue field and field both of characteristic zero: every nonzero
    /// integer has valuation 0.
    #[default]
    EquiCharZero,
    /// Mixed characteristic: an integer `c` tropicalizes to `−v_p(c)`.
    PAdic(u64),
    /// Characteristic `p`: integers divisible by `p` vanish.
    EquiCharP(u64),
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FromStr for CharMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" || s == "0" {
            return Ok(CharMode::EquiCharZero);
        }
        let (kind, p) = s.split_once(':').ok_or_else(|| Error::Parse(format!("unknown characteristic {s:?}")))?;
        let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime in {s:?}")))?;
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        match kind.trim() {
            "padic" => Ok(CharMode::PAdic(p)),
            "equichar" | "char" => Ok(CharMode::EquiCharP(p)),
            _ => Err(Error::Parse(format!("unknown characteristic {s:?}"))),
        }
    }
}

impl fmt::Display for CharMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharMode::EquiCharZero => write!(f, "zero"),
            CharMode::PAdic(p) => write!(f, "padic:{p}"),
            CharMode::EquiCharP(p) => write!(f, "equichar:{p}"),
        }
    }
}
