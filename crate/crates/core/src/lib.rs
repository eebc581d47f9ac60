//! Exact computations with tropical plane curves.
//!
//! Tropical polynomials use the max-plus convention with rational
//! coefficients. The crate computes regular subdivisions and dual curves,
//! stable intersections with multiplicities, sparse Sylvester resultants and
//! their tropicalizations, and genericity certificates for algebraic lifts
//! over Puiseux scalars.

pub mod error;
pub mod lifting;
pub mod polytope;
pub mod random;
pub mod rational;
pub mod resultant;
pub mod stable;
pub mod subdivision;
mod text;
pub mod trop;

pub use error::{Error, Result};
pub use rational::{parse_q, QPoint, Q};
pub use trop::{Exp2, Root, TropPoly1, TropPoly2};
