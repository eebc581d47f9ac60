//! Lifts of tropical curves over Puiseux scalars and residual genericity.

mod algpoly;
mod algres;
mod basis;
mod genericity;
mod puiseux;

pub use algpoly::{lift_generic, residual_polynomial, tropicalize_alg, AlgPoly1, AlgPoly2, ResidualPoly};
pub use algres::{alg_resultant, alg_resultant_wrt_x, alg_resultant_wrt_y, alg_resultant_wrt_z, AlgResultant, Elimination};
pub use basis::{tropical_basis, TropicalBasis};
pub use genericity::{
    cell_conditions, check_lift, compare_resultant, evaluate_condition, gamma_polynomials, genericity_conditions,
    resultant_conditions, separating_exponent, Condition, ConditionSource, EvaluatedCondition, GenericityCertificate,
    ResultantCheck,
};
pub use puiseux::PuiseuxScalar;
