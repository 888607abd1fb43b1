//! Exact scalars: the number field ℚ(i,√2) and Laurent polynomials over it.

mod field;
mod laurent;
mod params;

pub use field::{FieldElement, Rational};
pub use laurent::LaurentPoly;
pub use params::ParamSet;

use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("parameter-set mismatch: {0} vs {1}")]
    ParamMismatch(String, String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("duplicate parameter `{0}`")]
    DuplicateParameter(String),
    #[error("invalid parameter name `{0}`")]
    BadParameterName(String),
    #[error("`{0}` is not a Laurent unit")]
    NotInvertible(String),
    #[error("division by non-monomial `{0}` is not supported")]
    NonMonomialDivision(String),
    #[error("cannot substitute non-invertible `{value}` for `{param}` under a negative power")]
    NonInvertibleSubstitution { param: String, value: String },
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}
