//! Noncommutative polynomials, ŘTT relation extraction and bounded-degree
//! ideal membership.

pub mod catalogue;
mod ideal;
mod poly;
mod relations;
mod word;

use thiserror::Error;

use crate::expr::ParseError;
use crate::linalg::LinalgError;
use crate::scalar::ScalarError;

pub use ideal::{ideal_member, CertificateJson, CertificateTerm, CertificateTermJson, IdealCertificate, Membership};
pub use poly::NCPoly;
pub use relations::{
    derive_b_algebra, frt_derive, parse_relation, BAlgebra, Relation, RelationJson, RelationSet, RelationSetJson,
};
pub use word::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("parameter-set mismatch: {0} vs {1}")]
    ParamMismatch(String, String),
    #[error("division by non-scalar `{0}`")]
    NonScalarDivision(String),
    #[error("negative power of non-scalar `{0}`")]
    NegativePower(String),
    #[error("scale for `{0}` is not a Laurent unit: {1}")]
    NonUnitScale(String, String),
    #[error("degree bound {bound} is below the target degree {degree}")]
    BoundTooSmall { bound: usize, degree: usize },
    #[error("unbalanced bracket in `{0}`")]
    Bracket(String),
    #[error("FRT derivation needs a 4x4 matrix, got {0}x{1}")]
    Shape(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<ParseError> for FreeAlgError {
    fn from(e: ParseError) -> Self {
        FreeAlgError::Scalar(ScalarError::Parse(e))
    }
}
