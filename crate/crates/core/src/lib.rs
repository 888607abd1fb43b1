//! Exact construction and verification of the quantum algebras obtained from
//! the Bell matrix through the FRT (ŘTT) recipe, together with tools for
//! analysing their low-dimensional representations.

pub mod bellmodels;
pub mod expr;
pub mod freealg;
pub mod linalg;
pub mod reptheory;
pub mod scalar;
