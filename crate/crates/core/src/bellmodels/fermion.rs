use super::BellError;
use crate::linalg::SpectralFamily;
use crate::scalar::LaurentPoly;

/// Both sides of Ř⁰⁰₀₀Ř¹¹₁₁ − Ř⁰⁰₁₁Ř¹¹₀₀ = Ř⁰¹₀₁Ř¹⁰₁₀ − Ř⁰¹₁₀Ř¹⁰₀₁.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeFermionReport {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl FreeFermionReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check_free_fermion(f: &SpectralFamily) -> Result<FreeFermionReport, BellError> {
    let m = f.matrix();
    for i in 0..4 {
        for j in 0..4 {
            if j != i && j != 3 - i && !m.get(i, j).is_zero() {
                return Err(BellError::NotEightVertex(i, j));
            }
        }
    }
    let e = |i, j| m.get(i, j);
    let lhs = &(e(0, 0) * e(3, 3)) - &(e(0, 3) * e(3, 0));
    let rhs = &(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1));
    Ok(FreeFermionReport { lhs, rhs })
}
