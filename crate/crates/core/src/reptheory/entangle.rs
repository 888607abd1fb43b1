use std::fmt;

use super::{RepError, Representation};
use crate::freealg::Generator;
use crate::linalg::{hermitian_inner, FieldMatrix, FieldVector};
use crate::scalar::FieldElement;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtData {
    /// Descending, for the normalized state.
    pub coefficients: [f64; 2],
    pub maximally_entangled: bool,
}

fn coefficient_matrix(state: &[FieldElement]) -> Result<FieldMatrix, RepError> {
    if state.len() != 4 {
        return Err(RepError::Shape(format!("two-qubit state needs 4 entries, got {}", state.len())));
    }
    Ok(FieldMatrix::new(2, 2, state.to_vec()))
}

fn real_part(x: &FieldElement) -> f64 {
    x.to_complex().re
}

/// Schmidt coefficients of a two-qubit state.
///
/// With N = ‖s‖² and D the determinant of the coefficient matrix, the squared
/// coefficients are (1 ± √(1 − 4|D|²/N²))/2. The discriminant is formed exactly, so a
/// maximally entangled input gives exactly 1/√2 twice.
pub fn schmidt(state: &[FieldElement]) -> Result<SchmidtData, RepError> {
    let c = coefficient_matrix(state)?;
    let norm2 = hermitian_inner(state, state);
    if norm2.is_zero() {
        return Err(RepError::ZeroState);
    }
    let det = &(c.get(0, 0) * c.get(1, 1)) - &(c.get(0, 1) * c.get(1, 0));
    let det2 = &det * &det.conj();
    let disc = &(&norm2 * &norm2) - &(&FieldElement::from_int(4) * &det2);
    let ratio = real_part(&disc) / real_part(&(&norm2 * &norm2));
    let s = ratio.max(0.0).sqrt();
    let hi = ((1.0 + s) / 2.0).sqrt();
    let lo = ((1.0 - s) / 2.0).max(0.0).sqrt();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let maximally_entangled = disc.is_zero() || ((hi - h).abs() < 1e-12 && (lo - h).abs() < 1e-12);
    let coefficients = if disc.is_zero() { [h, h] } else { [hi, lo] };
    Ok(SchmidtData { coefficients, maximally_entangled })
}

/// The state scaled to unit norm, when the scale stays in the field.
pub fn normalize_state(state: &[FieldElement]) -> Option<FieldVector> {
    let n = hermitian_inner(state, state).rational_sqrt()?;
    let inv = n.inv().ok()?;
    Some(state.iter().map(|x| x * &inv).collect())
}

/// U with (𝟙₂⊗U)|ψ₊⟩ = state, namely √2 times the transposed coefficient matrix.
pub fn local_unitary_from_bell(state: &[FieldElement]) -> Result<FieldMatrix, RepError> {
    let sd = schmidt(state)?;
    if !sd.maximally_entangled {
        return Err(RepError::NotMaximallyEntangled(format!("Schmidt coefficients {:?}", sd.coefficients)));
    }
    let u = coefficient_matrix(state)?.transpose().scale(&FieldElement::sqrt2());
    if u.adjoint().mul(&u) != FieldMatrix::identity(2) {
        return Err(RepError::NotMaximallyEntangled("√2·Cᵀ is not unitary (state not normalized?)".into()));
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Phi,
    Psi,
}

impl fmt::Display for LadderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LadderKind::Phi => "phi",
            LadderKind::Psi => "psi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderCheck {
    pub n: u32,
    pub relation: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderReport {
    pub kind: LadderKind,
    pub lambda: FieldElement,
    pub lambda_prime: FieldElement,
    pub checks: Vec<LadderCheck>,
}

impl LadderReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn binding(rep: &Representation, k: &str) -> Result<FieldElement, RepError> {
    rep.bindings().get(k).cloned().ok_or_else(|| RepError::Precondition(format!("ladder needs a fermion coproduct; `{k}` unbound")))
}

fn combo(terms: &[(usize, FieldElement)]) -> FieldVector {
    let mut v = vec![FieldElement::zero(); 4];
    for (k, c) in terms {
        v[*k] = &v[*k] + c;
    }
    v
}

fn scaled(v: &[FieldElement], c: &FieldElement) -> FieldVector {
    v.iter().map(|x| x * c).collect()
}

/// Checks the ladder actions on the coproduct of fermion(1, λ) and fermion(1, λ′).
///
/// φₙ = λ′ⁿ|01⟩ − λⁿ|10⟩ and, when λλ′ = 1, ψₙ = n|00⟩ + |11⟩.
pub fn ladder_check(rep: &Representation, kind: LadderKind, n_max: u32) -> Result<LadderReport, RepError> {
    let one = FieldElement::one();
    if rep.dim() != 4 || binding(rep, "l1")? != one || binding(rep, "l1'")? != one {
        return Err(RepError::Precondition("ladder needs fermion(1, l) (x) fermion(1, l')".into()));
    }
    let (l, lp) = (binding(rep, "l2")?, binding(rep, "l2'")?);
    if kind == LadderKind::Psi && &l * &lp != one {
        return Err(RepError::Precondition(format!("psi ladder needs l*l' = 1, got {}", &l * &lp)));
    }
    let phi = |n: u32| -> Result<FieldVector, RepError> {
        Ok(combo(&[(1, lp.pow(n as i64)?), (2, -&l.pow(n as i64)?)]))
    };
    let psi = |n: u32| combo(&[(0, FieldElement::from_int(n as i64)), (3, one.clone())]);
    let act = |g: Generator, v: &[FieldElement]| rep.image(g).apply(v);
    let mut checks = Vec::new();
    let mut push = |n: u32, relation: &str, holds: bool| checks.push(LadderCheck { n, relation: relation.into(), holds });
    for n in 1..=n_max {
        match kind {
            LadderKind::Phi => {
                let (v, next) = (phi(n)?, phi(n + 1)?);
                let low = combo(&[(0, &lp.pow(n as i64)? - &l.pow(n as i64)?)]);
                push(n, "a|phi_n> = |phi_n+1>", act(Generator::A, &v) == next);
                push(n, "d|phi_n> = -|phi_n+1>", act(Generator::D, &v) == scaled(&next, &-&one));
                push(n, "b|phi_n> = (l'^n - l^n)|00>", act(Generator::B, &v) == low);
                push(n, "c|phi_n> = (l'^n - l^n)|00>", act(Generator::C, &v) == low);
            }
            LadderKind::Psi => {
                let (v, next, p1) = (psi(n), psi(n + 1), phi(1)?);
                push(n, "a|psi_n> = |psi_n+1>", act(Generator::A, &v) == next);
                push(n, "d|psi_n> = |psi_n+1>", act(Generator::D, &v) == next);
                push(n, "b|psi_n> = -|phi_1>", act(Generator::B, &v) == scaled(&p1, &-&one));
                push(n, "c|psi_n> = |phi_1>", act(Generator::C, &v) == p1);
            }
        }
    }
    Ok(LadderReport { kind, lambda: l, lambda_prime: lp, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellmodels::BellState;

    fn chi1() -> FieldVector {
        let i = FieldElement::i();
        let h = FieldElement::inv_sqrt2();
        let (p, f) = (BellState::PsiPlus.vector(), BellState::PhiPlus.vector());
        p.iter().zip(&f).map(|(x, y)| &h * &(x + &(&i * y))).collect()
    }

    #[test]
    fn schmidt_examples() {
        let s = schmidt(&BellState::PsiPlus.vector()).unwrap();
        assert!(s.maximally_entangled);
        let e00: FieldVector = [1, 0, 0, 0].map(FieldElement::from_int).to_vec();
        let s = schmidt(&e00).unwrap();
        assert!(!s.maximally_entangled);
        assert!((s.coefficients[0] - 1.0).abs() < 1e-15 && s.coefficients[1].abs() < 1e-15);
        assert!(schmidt(&chi1()).unwrap().maximally_entangled);
        assert!(matches!(schmidt(&vec![FieldElement::zero(); 4]), Err(RepError::ZeroState)));
        // unnormalized product state
        let v: FieldVector = [3, 4, 0, 0].map(FieldElement::from_int).to_vec();
        let s = schmidt(&v).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_for_chi1() {
        let u = local_unitary_from_bell(&chi1()).unwrap();
        let h = FieldElement::inv_sqrt2();
        let ih = &FieldElement::i() * &h;
        assert_eq!(u, FieldMatrix::from_rows(vec![vec![h.clone(), ih.clone()], vec![ih, h]]));
        assert_eq!(local_unitary_from_bell(&BellState::PsiPlus.vector()).unwrap(), FieldMatrix::identity(2));
        let e00: FieldVector = [1, 0, 0, 0].map(FieldElement::from_int).to_vec();
        assert!(local_unitary_from_bell(&e00).is_err());
        let unnormalized: FieldVector = [1, 0, 0, 1].map(FieldElement::from_int).to_vec();
        assert_eq!(normalize_state(&unnormalized).unwrap(), BellState::PsiPlus.vector());
        let odd: FieldVector = [1, 1, 1, 0].map(FieldElement::from_int).to_vec();
        assert!(normalize_state(&odd).is_none());
    }
}
