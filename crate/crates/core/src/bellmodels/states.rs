use std::fmt;

use super::{build_bell, BellError, BellSign};
use crate::linalg::{hermitian_inner, FieldVector, SymVector};
use crate::scalar::FieldElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellState {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [BellState::PsiPlus, BellState::PsiMinus, BellState::PhiPlus, BellState::PhiMinus];

    pub fn name(self) -> &'static str {
        match self {
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
        }
    }

    /// ψ± = (|00⟩ ± |11⟩)/√2, φ± = (|01⟩ ± |10⟩)/√2.
    pub fn vector(self) -> FieldVector {
        let h = FieldElement::inv_sqrt2();
        let z = FieldElement::zero();
        match self {
            BellState::PsiPlus => vec![h.clone(), z.clone(), z, h],
            BellState::PsiMinus => vec![h.clone(), z.clone(), z, -h],
            BellState::PhiPlus => vec![z.clone(), h.clone(), h, z],
            BellState::PhiMinus => vec![z.clone(), h.clone(), -h, z],
        }
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// (ψ₊, ψ₋, φ₊, φ₋).
pub fn bell_states() -> [SymVector; 4] {
    BellState::ALL.map(|s| SymVector::from_field(&s.vector()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationEntry {
    pub ket: String,
    pub sign: i8,
    pub state: BellState,
}

impl fmt::Display for GenerationEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        write!(f, "|{}> -> {s}{}", self.ket, self.state)
    }
}

fn match_signed(v: &[FieldElement]) -> Option<(i8, BellState)> {
    for s in BellState::ALL {
        let b = s.vector();
        let c = hermitian_inner(&b, v);
        for sign in [1i8, -1] {
            if c == FieldElement::from_int(sign as i64) {
                let scaled: FieldVector = b.iter().map(|x| x * &c).collect();
                if scaled == v {
                    return Some((sign, s));
                }
            }
        }
    }
    None
}

/// B±|ij⟩ for the four product kets, each identified as ± a Bell state.
pub fn generation_table(s: BellSign) -> Result<Vec<GenerationEntry>, BellError> {
    let b = build_bell(s).to_field().expect("numeric matrix");
    ["00", "01", "10", "11"]
        .iter()
        .enumerate()
        .map(|(k, ket)| {
            let (sign, state) = match_signed(&b.column(k)).ok_or_else(|| BellError::NotBellState(ket.to_string()))?;
            Ok(GenerationEntry { ket: ket.to_string(), sign, state })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellmodels::{pauli, Pauli};
    use crate::linalg::{FieldMatrix, SymMatrix};
    use crate::scalar::ParamSet;

    #[test]
    fn orthonormal() {
        for a in BellState::ALL {
            for b in BellState::ALL {
                let ip = hermitian_inner(&a.vector(), &b.vector());
                assert_eq!(ip, FieldElement::from_int((a == b) as i64));
            }
        }
    }

    #[test]
    fn local_unitaries() {
        let id = SymMatrix::identity(2, &ParamSet::empty());
        let act = |m: SymMatrix| id.kron(&m).to_field().unwrap().apply(&BellState::PsiPlus.vector());
        assert_eq!(act(pauli(Pauli::Z)), BellState::PsiMinus.vector());
        assert_eq!(act(pauli(Pauli::X)), BellState::PhiPlus.vector());
        let my = pauli(Pauli::Y).scale(&-FieldElement::i());
        assert_eq!(act(my), BellState::PhiMinus.vector());
    }

    #[test]
    fn computed_tables() {
        let show = |s| generation_table(s).unwrap().iter().map(|e| e.to_string()).collect::<Vec<_>>();
        assert_eq!(show(BellSign::Plus), ["|00> -> psi-", "|01> -> phi-", "|10> -> phi+", "|11> -> psi+"]);
        assert_eq!(show(BellSign::Minus), ["|00> -> psi-", "|01> -> phi+", "|10> -> -phi-", "|11> -> psi+"]);
    }

    #[test]
    fn non_bell_column_is_rejected() {
        let m = FieldMatrix::identity(4);
        assert!(match_signed(&m.column(0)).is_none());
    }
}
