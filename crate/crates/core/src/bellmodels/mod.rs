//! The Bell matrices, their deformations and Yang–Baxterization, Bell states
//! and the θ-evolution.

mod evolution;
mod fermion;
mod states;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::{LinalgError, SpectralFamily, SymMatrix};
use crate::scalar::{FieldElement, LaurentPoly, ParamSet};

pub use evolution::{
    closed_form, evolution_matrix, evolve, exp_series, hamiltonian, sigma_n1, sigma_n2, CMatrix4, EvolutionJson,
    EvolutionPoint,
};
pub use fermion::{check_free_fermion, FreeFermionReport};
pub use states::{bell_states, generation_table, BellState, GenerationEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BellError {
    #[error("B|{0}> is not a signed Bell state")]
    NotBellState(String),
    #[error("not eight-vertex shaped: entry ({0},{1}) is nonzero")]
    NotEightVertex(usize, usize),
    #[error("evolution angles must be finite")]
    NonFinite,
    #[error("unknown sign `{0}`")]
    BadSign(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellSign {
    Plus,
    Minus,
}

impl BellSign {
    pub fn factor(self) -> i64 {
        match self {
            BellSign::Plus => 1,
            BellSign::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BellSign::Plus => "+",
            BellSign::Minus => "-",
        }
    }
}

impl fmt::Display for BellSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for BellSign {
    type Err = BellError;

    fn from_str(s: &str) -> Result<Self, BellError> {
        match s {
            "+" | "plus" | "p" => Ok(BellSign::Plus),
            "-" | "minus" | "m" => Ok(BellSign::Minus),
            _ => Err(BellError::BadSign(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaFlag {
    PlusOne,
    MinusOne,
}

impl OmegaFlag {
    pub fn value(self) -> i64 {
        match self {
            OmegaFlag::PlusOne => 1,
            OmegaFlag::MinusOne => -1,
        }
    }

    pub fn from_value(w: i64) -> Option<Self> {
        match w {
            1 => Some(OmegaFlag::PlusOne),
            -1 => Some(OmegaFlag::MinusOne),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

pub fn pauli(p: Pauli) -> SymMatrix {
    let (o, z, i) = (FieldElement::one(), FieldElement::zero(), FieldElement::i());
    let e = match p {
        Pauli::X => vec![z.clone(), o.clone(), o, z],
        Pauli::Y => vec![z.clone(), -&i, i, z],
        Pauli::Z => vec![o.clone(), z.clone(), z, -o],
        Pauli::Plus => vec![z.clone(), o, z.clone(), z],
        Pauli::Minus => vec![z.clone(), z.clone(), o, z],
    };
    SymMatrix::from_field(2, 2, e).expect("2x2")
}

fn q_params() -> ParamSet {
    ParamSet::new(["q"]).expect("valid name")
}

/// Integer-entry Bell matrix with the q-deformed corners, without the 1/√2.
pub fn build_bell_q(s: BellSign) -> SymMatrix {
    let p = q_params();
    let (a, b) = match s {
        BellSign::Plus => ("1", "-1"),
        BellSign::Minus => ("-1", "1"),
    };
    SymMatrix::parse(4, 4, &p, &["1", "0", "0", "q", "0", "1", a, "0", "0", b, "1", "0", "-q^-1", "0", "0", "1"])
        .expect("well-formed constant")
}

pub fn build_bell(s: BellSign) -> SymMatrix {
    let unit = std::collections::BTreeMap::from([("q".to_string(), FieldElement::one())]);
    build_bell_q(s).evaluate(&unit).expect("q is bound").scale(&FieldElement::inv_sqrt2())
}

pub fn build_r_omega(w: OmegaFlag) -> SymMatrix {
    let p = q_params();
    let (a, d) = match w {
        OmegaFlag::PlusOne => ("1", "q^-1"),
        OmegaFlag::MinusOne => ("-1", "-q^-1"),
    };
    SymMatrix::parse(4, 4, &p, &["1", "0", "0", "q", "0", "1", "1", "0", "0", a, "1", "0", d, "0", "0", "1"])
        .expect("well-formed constant")
}

/// B±(x) = B± + 2x·B±⁻¹ over the unnormalized, q-deformed B±.
pub fn build_spectral_bell(s: BellSign) -> SpectralFamily {
    let b = build_bell_q(s);
    let p = ParamSet::new(["q", "x"]).expect("valid names");
    let two_x = LaurentPoly::var(&p, "x").expect("x in set").scale(&FieldElement::from_int(2));
    let m = b.inverse().and_then(|inv| b.checked_add(&inv.scalar_mul(&two_x)?)).expect("invertible");
    SpectralFamily::new("x", m).expect("4x4 family")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{check_braid_ybe, check_spectral_ybe, Convention, SpectralVerdict};
    use std::collections::BTreeMap;

    fn i4() -> SymMatrix {
        SymMatrix::identity(4, &ParamSet::empty())
    }

    #[test]
    fn bell_powers() {
        for s in [BellSign::Plus, BellSign::Minus] {
            let b = build_bell(s);
            assert_eq!(b.pow(4).unwrap(), i4().scale(&FieldElement::from_int(-1)));
            assert_eq!(b.pow(8).unwrap(), i4());
            let rhs = i4().checked_add(&b.pow(2).unwrap()).unwrap().scale(&FieldElement::inv_sqrt2());
            assert_eq!(b, rhs);
            assert_eq!(b.adjoint(&[]).unwrap().checked_mul(&b).unwrap(), i4());
        }
        let b = build_bell(BellSign::Plus);
        assert_eq!(b.get(0, 0).to_string(), "1/2*sqrt2");
        assert_eq!(b.get(0, 3).to_string(), "1/2*sqrt2");
        assert!(b.get(0, 1).is_zero());
    }

    #[test]
    fn r_omega_deforms_bell_plus() {
        let r = build_r_omega(OmegaFlag::MinusOne);
        let unit = BTreeMap::from([("q".to_string(), FieldElement::one())]);
        let at1 = r.evaluate(&unit).unwrap().scale(&FieldElement::inv_sqrt2());
        assert_eq!(at1, build_bell(BellSign::Plus));
        assert!(check_braid_ybe(&r).unwrap().holds());
        assert!(check_braid_ybe(&build_r_omega(OmegaFlag::PlusOne)).unwrap().holds());
        assert!(check_braid_ybe(&build_bell(BellSign::Minus)).unwrap().holds());
    }

    #[test]
    fn spectral_family_entries() {
        let f = build_spectral_bell(BellSign::Plus);
        let m = f.matrix();
        assert_eq!(m.get(0, 0).to_string(), "1 + x");
        assert_eq!(m.get(0, 3).to_string(), "q - q*x");
        assert_eq!(m.get(3, 0).to_string(), "-q^-1 + q^-1*x");
        assert_eq!(m.get(1, 2).to_string(), "1 - x");
        assert_eq!(m.get(2, 1).to_string(), "-1 + x");
        let zero = LaurentPoly::zero(&ParamSet::empty());
        assert_eq!(f.instantiate(&zero).unwrap(), build_bell_q(BellSign::Plus));
        assert_eq!(check_spectral_ybe(&f).unwrap(), SpectralVerdict::Holds(Convention::Multiplicative));
    }

    #[test]
    fn pauli_relations() {
        assert!(pauli(Pauli::Plus).pow(2).unwrap().is_zero());
        assert!(pauli(Pauli::Minus).pow(2).unwrap().is_zero());
        let sp = pauli(Pauli::X).checked_add(&pauli(Pauli::Y).scale(&FieldElement::i())).unwrap();
        assert_eq!(sp.scale(&FieldElement::from_ratio(1, 2)), pauli(Pauli::Plus));
    }
}
