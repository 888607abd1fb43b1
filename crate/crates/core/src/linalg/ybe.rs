use std::collections::BTreeMap;
use std::fmt;

use super::{LinalgError, SymMatrix};
use crate::scalar::{LaurentPoly, ParamSet, ScalarError};

/// A nonzero entry of LHS − RHS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YbeWitness {
    pub row: usize,
    pub col: usize,
    pub value: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum YbeVerdict {
    Holds,
    Fails(YbeWitness),
}

impl YbeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, YbeVerdict::Holds)
    }
}

fn braid_sides(a: &SymMatrix, b: &SymMatrix, c: &SymMatrix) -> Result<SymMatrix, LinalgError> {
    let i2 = SymMatrix::identity(2, &ParamSet::empty());
    let left = |m: &SymMatrix| m.kron(&i2);
    let right = |m: &SymMatrix| i2.kron(m);
    let lhs = left(a).checked_mul(&right(b))?.checked_mul(&left(c))?;
    let rhs = right(c).checked_mul(&left(b))?.checked_mul(&right(a))?;
    lhs.checked_sub(&rhs)
}

fn verdict(diff: SymMatrix) -> YbeVerdict {
    match diff.first_nonzero() {
        None => YbeVerdict::Holds,
        Some((row, col, v)) => YbeVerdict::Fails(YbeWitness { row, col, value: v.clone() }),
    }
}

fn require_4x4(r: &SymMatrix) -> Result<(), LinalgError> {
    if (r.rows(), r.cols()) != (4, 4) {
        return Err(LinalgError::Shape(format!("Yang-Baxter check needs 4x4, got {}x{}", r.rows(), r.cols())));
    }
    Ok(())
}

/// Decides (Ř⊗I)(I⊗Ř)(Ř⊗I) = (I⊗Ř)(Ř⊗I)(I⊗Ř) exactly.
pub fn check_braid_ybe(r: &SymMatrix) -> Result<YbeVerdict, LinalgError> {
    require_4x4(r)?;
    Ok(verdict(braid_sides(r, r, r)?))
}

/// A 4×4 matrix depending on one spectral parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralFamily {
    param: String,
    matrix: SymMatrix,
}

impl SpectralFamily {
    pub fn new(param: impl Into<String>, matrix: SymMatrix) -> Result<Self, LinalgError> {
        let param = param.into();
        ParamSet::new([param.clone()])?;
        require_4x4(&matrix)?;
        Ok(SpectralFamily { param, matrix })
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn instantiate(&self, value: &LaurentPoly) -> Result<SymMatrix, LinalgError> {
        if !self.matrix.params().contains(&self.param) {
            return Ok(self.matrix.clone());
        }
        let b = BTreeMap::from([(self.param.clone(), value.clone())]);
        self.matrix.substitute(&b)
    }
}

/// Argument pattern (a, b, c) in (Ř(a)⊗I)(I⊗Ř(b))(Ř(c)⊗I) = (I⊗Ř(c))(Ř(b)⊗I)(I⊗Ř(a)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// (u, uv, v)
    Multiplicative,
    /// (u/v, u, v)
    Ratio,
    /// (u, u+v, v)
    Additive,
}

impl Convention {
    pub const ALL: [Convention; 3] = [Convention::Multiplicative, Convention::Ratio, Convention::Additive];

    pub fn name(self) -> &'static str {
        match self {
            Convention::Multiplicative => "multiplicative",
            Convention::Ratio => "ratio",
            Convention::Additive => "additive",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectralVerdict {
    Holds(Convention),
    /// Every applicable convention failed; conventions whose arguments cannot
    /// be substituted (a negative power of a sum) are omitted.
    Fails(Vec<(Convention, YbeWitness)>),
}

impl SpectralVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SpectralVerdict::Holds(_))
    }
}

/// Tries each [`Convention`] in order on fresh symbols and reports the first that holds.
pub fn check_spectral_ybe(f: &SpectralFamily) -> Result<SpectralVerdict, LinalgError> {
    let others = f.matrix.params().without(&[f.param.as_str()]);
    let u = others.fresh_name("u");
    let v = ParamSet::new([u.clone()])?.union(&others).fresh_name("v");
    let sym = ParamSet::new([u.clone(), v.clone()])?;
    let pu = LaurentPoly::var(&sym, &u)?;
    let pv = LaurentPoly::var(&sym, &v)?;
    let mut failures = Vec::new();
    for conv in Convention::ALL {
        let (a, b, c) = match conv {
            Convention::Multiplicative => (pu.clone(), &pu * &pv, pv.clone()),
            Convention::Ratio => (&pu * &pv.inverse()?, pu.clone(), pv.clone()),
            Convention::Additive => (pu.clone(), &pu + &pv, pv.clone()),
        };
        let inst = |x: &LaurentPoly| f.instantiate(x);
        let mats = match (inst(&a), inst(&b), inst(&c)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(LinalgError::Scalar(ScalarError::NonInvertibleSubstitution { .. })), _, _)
            | (_, Err(LinalgError::Scalar(ScalarError::NonInvertibleSubstitution { .. })), _)
            | (_, _, Err(LinalgError::Scalar(ScalarError::NonInvertibleSubstitution { .. }))) => continue,
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Err(e),
        };
        match verdict(braid_sides(&mats.0, &mats.1, &mats.2)?) {
            YbeVerdict::Holds => return Ok(SpectralVerdict::Holds(conv)),
            YbeVerdict::Fails(w) => failures.push((conv, w)),
        }
    }
    Ok(SpectralVerdict::Fails(failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_and_identity_are_braid_solutions() {
        assert!(check_braid_ybe(&SymMatrix::swap()).unwrap().holds());
        assert!(check_braid_ybe(&SymMatrix::identity(4, &ParamSet::empty())).unwrap().holds());
        assert!(check_braid_ybe(&SymMatrix::identity(2, &ParamSet::empty())).is_err());
    }

    #[test]
    fn perturbed_matrix_fails_with_witness() {
        let p = ParamSet::empty();
        let mut m = SymMatrix::swap();
        m.set(0, 1, LaurentPoly::from_int(&p, 1)).unwrap();
        match check_braid_ybe(&m).unwrap() {
            YbeVerdict::Fails(w) => assert!(!w.value.is_zero()),
            YbeVerdict::Holds => panic!("perturbed swap should fail"),
        }
    }

    #[test]
    fn rational_spectral_solution() {
        // Yang's solution in braid form, Ř(x) = I + x·P.
        let p = ParamSet::new(["x"]).unwrap();
        let x = LaurentPoly::var(&p, "x").unwrap();
        let m = SymMatrix::identity(4, &p).checked_add(&SymMatrix::swap().scalar_mul(&x).unwrap()).unwrap();
        let fam = SpectralFamily::new("x", m).unwrap();
        assert_eq!(check_spectral_ybe(&fam).unwrap(), SpectralVerdict::Holds(Convention::Additive));
    }
}
