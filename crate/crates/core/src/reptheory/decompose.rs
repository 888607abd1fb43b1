use rand::Rng;

use super::eigen::generalized_eigenspaces;
use super::subspace::Subspace;
use super::{RepError, Representation};
use crate::linalg::{FieldMatrix, FieldVector};
use crate::scalar::FieldElement;

pub const RETRY_BUDGET: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// The commutant modulo its radical is one-dimensional.
    Indecomposable { commutant_dim: usize, semisimple_dim: usize },
    /// Invariant subspaces whose direct sum is the whole space, each indecomposable.
    Summands(Vec<Subspace>),
}

impl Decomposition {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Decomposition::Indecomposable { .. })
    }
}

/// Basis of all matrices commuting with every image.
pub fn commutant(mats: &[FieldMatrix]) -> Vec<FieldMatrix> {
    let n = mats[0].rows();
    let mut sys = FieldMatrix::zeros(mats.len() * n * n, n * n);
    for (g, a) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = g * n * n + i * n + j;
                for k in 0..n {
                    // (XA)_{ij} − (AX)_{ij}
                    let x = sys.get(row, i * n + k) + a.get(k, j);
                    sys.set(row, i * n + k, x);
                    let y = sys.get(row, k * n + j) - a.get(i, k);
                    sys.set(row, k * n + j, y);
                }
            }
        }
    }
    sys.nullspace().into_iter().map(|v| FieldMatrix::new(n, n, v)).collect()
}

/// Rank of (X, Y) ↦ tr(XY) on the commutant: the dimension of its semisimple quotient.
fn trace_form_rank(c: &[FieldMatrix]) -> usize {
    let k = c.len();
    let rows: Vec<FieldVector> = (0..k).map(|i| (0..k).map(|j| c[i].mul(&c[j]).trace()).collect()).collect();
    FieldMatrix::from_rows(rows).rank()
}

fn split<R: Rng + ?Sized>(mats: &[FieldMatrix], rng: &mut R) -> Result<Vec<Subspace>, RepError> {
    let n = mats[0].rows();
    let c = commutant(mats);
    if c.len() == 1 || trace_form_rank(&c) == 1 {
        return Ok(vec![Subspace::full(n)]);
    }
    let mut candidates: Vec<FieldMatrix> = c.clone();
    for _ in 0..RETRY_BUDGET {
        let x = c.iter().fold(FieldMatrix::zeros(n, n), |acc, m| acc.add(&m.scale(&FieldElement::from_int(rng.gen_range(-9..=9)))));
        candidates.push(x);
    }
    for x in &candidates {
        let Some(spaces) = generalized_eigenspaces(x) else { continue };
        if spaces.len() < 2 {
            continue;
        }
        let mut out = Vec::new();
        for (_, w) in spaces {
            let sub: Vec<FieldMatrix> = mats.iter().map(|m| w.restricted(m)).collect::<Result<_, _>>()?;
            for piece in split(&sub, rng)? {
                let lifted: Vec<FieldVector> = piece.basis().iter().map(|v| lift(&w, v)).collect();
                out.push(Subspace::span(n, &lifted));
            }
        }
        return Ok(out);
    }
    Err(RepError::Inconclusive { attempts: candidates.len(), commutant_dim: c.len(), commutant: c })
}

fn lift(w: &Subspace, coords: &[FieldElement]) -> FieldVector {
    let mut v = vec![FieldElement::zero(); w.ambient()];
    for (x, b) in coords.iter().zip(w.basis()) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi = &*vi + &(x * bi);
        }
    }
    v
}

/// Splits into indecomposable summands via idempotents of the commutant.
///
/// Summands come from generalized eigenspaces of commutant elements; `rng` drives
/// the random combinations tried after the basis elements themselves.
pub fn decompose<R: Rng + ?Sized>(rep: &Representation, rng: &mut R) -> Result<Decomposition, RepError> {
    let mats = rep.images();
    let c = commutant(mats);
    let semisimple = trace_form_rank(&c);
    let mut parts = split(mats, rng)?;
    if parts.len() == 1 {
        return Ok(Decomposition::Indecomposable { commutant_dim: c.len(), semisimple_dim: semisimple });
    }
    parts.sort();
    let total = parts.iter().fold(Subspace::zero(rep.dim()), |acc, p| acc.sum(p));
    let dims: usize = parts.iter().map(Subspace::dim).sum();
    if !total.is_full() || dims != rep.dim() || !parts.iter().all(|p| mats.iter().all(|m| p.is_invariant(m))) {
        return Err(RepError::Precondition("summands failed the direct-sum check".into()));
    }
    Ok(Decomposition::Summands(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reptheory::{coproduct_rep, direct_sum, make_family, FamilyKind};
    use rand::SeedableRng;

    fn fam(kind: FamilyKind, v: &[i64]) -> Representation {
        let b = kind.positional(&v.iter().map(|&x| FieldElement::from_int(x)).collect::<Vec<_>>()).unwrap();
        make_family(kind, &b).unwrap().verify().unwrap()
    }

    #[test]
    fn example_one_is_indecomposable() {
        let r = coproduct_rep(&fam(FamilyKind::Fermion, &[1, 2]), &fam(FamilyKind::Fermion, &[1, 3])).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let d = decompose(&r, &mut rng).unwrap();
        assert!(d.is_indecomposable(), "{d:?}");
    }

    #[test]
    fn block_sum_splits() {
        let u = fam(FamilyKind::UnitSigma, &[]);
        let p = fam(FamilyKind::PauliScalar, &[1, 2]);
        let s = direct_sum(&u, &p).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let Decomposition::Summands(parts) = decompose(&s, &mut rng).unwrap() else { panic!("should split") };
        let e = |k| super::super::subspace::unit(4, k);
        let mut expect = vec![Subspace::span(4, &[e(0), e(1)]), Subspace::span(4, &[e(2), e(3)])];
        expect.sort();
        assert_eq!(parts, expect);
        // two copies of the same irreducible: commutant is M₂
        let t = direct_sum(&u, &u).unwrap();
        let Decomposition::Summands(parts) = decompose(&t, &mut rng).unwrap() else { panic!("should split") };
        assert_eq!(parts.len(), 2);
    }
}
