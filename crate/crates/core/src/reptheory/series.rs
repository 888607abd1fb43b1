use super::eigen::{char_poly, field_roots, shifted};
use super::subspace::{algebra_dimension, closure_under, quotient_action, unit, Subspace};
use super::{RepError, Representation};
use crate::linalg::FieldMatrix;

pub const LATTICE_CAP: usize = 64;
const MAX_CHAINS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientVerdict {
    Irreducible,
    /// Carries a description of the evidence.
    Reducible(String),
}

impl QuotientVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, QuotientVerdict::Irreducible)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSeries {
    pub chain: Vec<Subspace>,
    pub verdicts: Vec<QuotientVerdict>,
    /// Other maximal chains of the same length with irreducible quotients.
    pub alternatives: Vec<Vec<Subspace>>,
    pub lattice: Vec<Subspace>,
}

impl CompositionSeries {
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }
}

/// Irreducibility over ℂ of the action of `mats` on `upper / lower` (Burnside).
pub(crate) fn quotient_verdict(mats: &[FieldMatrix], lower: &Subspace, upper: &Subspace) -> QuotientVerdict {
    let k = upper.dim() - lower.dim();
    if k == 1 {
        return QuotientVerdict::Irreducible;
    }
    let q = quotient_action(mats, lower, upper);
    let d = algebra_dimension(&q, k);
    if d == k * k {
        QuotientVerdict::Irreducible
    } else {
        QuotientVerdict::Reducible(format!("quotient of dimension {k} generates an algebra of dimension {d} < {}", k * k))
    }
}

fn seeds(rep: &Representation) -> Vec<Subspace> {
    let n = rep.dim();
    let mats = rep.images();
    let mut out = Vec::new();
    for m in mats {
        if let Some(roots) = field_roots(&char_poly(m)) {
            for (r, _) in roots {
                let ns = shifted(m, &r).nullspace();
                out.push(closure_under(mats, &ns, n));
                for v in &ns {
                    out.push(closure_under(mats, std::slice::from_ref(v), n));
                }
            }
        }
    }
    for k in 0..n {
        out.push(closure_under(mats, &[unit(n, k)], n));
    }
    out
}

fn insert(lattice: &mut Vec<Subspace>, s: Subspace) -> Result<bool, RepError> {
    if lattice.contains(&s) {
        return Ok(false);
    }
    if lattice.len() == LATTICE_CAP {
        return Err(RepError::LatticeCap(LATTICE_CAP));
    }
    lattice.push(s);
    Ok(true)
}

/// Invariant subspaces reachable from eigenvector and basis-vector seeds by closure,
/// sums and intersections, sorted.
pub fn invariant_lattice(rep: &Representation) -> Result<Vec<Subspace>, RepError> {
    let n = rep.dim();
    let mut lattice = Vec::new();
    insert(&mut lattice, Subspace::zero(n))?;
    insert(&mut lattice, Subspace::full(n))?;
    for s in seeds(rep) {
        insert(&mut lattice, s)?;
    }
    loop {
        let mut grew = false;
        let snapshot = lattice.clone();
        for (i, x) in snapshot.iter().enumerate() {
            for y in &snapshot[i + 1..] {
                grew |= insert(&mut lattice, x.sum(y))?;
                grew |= insert(&mut lattice, x.intersect(y))?;
            }
        }
        if !grew {
            break;
        }
    }
    lattice.sort();
    Ok(lattice)
}

/// All longest strict chains from {0} to the full space, in lexicographic order.
fn longest_chains(lattice: &[Subspace]) -> Vec<Vec<usize>> {
    let n = lattice.len();
    let above: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| lattice[j].dim() > lattice[i].dim() && lattice[j].contains(&lattice[i])).collect()).collect();
    let top = n - 1;
    // lattice sorted by dimension, so process from the top down
    let mut depth = vec![0usize; n];
    for i in (0..n).rev() {
        depth[i] = above[i].iter().map(|&j| depth[j] + 1).max().unwrap_or(0);
    }
    let mut out = Vec::new();
    let mut stack = vec![vec![0usize]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == top {
            out.push(path);
            if out.len() == MAX_CHAINS {
                break;
            }
            continue;
        }
        for &j in above[last].iter().rev() {
            if depth[j] + 1 == depth[last] {
                let mut p = path.clone();
                p.push(j);
                stack.push(p);
            }
        }
    }
    out
}

/// A maximal chain of invariant subspaces with irreducible successive quotients.
pub fn composition_series(rep: &Representation) -> Result<CompositionSeries, RepError> {
    let lattice = invariant_lattice(rep)?;
    let chains = longest_chains(&lattice);
    let mats = rep.images();
    let mut good: Vec<(Vec<Subspace>, Vec<QuotientVerdict>)> = Vec::new();
    let mut failure = None;
    for c in chains {
        let chain: Vec<Subspace> = c.iter().map(|&i| lattice[i].clone()).collect();
        let verdicts: Vec<QuotientVerdict> = chain.windows(2).map(|w| quotient_verdict(mats, &w[0], &w[1])).collect();
        if verdicts.iter().all(QuotientVerdict::is_irreducible) {
            good.push((chain, verdicts));
        } else if failure.is_none() {
            let bad = verdicts.iter().zip(chain.windows(2)).find(|(v, _)| !v.is_irreducible()).unwrap();
            failure = Some(format!("{} / {}: {:?}", bad.1[1], bad.1[0], bad.0));
        }
    }
    if good.is_empty() {
        return Err(RepError::ChainExtraction(failure.unwrap_or_else(|| "no chain".into())));
    }
    let (chain, verdicts) = good.remove(0);
    Ok(CompositionSeries { chain, verdicts, alternatives: good.into_iter().map(|g| g.0).collect(), lattice })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reptheory::{coproduct_rep, make_family, FamilyKind};
    use crate::scalar::FieldElement;

    fn fermion(l1: i64, l2: i64) -> Representation {
        let b = FamilyKind::Fermion.positional(&[FieldElement::from_int(l1), FieldElement::from_int(l2)]).unwrap();
        make_family(FamilyKind::Fermion, &b).unwrap().verify().unwrap()
    }

    #[test]
    fn example_one_chain() {
        let r = coproduct_rep(&fermion(1, 2), &fermion(1, 3)).unwrap();
        let s = composition_series(&r).unwrap();
        let expect: Vec<Subspace> = (0..=4).map(|k| Subspace::span(4, &(0..k).map(|i| unit(4, i)).collect::<Vec<_>>())).collect();
        assert_eq!(s.chain, expect);
        assert!(s.verdicts.iter().all(QuotientVerdict::is_irreducible));
        let alt = Subspace::span(4, &[unit(4, 0), unit(4, 2)]);
        assert!(s.alternatives.iter().any(|c| c[2] == alt));
    }

    #[test]
    fn irreducible_rep_has_trivial_chain() {
        let r = make_family(FamilyKind::UnitSigma, &Default::default()).unwrap();
        let s = composition_series(&r).unwrap();
        assert_eq!(s.length(), 1);
    }
}
