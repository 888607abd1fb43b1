use std::cmp::Ordering;
use std::fmt;

use super::{RepError, Representation};
use crate::linalg::{echelon_basis, is_zero_vector, FieldMatrix, FieldVector, SymVector};
use crate::scalar::FieldElement;

/// A subspace held as the nonzero rows of its reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<FieldVector>,
    pivots: Vec<usize>,
}

fn pivot_of(v: &[FieldElement]) -> usize {
    v.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero")
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[FieldVector]) -> Self {
        let vs: Vec<FieldVector> = vectors.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
        let basis = echelon_basis(&vs, ambient);
        let pivots = basis.iter().map(|v| pivot_of(v)).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FieldVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn sym_basis(&self) -> Vec<SymVector> {
        self.basis.iter().map(|v| SymVector::from_field(v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Coordinates in the echelon basis, or `None` if `v` lies outside.
    pub fn coords(&self, v: &[FieldElement]) -> Option<FieldVector> {
        let c: FieldVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                *x = &*x - &(ci * y);
            }
        }
        is_zero_vector(&r).then_some(c)
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains(&self, o: &Subspace) -> bool {
        o.dim() <= self.dim() && o.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let all: Vec<FieldVector> = self.basis.iter().chain(&o.basis).cloned().collect();
        Subspace::span(self.ambient, &all)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        if self.is_zero() || o.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let (k, m) = (self.dim(), o.dim());
        let mut cols: Vec<FieldVector> = self.basis.clone();
        cols.extend(o.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let ns = FieldMatrix::from_columns(&cols).nullspace();
        let vs: Vec<FieldVector> = ns
            .iter()
            .map(|x| {
                let mut v = vec![FieldElement::zero(); self.ambient];
                for (xi, b) in x[..k].iter().zip(&self.basis) {
                    for (vj, bj) in v.iter_mut().zip(b) {
                        *vj = &*vj + &(xi * bj);
                    }
                }
                v
            })
            .collect();
        debug_assert!(ns.iter().all(|x| x.len() == k + m));
        Subspace::span(self.ambient, &vs)
    }

    pub fn is_invariant(&self, m: &FieldMatrix) -> bool {
        self.basis.iter().all(|v| self.contains_vector(&m.apply(v)))
    }

    /// Matrix of `m` on this subspace in echelon-basis coordinates.
    pub fn restricted(&self, m: &FieldMatrix) -> Result<FieldMatrix, RepError> {
        let cols = self
            .basis
            .iter()
            .map(|v| self.coords(&m.apply(v)).ok_or_else(|| RepError::Precondition("subspace is not invariant".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FieldMatrix::from_columns(&cols))
    }

    /// Deterministic order: dimension, then pivot columns, then entry text.
    pub fn order_key(&self) -> (usize, Vec<usize>, Vec<String>) {
        (self.dim(), self.pivots.clone(), self.basis.iter().flatten().map(|x| x.to_string()).collect())
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.basis.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.basis.iter().map(|v| SymVector::from_field(v).to_string()).collect();
        write!(f, "<{}>", vs.join(", "))
    }
}

pub(crate) fn unit(n: usize, k: usize) -> FieldVector {
    let mut v = vec![FieldElement::zero(); n];
    v[k] = FieldElement::one();
    v
}

/// Smallest subspace containing `seeds` and stable under all four images.
pub fn invariant_closure(rep: &Representation, seeds: &[FieldVector]) -> Subspace {
    closure_under(rep.images(), seeds, rep.dim())
}

pub(crate) fn closure_under(mats: &[FieldMatrix], seeds: &[FieldVector], n: usize) -> Subspace {
    let mut s = Subspace::span(n, seeds);
    loop {
        let mut vs = s.basis.clone();
        for m in mats {
            vs.extend(s.basis.iter().map(|v| m.apply(v)));
        }
        let next = Subspace::span(n, &vs);
        if next.dim() == s.dim() {
            return s;
        }
        s = next;
    }
}

/// Action of `mats` on `upper / lower` for nested invariant subspaces.
pub(crate) fn quotient_action(mats: &[FieldMatrix], lower: &Subspace, upper: &Subspace) -> Vec<FieldMatrix> {
    let mut basis = lower.basis.clone();
    let mut comp = Vec::new();
    let mut cur = lower.clone();
    for v in &upper.basis {
        if !cur.contains_vector(v) {
            basis.push(v.clone());
            comp.push(v.clone());
            cur = Subspace::span(upper.ambient, &basis);
        }
    }
    let k = lower.dim();
    let b = FieldMatrix::from_columns(&basis);
    mats.iter()
        .map(|m| {
            let cols: Vec<FieldVector> = comp.iter().map(|v| solve(&b, &m.apply(v))[k..].to_vec()).collect();
            FieldMatrix::from_columns(&cols)
        })
        .collect()
}

/// Solves `b·x = v` for a full-column-rank `b` with `v` in its range.
pub(crate) fn solve(b: &FieldMatrix, v: &[FieldElement]) -> FieldVector {
    let n = b.cols();
    let mut aug = FieldMatrix::zeros(b.rows(), n + 1);
    for i in 0..b.rows() {
        for j in 0..n {
            aug.set(i, j, b.get(i, j).clone());
        }
        aug.set(i, n, v[i].clone());
    }
    let (r, pivots) = aug.rref();
    debug_assert!(pivots.len() == n && pivots[n - 1] == n - 1);
    (0..n).map(|i| r.get(i, n).clone()).collect()
}

/// Dimension of the unital algebra generated by `mats`.
pub(crate) fn algebra_dimension(mats: &[FieldMatrix], k: usize) -> usize {
    let flat = |m: &FieldMatrix| m.data().to_vec();
    let id = FieldMatrix::identity(k);
    let mut span = Subspace::span(k * k, &[flat(&id)]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for m in mats {
                let y = x.mul(m);
                if !span.contains_vector(&flat(&y)) {
                    let mut vs: Vec<FieldVector> = span.basis.clone();
                    vs.push(flat(&y));
                    span = Subspace::span(k * k, &vs);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    span.dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> FieldVector {
        xs.iter().map(|&x| FieldElement::from_int(x)).collect()
    }

    #[test]
    fn lattice_operations() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[2, 2, 0])]);
        assert_eq!(a.dim(), 1);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let s = a.sum(&b);
        assert!(s.is_full());
        let i = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 1])]).intersect(&b);
        assert_eq!(i, Subspace::span(3, &[v(&[0, 1, 1])]));
        assert!(s.contains(&a) && !a.contains(&b));
        assert_eq!(a.coords(&v(&[3, 3, 0])), Some(v(&[3])));
        assert_eq!(a.coords(&v(&[3, 2, 0])), None);
    }

    #[test]
    fn pivot_order_prefers_earlier_columns() {
        let x = Subspace::span(4, &[unit(4, 0), unit(4, 1)]);
        let y = Subspace::span(4, &[unit(4, 0), unit(4, 2)]);
        assert!(x < y);
    }

    #[test]
    fn full_matrix_algebra_dimension() {
        let e12 = FieldMatrix::from_rows(vec![v(&[0, 1]), v(&[0, 0])]);
        let e21 = e12.transpose();
        assert_eq!(algebra_dimension(&[e12.clone(), e21], 2), 4);
        assert_eq!(algebra_dimension(&[e12], 2), 2);
    }
}
