//! Dense linear algebra over ℚ(i,√2).

use std::fmt;

use crate::scalar::FieldElement;

pub type FieldVector = Vec<FieldElement>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        FieldMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![FieldElement::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k * n + k] = FieldElement::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        FieldMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[FieldVector]) -> Self {
        let n = cols.first().map(Vec::len).unwrap_or(0);
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> FieldVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> FieldVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn mul(&self, o: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = FieldMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        FieldMatrix::new(self.rows, self.cols, self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &FieldMatrix) -> FieldMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in difference");
        FieldMatrix::new(self.rows, self.cols, self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> FieldMatrix {
        FieldMatrix::new(self.rows, self.cols, self.data.iter().map(|a| a * c).collect())
    }

    pub fn kron(&self, o: &FieldMatrix) -> FieldMatrix {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = FieldMatrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn adjoint(&self) -> FieldMatrix {
        let t = self.transpose();
        FieldMatrix::new(t.rows, t.cols, t.data.iter().map(FieldElement::conj).collect())
    }

    pub fn trace(&self) -> FieldElement {
        (0..self.rows.min(self.cols)).fold(FieldElement::zero(), |acc, k| &acc + self.get(k, k))
    }

    pub fn pow(&self, n: u32) -> FieldMatrix {
        (0..n).fold(FieldMatrix::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &[FieldElement]) -> FieldVector {
        assert_eq!(v.len(), self.cols, "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(FieldElement::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        &acc + &(a * &v[j])
                    }
                })
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<FieldVector> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::zero(); self.cols];
                v[f] = FieldElement::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Inverse by Gauss–Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FieldMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, FieldElement::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = FieldMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Nonzero rows of the reduced row echelon form of the given vectors.
pub fn echelon_basis(vectors: &[FieldVector], dim: usize) -> Vec<FieldVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = FieldMatrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

pub fn hermitian_inner(u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    u.iter().zip(v).fold(FieldElement::zero(), |acc, (a, b)| &acc + &(&a.conj() * b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn nullspace_and_rank() {
        let m = FieldMatrix::from_rows(vec![vec![fe(1), fe(2), fe(3)], vec![fe(2), fe(4), fe(6)]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(is_zero_vector(&m.apply(&v)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = FieldMatrix::from_rows(vec![vec![fe(1), FieldElement::i()], vec![FieldElement::sqrt2(), fe(3)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FieldMatrix::identity(2));
        let sing = FieldMatrix::from_rows(vec![vec![fe(1), fe(2)], vec![fe(2), fe(4)]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn echelon_is_canonical() {
        let a = echelon_basis(&[vec![fe(2), fe(2)], vec![fe(1), fe(3)]], 2);
        let b = echelon_basis(&[vec![fe(0), fe(1)], vec![fe(5), fe(0)]], 2);
        assert_eq!(a, b);
    }
}
