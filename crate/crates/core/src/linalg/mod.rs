//! Dense matrices and vectors over [`LaurentPoly`], Kronecker products and
//! Yang–Baxter checks.

mod exact;
mod json;
mod ybe;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldElement, LaurentPoly, ParamSet, ScalarError};

pub use exact::{echelon_basis, hermitian_inner, is_zero_vector, FieldMatrix, FieldVector};
pub use json::MatrixJson;
pub use ybe::{check_braid_ybe, check_spectral_ybe, Convention, SpectralFamily, SpectralVerdict, YbeVerdict, YbeWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("adjoint needs real parameters, but `{0}` is not declared real")]
    NonRealAdjoint(String),
    #[error("matrix is not invertible")]
    Singular,
    #[error("malformed matrix document: {0}")]
    Format(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    params: ParamSet,
    entries: Vec<LaurentPoly>,
}

fn common_params<'a, I: IntoIterator<Item = &'a LaurentPoly>>(it: I) -> ParamSet {
    let mut p = ParamSet::empty();
    for e in it {
        if e.params() != &p && !e.params().is_empty() {
            p = p.union(e.params());
        }
    }
    p
}

impl SymMatrix {
    /// Builds a matrix; entries are re-expressed over the union of their parameter sets.
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(LinalgError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        let params = common_params(&entries);
        let entries = entries.iter().map(|e| e.embed(&params)).collect::<Result<_, _>>()?;
        Ok(SymMatrix { rows, cols, params, entries })
    }

    pub fn from_field(rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self, LinalgError> {
        let p = ParamSet::empty();
        SymMatrix::new(rows, cols, entries.into_iter().map(|c| LaurentPoly::constant(&p, c)).collect())
    }

    pub fn from_field_matrix(m: &FieldMatrix) -> Self {
        SymMatrix::from_field(m.rows(), m.cols(), m.data().to_vec()).expect("nonempty field matrix")
    }

    /// Parses entries written in the scalar grammar.
    pub fn parse(rows: usize, cols: usize, params: &ParamSet, entries: &[&str]) -> Result<Self, LinalgError> {
        let e = entries.iter().map(|s| LaurentPoly::parse(s, params)).collect::<Result<Vec<_>, _>>()?;
        let m = SymMatrix::new(rows, cols, e)?;
        m.embed(params)
    }

    pub fn identity(n: usize, params: &ParamSet) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { LaurentPoly::one(params) } else { LaurentPoly::zero(params) })
            .collect();
        SymMatrix { rows: n, cols: n, params: params.clone(), entries }
    }

    pub fn zeros(rows: usize, cols: usize, params: &ParamSet) -> Self {
        SymMatrix { rows, cols, params: params.clone(), entries: vec![LaurentPoly::zero(params); rows * cols] }
    }

    /// The 4×4 permutation exchanging the two tensor factors.
    pub fn swap() -> Self {
        let p = ParamSet::empty();
        let mut m = SymMatrix::zeros(4, 4, &p);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            m.entries[i * 4 + j] = LaurentPoly::one(&p);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) -> Result<(), LinalgError> {
        let params = self.params.union(v.params());
        if params != self.params {
            *self = self.embed(&params)?;
        }
        self.entries[i * self.cols + j] = v.embed(&params)?;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Re-expresses every entry over `target`.
    pub fn embed(&self, target: &ParamSet) -> Result<SymMatrix, LinalgError> {
        if &self.params == target {
            return Ok(self.clone());
        }
        let entries = self.entries.iter().map(|e| e.embed(target)).collect::<Result<_, _>>()?;
        Ok(SymMatrix { rows: self.rows, cols: self.cols, params: target.clone(), entries })
    }

    fn aligned(&self, o: &SymMatrix) -> Result<(SymMatrix, SymMatrix), LinalgError> {
        let p = self.params.union(&o.params);
        Ok((self.embed(&p)?, o.embed(&p)?))
    }

    pub fn checked_add(&self, o: &SymMatrix) -> Result<SymMatrix, LinalgError> {
        self.zip_with(o, "sum", |a, b| a + b)
    }

    pub fn checked_sub(&self, o: &SymMatrix) -> Result<SymMatrix, LinalgError> {
        self.zip_with(o, "difference", |a, b| a - b)
    }

    fn zip_with(
        &self,
        o: &SymMatrix,
        what: &str,
        f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly,
    ) -> Result<SymMatrix, LinalgError> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(LinalgError::Shape(format!(
                "{what} of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let (a, b) = self.aligned(o)?;
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| f(x, y)).collect();
        Ok(SymMatrix { rows: a.rows, cols: a.cols, params: a.params, entries })
    }

    pub fn checked_mul(&self, o: &SymMatrix) -> Result<SymMatrix, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let (a, b) = self.aligned(o)?;
        let mut out = SymMatrix::zeros(a.rows, b.cols, &a.params);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let y = b.get(k, j);
                    if !y.is_zero() {
                        let idx = i * b.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(x * y);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &LaurentPoly) -> Result<SymMatrix, LinalgError> {
        let p = self.params.union(c.params());
        let c = c.embed(&p)?;
        let m = self.embed(&p)?;
        let entries = m.entries.iter().map(|e| &c * e).collect();
        Ok(SymMatrix { entries, ..m })
    }

    pub fn scale(&self, c: &FieldElement) -> SymMatrix {
        SymMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> SymMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        SymMatrix { rows: self.cols, cols: self.rows, params: self.params.clone(), entries }
    }

    /// Conjugate transpose; every parameter in use must be listed in `real`.
    pub fn adjoint(&self, real: &[&str]) -> Result<SymMatrix, LinalgError> {
        for e in &self.entries {
            if let Some(p) = e.used_params().into_iter().find(|p| !real.contains(&p.as_str())) {
                return Err(LinalgError::NonRealAdjoint(p));
            }
        }
        let t = self.transpose();
        Ok(SymMatrix { entries: t.entries.iter().map(LaurentPoly::conj).collect(), ..t })
    }

    pub fn kron(&self, o: &SymMatrix) -> SymMatrix {
        let (a, b) = self.aligned(o).expect("union contains both parameter sets");
        let (r, c) = (a.rows * b.rows, a.cols * b.cols);
        let mut out = SymMatrix::zeros(r, c, &a.params);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out.entries[(i * b.rows + k) * c + j * b.cols + l] = x * b.get(k, l);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Result<SymMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape(format!("power of {}x{}", self.rows, self.cols)));
        }
        let mut acc = SymMatrix::identity(self.rows, &self.params);
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Gauss–Jordan inverse. Pivots must be Laurent units, so this succeeds for
    /// every numeric invertible matrix and for symbolic ones whose elimination
    /// only meets monomial pivots.
    pub fn inverse(&self) -> Result<SymMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let p = &self.params;
        let mut a: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut inv: Vec<Vec<LaurentPoly>> = SymMatrix::identity(n, p).entries.chunks(n).map(|r| r.to_vec()).collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| a[r][c].is_unit()).ok_or(LinalgError::Singular)?;
            a.swap(c, piv);
            inv.swap(c, piv);
            let s = a[c][c].inverse()?;
            for j in 0..n {
                a[c][j] = &a[c][j] * &s;
                inv[c][j] = &inv[c][j] * &s;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    a[r][j] = &a[r][j] - &(&f * &a[c][j]);
                    inv[r][j] = &inv[r][j] - &(&f * &inv[c][j]);
                }
            }
        }
        Ok(SymMatrix { rows: n, cols: n, params: p.clone(), entries: inv.into_iter().flatten().collect() })
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, LaurentPoly>) -> Result<SymMatrix, LinalgError> {
        let e = self.entries.iter().map(|x| x.substitute(bindings)).collect::<Result<Vec<_>, _>>()?;
        SymMatrix::new(self.rows, self.cols, e)
    }

    pub fn evaluate(&self, values: &BTreeMap<String, FieldElement>) -> Result<SymMatrix, LinalgError> {
        let e = self.entries.iter().map(|x| x.evaluate(values)).collect::<Result<Vec<_>, _>>()?;
        SymMatrix::new(self.rows, self.cols, e)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &LaurentPoly)> {
        self.entries.iter().position(|e| !e.is_zero()).map(|k| (k / self.cols, k % self.cols, &self.entries[k]))
    }

    /// The numeric matrix, if no entry depends on a parameter.
    pub fn to_field(&self) -> Option<FieldMatrix> {
        let d = self.entries.iter().map(LaurentPoly::constant_value).collect::<Option<Vec<_>>>()?;
        Some(FieldMatrix::new(self.rows, self.cols, d))
    }

    pub fn apply(&self, v: &SymVector) -> Result<SymVector, LinalgError> {
        if v.dim() != self.cols {
            return Err(LinalgError::Shape(format!("{}x{} applied to a {}-vector", self.rows, self.cols, v.dim())));
        }
        let col = SymMatrix::new(self.cols, 1, v.entries.clone())?;
        Ok(SymVector::new(self.checked_mul(&col)?.entries))
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymMatrix {}x{} over {:?}\n{}", self.rows, self.cols, self.params, self)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymVector {
    entries: Vec<LaurentPoly>,
}

impl SymVector {
    /// Entries are re-expressed over the union of their parameter sets.
    pub fn new(entries: Vec<LaurentPoly>) -> Self {
        let p = common_params(&entries);
        SymVector { entries: entries.iter().map(|e| e.embed(&p).expect("union parameter set")).collect() }
    }

    pub fn from_field(v: &[FieldElement]) -> Self {
        let p = ParamSet::empty();
        SymVector { entries: v.iter().map(|c| LaurentPoly::constant(&p, c.clone())).collect() }
    }

    /// Standard basis vector e_k.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = vec![FieldElement::zero(); dim];
        v[k] = FieldElement::one();
        SymVector::from_field(&v)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn to_field(&self) -> Option<FieldVector> {
        self.entries.iter().map(LaurentPoly::constant_value).collect()
    }

    pub fn scale(&self, c: &FieldElement) -> SymVector {
        SymVector { entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn checked_add(&self, o: &SymVector) -> Result<SymVector, LinalgError> {
        if self.dim() != o.dim() {
            return Err(LinalgError::Shape(format!("sum of {}- and {}-vectors", self.dim(), o.dim())));
        }
        Ok(SymVector::new(self.entries.iter().zip(&o.entries).map(|(a, b)| a.checked_add(b)).collect::<Result<_, _>>()?))
    }

    pub fn kron(&self, o: &SymVector) -> SymVector {
        let mut out = Vec::with_capacity(self.dim() * o.dim());
        for a in &self.entries {
            for b in &o.entries {
                let p = a.params().union(b.params());
                out.push(&a.embed(&p).unwrap() * &b.embed(&p).unwrap());
            }
        }
        SymVector::new(out)
    }
}

impl fmt::Display for SymVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", e.join(", "))
    }
}

impl fmt::Debug for SymVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymVector{self}")
    }
}
