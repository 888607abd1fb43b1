use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;

use super::subspace::Subspace;
use super::{RepError, Representation};
use crate::freealg::Generator;
use crate::linalg::FieldMatrix;
use crate::scalar::{FieldElement, Rational};

/// Univariate polynomial over ℚ(i,√2), coefficients from degree 0 upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(FieldElement::zero(), |acc, c| &(&acc * x) + c)
    }

    fn eval_c(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_complex())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &FieldElement::from_int(k as i64)).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.last().unwrap().inv().expect("nonzero");
        let dd = d.degree();
        if r.len() < d.coeffs.len() {
            return (UniPoly::new(Vec::new()), self.clone());
        }
        let mut q = vec![FieldElement::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] * &dl;
            if f.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&f * c);
            }
            q[k] = f;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn galois_sqrt2(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(FieldElement::galois_sqrt2).collect())
    }

    /// Multiplicity of `r` as a root.
    pub fn multiplicity(&self, r: &FieldElement) -> usize {
        let lin = UniPoly::new(vec![-r, FieldElement::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            let cs = c.to_string();
            parts.push(match (k, c.is_one()) {
                (0, _) => format!("({cs})"),
                (_, true) => mono,
                _ => format!("({cs})*{mono}"),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

/// det(x·I − A) by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &FieldMatrix) -> UniPoly {
    let n = a.rows();
    let mut c = vec![FieldElement::zero(); n + 1];
    c[n] = FieldElement::one();
    let mut m = FieldMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&FieldMatrix::identity(n).scale(&c[n - k + 1]));
        let t = a.mul(&m).trace();
        c[n - k] = -&(&t * &FieldElement::from_ratio(1, k as i64));
    }
    UniPoly::new(c)
}

fn numeric_roots(p: &UniPoly) -> Vec<Complex64> {
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let p = p.monic();
    let bound = 1.0 + p.coeffs.iter().map(|c| c.to_complex().norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-9, 1e-9);
                continue;
            }
            let step = p.eval_c(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    let dp = p.derivative();
    for r in z.iter_mut() {
        for _ in 0..4 {
            let d = dp.eval_c(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= p.eval_c(*r) / d;
        }
    }
    z
}

/// Best rational approximation with denominator at most `max_den`, if within tolerance.
fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-7 * x.abs().max(1.0);
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() < tol * 1e-3 {
            break;
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 || (x - h1 as f64 / k1 as f64).abs() > tol {
        return None;
    }
    Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Roots in ℚ(i,√2) with multiplicities, or `None` unless `p` splits completely.
///
/// Roots of the squarefree part and of its √2-conjugate are paired numerically and
/// each candidate is confirmed by exact evaluation.
pub fn field_roots(p: &UniPoly) -> Option<Vec<(FieldElement, usize)>> {
    if p.is_zero() {
        return None;
    }
    let sf = p.squarefree();
    let rs = numeric_roots(&sf);
    let ss = numeric_roots(&sf.galois_sqrt2());
    let s2 = std::f64::consts::SQRT_2;
    let mut found: Vec<FieldElement> = Vec::new();
    for r in &rs {
        for s in &ss {
            let coords = [(r.re + s.re) / 2.0, (r.im + s.im) / 2.0, (r.re - s.re) / (2.0 * s2), (r.im - s.im) / (2.0 * s2)];
            let Some(q) = coords.iter().map(|&x| rationalize(x, 1_000_000)).collect::<Option<Vec<_>>>() else { continue };
            let [a, b, c, d]: [Rational; 4] = q.try_into().expect("four");
            let cand = FieldElement::new(a, b, c, d);
            if !found.contains(&cand) && sf.eval(&cand).is_zero() {
                found.push(cand);
            }
        }
    }
    if found.len() != sf.degree() {
        return None;
    }
    let mut out: Vec<(FieldElement, usize)> = found.into_iter().map(|r| {
        let m = p.multiplicity(&r);
        (r, m)
    }).collect();
    sort_values(&mut out);
    Some(out)
}

fn sort_values<T>(v: &mut [(FieldElement, T)]) {
    v.sort_by(|(x, _), (y, _)| {
        let (a, b) = (x.to_complex(), y.to_complex());
        a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)).then_with(|| x.to_string().cmp(&y.to_string()))
    });
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenData {
    pub eigenvalue: FieldElement,
    pub multiplicity: usize,
    pub eigenvectors: Subspace,
}

pub(crate) fn shifted(a: &FieldMatrix, r: &FieldElement) -> FieldMatrix {
    a.sub(&FieldMatrix::identity(a.rows()).scale(r))
}

/// Exact eigenvalues of one generator image with their eigenspaces.
pub fn eigen_analysis(rep: &Representation, g: Generator) -> Result<Vec<EigenData>, RepError> {
    let a = rep.image(g);
    let p = char_poly(a);
    let roots = field_roots(&p).ok_or_else(|| RepError::NotSplit { generator: g.to_string(), poly: p.to_string() })?;
    Ok(roots
        .into_iter()
        .map(|(r, m)| {
            let ns = shifted(a, &r).nullspace();
            EigenData { eigenvectors: Subspace::span(rep.dim(), &ns), eigenvalue: r, multiplicity: m }
        })
        .collect())
}

/// Generalized eigenspaces of a matrix whose spectrum lies in the field.
pub(crate) fn generalized_eigenspaces(a: &FieldMatrix) -> Option<Vec<(FieldElement, Subspace)>> {
    let roots = field_roots(&char_poly(a))?;
    Some(
        roots
            .into_iter()
            .map(|(r, m)| {
                let ns = shifted(a, &r).pow(m as u32).nullspace();
                (r, Subspace::span(a.rows(), &ns))
            })
            .collect(),
    )
}
