use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

pub type Rational = BigRational;

/// An element `r + s·√2` of the real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct Quad {
    r: Rational,
    s: Rational,
}

impl Quad {
    fn zero() -> Self {
        Quad { r: Rational::zero(), s: Rational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    fn add(&self, o: &Quad) -> Quad {
        Quad { r: &self.r + &o.r, s: &self.s + &o.s }
    }

    fn sub(&self, o: &Quad) -> Quad {
        Quad { r: &self.r - &o.r, s: &self.s - &o.s }
    }

    fn mul(&self, o: &Quad) -> Quad {
        let two = Rational::from_integer(BigInt::from(2));
        Quad {
            r: &self.r * &o.r + two * &self.s * &o.s,
            s: &self.r * &o.s + &self.s * &o.r,
        }
    }

    fn neg(&self) -> Quad {
        Quad { r: -&self.r, s: -&self.s }
    }

    fn galois(&self) -> Quad {
        Quad { r: self.r.clone(), s: -&self.s }
    }

    /// Inverse through the norm `r² − 2s²`, which is nonzero for nonzero elements.
    fn inv(&self) -> Option<Quad> {
        let two = Rational::from_integer(BigInt::from(2));
        let norm = &self.r * &self.r - two * &self.s * &self.s;
        if norm.is_zero() {
            return None;
        }
        Some(Quad { r: &self.r / &norm, s: -&self.s / &norm })
    }

    fn to_f64(&self) -> f64 {
        self.r.to_f64().unwrap_or(f64::NAN) + self.s.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

/// Exact element `a + b·i + c·√2 + d·i√2` of ℚ(i, √2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    re: Quad,
    im: Quad,
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        FieldElement { re: Quad { r: a, s: c }, im: Quad { r: b, s: d } }
    }

    pub fn zero() -> Self {
        FieldElement { re: Quad::zero(), im: Quad::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElement { re: Quad { r: q, s: Rational::zero() }, im: Quad::zero() }
    }

    /// Gaussian rational `re + im·i`.
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self::new(re, im, Rational::zero(), Rational::zero())
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Self::new(
            Rational::zero(),
            Rational::zero(),
            Rational::new(BigInt::from(1), BigInt::from(2)),
            Rational::zero(),
        )
    }

    /// Coordinates `(a, b, c, d)` in the basis `1, i, √2, i√2`.
    pub fn coords(&self) -> [&Rational; 4] {
        [&self.re.r, &self.im.r, &self.re.s, &self.im.s]
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.r.is_one() && self.re.s.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.re.s.is_zero() && self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.re.r)
    }

    /// Complex conjugation `i ↦ −i`.
    pub fn conj(&self) -> Self {
        FieldElement { re: self.re.clone(), im: self.im.neg() }
    }

    /// The automorphism `√2 ↦ −√2`.
    pub fn galois_sqrt2(&self) -> Self {
        FieldElement { re: self.re.galois(), im: self.im.galois() }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        // z⁻¹ = conj(z) / (re² + im²); the real norm is nonzero in ℚ(√2) for z ≠ 0
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ninv = norm.inv().ok_or_else(|| ScalarError::DivisionByZero(self.to_string()))?;
        Ok(FieldElement { re: self.re.mul(&ninv), im: self.im.neg().mul(&ninv) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero(format!("({}) / ({})", self, rhs)));
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = FieldElement::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        Ok(acc)
    }

    /// √x for a nonnegative rational x, when the root lies in ℚ(√2).
    pub fn rational_sqrt(&self) -> Option<FieldElement> {
        let r = self.as_rational()?;
        if r.is_negative() {
            return None;
        }
        let (n, d) = (r.numer(), r.denom());
        let exact = |m: BigInt| {
            let s = m.sqrt();
            (&s * &s == m).then_some(s)
        };
        // √(n/d) = √(nd)/d, or √(2nd)/(d√2)
        if let Some(s) = exact(n * d) {
            return Some(FieldElement::from_rational(Rational::new(s, d.clone())));
        }
        let s = exact(BigInt::from(2) * n * d)?;
        let c = Rational::new(s, BigInt::from(2) * d);
        Some(FieldElement::new(Rational::zero(), Rational::zero(), c, Rational::zero()))
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// True if the element is a single basis coordinate (e.g. `-3/2*sqrt2`), so it
    /// needs no parentheses when multiplied by a monomial.
    pub(crate) fn is_single_coordinate(&self) -> bool {
        self.coords().iter().filter(|c| !c.is_zero()).count() <= 1
    }

    /// Sign of the single nonzero coordinate, used by the printer.
    pub(crate) fn leading_negative(&self) -> bool {
        self.coords().iter().find(|c| !c.is_zero()).map(|c| c.is_negative()).unwrap_or(false)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "i", "sqrt2", "i*sqrt2"];
        let mut first = true;
        for (c, unit) in self.coords().into_iter().zip(UNITS) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if unit.is_empty() {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(unit)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), unit)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { re: self.re.neg(), im: self.im.neg() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Panics on division by zero; use [`FieldElement::checked_div`] for a `Result`.
impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        self.checked_div(o).expect("division by zero in ℚ(i,√2)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        FieldElement::from_rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_square_roots() {
        let q = |n, d| FieldElement::from_ratio(n, d);
        assert_eq!(q(9, 4).rational_sqrt(), Some(q(3, 2)));
        assert_eq!(q(1, 2).rational_sqrt(), Some(FieldElement::inv_sqrt2()));
        assert_eq!(q(8, 1).rational_sqrt(), Some(&FieldElement::sqrt2() * &q(2, 1)));
        assert_eq!(q(3, 1).rational_sqrt(), None);
        assert_eq!(q(-4, 1).rational_sqrt(), None);
        assert_eq!(FieldElement::sqrt2().rational_sqrt(), None);
    }

    #[test]
    fn unit_cancellation() {
        assert_eq!(&FieldElement::inv_sqrt2() * &FieldElement::sqrt2(), FieldElement::one());
    }

    #[test]
    fn gaussian_norm() {
        let one = FieldElement::one();
        let i = FieldElement::i();
        assert_eq!((&one + &i) * (&one - &i), FieldElement::from_int(2));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let x = &FieldElement::one() + &FieldElement::sqrt2();
        let inv = x.inv().unwrap();
        assert_eq!(&inv * &x, FieldElement::one());
        assert_eq!(inv, &FieldElement::sqrt2() - &FieldElement::one());
    }

    #[test]
    fn division_by_zero_names_operands() {
        let err = FieldElement::one().checked_div(&FieldElement::zero()).unwrap_err();
        assert!(err.to_string().contains("(1) / (0)"), "{err}");
    }

    #[test]
    fn display() {
        let x = FieldElement::new(
            Rational::new(1.into(), 2.into()),
            Rational::new((-1).into(), 2.into()),
            Rational::zero(),
            Rational::from_integer(3.into()),
        );
        assert_eq!(x.to_string(), "1/2 - 1/2*i + 3*i*sqrt2");
        assert_eq!((-FieldElement::i()).to_string(), "-i");
        assert_eq!(FieldElement::inv_sqrt2().to_string(), "1/2*sqrt2");
    }

    #[test]
    fn conjugations() {
        let x = &FieldElement::from_int(2) + &(&FieldElement::i() * &FieldElement::sqrt2());
        assert_eq!(x.conj(), &FieldElement::from_int(2) - &(&FieldElement::i() * &FieldElement::sqrt2()));
        assert_eq!(x.galois_sqrt2(), x.conj());
        assert_eq!(FieldElement::i().pow(4).unwrap(), FieldElement::one());
        assert_eq!(FieldElement::sqrt2().pow(-2).unwrap(), FieldElement::from_ratio(1, 2));
    }
}
