use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FieldElement, ParamSet, ScalarError};
use crate::expr::{parse_expr, Evaluator};

/// Multivariate Laurent polynomial over ℚ(i,√2).
///
/// Terms are keyed by exponent vectors (one entry per parameter of the
/// [`ParamSet`]); the `BTreeMap` keeps them in lexicographic order, which is
/// also the printing order. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    params: ParamSet,
    terms: BTreeMap<Vec<i32>, FieldElement>,
}

impl LaurentPoly {
    pub fn zero(params: &ParamSet) -> Self {
        LaurentPoly { params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn one(params: &ParamSet) -> Self {
        Self::constant(params, FieldElement::one())
    }

    pub fn constant(params: &ParamSet, c: FieldElement) -> Self {
        Self::monomial(params, vec![0; params.len()], c)
    }

    pub fn from_int(params: &ParamSet, n: i64) -> Self {
        Self::constant(params, FieldElement::from_int(n))
    }

    pub fn monomial(params: &ParamSet, exps: Vec<i32>, c: FieldElement) -> Self {
        assert_eq!(exps.len(), params.len(), "exponent vector does not match parameter set");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { params: params.clone(), terms }
    }

    /// The parameter `name` raised to the first power.
    pub fn var(params: &ParamSet, name: &str) -> Result<Self, ScalarError> {
        Self::var_pow(params, name, 1)
    }

    pub fn var_pow(params: &ParamSet, name: &str, e: i32) -> Result<Self, ScalarError> {
        let k = params.index_of(name).ok_or_else(|| ScalarError::UnknownParameter(name.to_string()))?;
        let mut exps = vec![0; params.len()];
        exps[k] = e;
        Ok(Self::monomial(params, exps, FieldElement::one()))
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &FieldElement)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[i32]) -> FieldElement {
        self.terms.get(exps).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    /// True when every stored exponent is zero (including the zero polynomial).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(FieldElement::zero))
        } else {
            None
        }
    }

    /// Single nonzero term, i.e. a unit of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Parameters that occur with a nonzero exponent.
    pub fn used_params(&self) -> Vec<String> {
        let mut used = vec![false; self.params.len()];
        for e in self.terms.keys() {
            for (u, &x) in used.iter_mut().zip(e) {
                *u |= x != 0;
            }
        }
        self.params.names().iter().zip(used).filter(|(_, u)| *u).map(|(n, _)| n.clone()).collect()
    }

    fn unify(&self, other: &LaurentPoly) -> Result<ParamSet, ScalarError> {
        if self.params == other.params || other.is_constant() {
            Ok(self.params.clone())
        } else if self.is_constant() {
            Ok(other.params.clone())
        } else {
            Err(ScalarError::ParamMismatch(format!("{:?}", self.params), format!("{:?}", other.params)))
        }
    }

    /// Re-expresses the polynomial over `target`, which must contain every parameter in use.
    pub fn embed(&self, target: &ParamSet) -> Result<LaurentPoly, ScalarError> {
        if &self.params == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.params.len());
        for n in self.params.names() {
            map.push(target.index_of(n));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (k, &x) in e.iter().enumerate() {
                if x != 0 {
                    let j = map[k].ok_or_else(|| ScalarError::UnknownParameter(self.params.names()[k].clone()))?;
                    ne[j] = x;
                }
            }
            terms.insert(ne, c.clone());
        }
        Ok(LaurentPoly { params: target.clone(), terms })
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        let params = self.unify(other)?;
        let mut out = self.embed(&params)?;
        for (e, c) in other.embed(&params)?.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        let params = self.unify(other)?;
        let a = self.embed(&params)?;
        let b = other.embed(&params)?;
        let mut out = LaurentPoly::zero(&params);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<i32>, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(&self.params);
        }
        LaurentPoly { params: self.params.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Coefficient-wise complex conjugation; parameters are treated as real.
    pub fn conj(&self) -> LaurentPoly {
        LaurentPoly { params: self.params.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v.conj())).collect() }
    }

    /// Inverse in the Laurent ring, defined for monomials only.
    pub fn inverse(&self) -> Result<LaurentPoly, ScalarError> {
        if !self.is_unit() {
            return Err(ScalarError::NotInvertible(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Ok(LaurentPoly::monomial(&self.params, e.iter().map(|x| -x).collect(), c.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<LaurentPoly, ScalarError> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = LaurentPoly::one(&self.params);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Division by a field element or Laurent monomial.
    pub fn checked_div(&self, d: &LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero(format!("({}) / (0)", self)));
        }
        if !d.is_unit() {
            return Err(ScalarError::NonMonomialDivision(d.to_string()));
        }
        self.checked_mul(&d.inverse()?)
    }

    /// Quotient `self / d` if it exists in the Laurent ring, `None` otherwise.
    ///
    /// Long division on lex-leading terms; the quotient's exponents are confined
    /// to the box implied by per-variable degree additivity, so the loop
    /// terminates whether or not `d` divides `self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        let params = self.unify(d).ok()?;
        let num = self.embed(&params).ok()?;
        if num.is_zero() {
            return Some(num);
        }
        let den = d.embed(&params).ok()?;
        if den.is_unit() {
            return num.checked_mul(&den.inverse().ok()?).ok();
        }
        let n = params.len();
        let (nlo, nhi) = num.exponent_box();
        let (dlo, dhi) = den.exponent_box();
        let lo: Vec<i32> = (0..n).map(|k| nlo[k] - dlo[k]).collect();
        let hi: Vec<i32> = (0..n).map(|k| nhi[k] - dhi[k]).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return None;
        }
        let (lead_e, lead_c) = den.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = num;
        let mut quot = LaurentPoly::zero(&params);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = e.iter().zip(&lead_e).map(|(x, y)| x - y).collect();
            if qe.iter().enumerate().any(|(k, &x)| x < lo[k] || x > hi[k]) {
                return None;
            }
            let qc = &c / &lead_c;
            let t = LaurentPoly::monomial(&params, qe, qc);
            rem = &rem - &(&t * &den);
            quot = &quot + &t;
        }
        Some(quot)
    }

    fn exponent_box(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.params.len();
        let mut lo = vec![i32::MAX; n];
        let mut hi = vec![i32::MIN; n];
        for e in self.terms.keys() {
            for k in 0..n {
                lo[k] = lo[k].min(e[k]);
                hi[k] = hi[k].max(e[k]);
            }
        }
        (lo, hi)
    }

    /// Substitutes bound parameters; unbound ones stay symbolic.
    ///
    /// The result lives over the unbound parameters of `self` followed by any
    /// new parameters introduced by the bound values.
    pub fn substitute(&self, bindings: &BTreeMap<String, LaurentPoly>) -> Result<LaurentPoly, ScalarError> {
        let mut target = self.params.without(&bindings.keys().map(String::as_str).collect::<Vec<_>>());
        for n in self.params.names() {
            if let Some(v) = bindings.get(n) {
                target = target.union(&ParamSet::new(v.used_params())?);
            }
        }
        self.substitute_into(bindings, &target)
    }

    pub fn substitute_into(
        &self,
        bindings: &BTreeMap<String, LaurentPoly>,
        target: &ParamSet,
    ) -> Result<LaurentPoly, ScalarError> {
        let names = self.params.names();
        let mut bound: Vec<Option<LaurentPoly>> = Vec::with_capacity(names.len());
        let mut unbound_idx: Vec<Option<usize>> = Vec::with_capacity(names.len());
        for n in names {
            match bindings.get(n) {
                Some(v) => {
                    bound.push(Some(v.embed(target)?));
                    unbound_idx.push(None);
                }
                None => {
                    bound.push(None);
                    unbound_idx.push(Some(target.index_of(n).ok_or_else(|| ScalarError::UnknownParameter(n.clone()))?));
                }
            }
        }
        let mut cache: BTreeMap<(usize, i32), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut mono = vec![0; target.len()];
            let mut factor = LaurentPoly::constant(target, c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match &bound[k] {
                    None => mono[unbound_idx[k].unwrap()] += x,
                    Some(v) => {
                        let p = match cache.get(&(k, x)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = v.pow(x as i64).map_err(|_| ScalarError::NonInvertibleSubstitution {
                                    param: names[k].clone(),
                                    value: v.to_string(),
                                })?;
                                cache.insert((k, x), p.clone());
                                p
                            }
                        };
                        factor = &factor * &p;
                    }
                }
            }
            out = &out + &(&factor * &LaurentPoly::monomial(target, mono, FieldElement::one()));
        }
        Ok(out)
    }

    /// Convenience wrapper binding parameters to field values.
    pub fn evaluate(&self, values: &BTreeMap<String, FieldElement>) -> Result<LaurentPoly, ScalarError> {
        let b: BTreeMap<String, LaurentPoly> =
            values.iter().map(|(k, v)| (k.clone(), LaurentPoly::constant(&ParamSet::empty(), v.clone()))).collect();
        self.substitute(&b)
    }

    /// Parses the scalar grammar; identifiers must belong to `params`.
    pub fn parse(s: &str, params: &ParamSet) -> Result<LaurentPoly, ScalarError> {
        let e = parse_expr(s)?;
        PolyEval { params }.eval(&e)
    }

    /// Parses with a parameter set formed from the identifiers in order of appearance.
    pub fn parse_auto(s: &str) -> Result<LaurentPoly, ScalarError> {
        let e = parse_expr(s)?;
        let names: Vec<String> = e.identifiers().into_iter().filter(|n| n != "i" && n != "sqrt2").collect();
        let params = ParamSet::new(names)?;
        PolyEval { params: &params }.eval(&e)
    }

    fn fmt_monomial(&self, e: &[i32]) -> String {
        let mut parts = Vec::new();
        for (name, &x) in self.params.names().iter().zip(e) {
            match x {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{x}")),
            }
        }
        parts.join("*")
    }
}

struct PolyEval<'a> {
    params: &'a ParamSet,
}

impl Evaluator for PolyEval<'_> {
    type Value = LaurentPoly;
    type Error = ScalarError;

    fn constant(&self, f: FieldElement) -> LaurentPoly {
        LaurentPoly::constant(self.params, f)
    }
    fn ident(&self, name: &str) -> Result<LaurentPoly, ScalarError> {
        LaurentPoly::var(self.params, name)
    }
    fn add(&self, a: LaurentPoly, b: LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        a.checked_add(&b)
    }
    fn sub(&self, a: LaurentPoly, b: LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        a.checked_sub(&b)
    }
    fn mul(&self, a: LaurentPoly, b: LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        a.checked_mul(&b)
    }
    fn div(&self, a: LaurentPoly, b: LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        a.checked_div(&b)
    }
    fn neg(&self, a: LaurentPoly) -> Result<LaurentPoly, ScalarError> {
        Ok(-a)
    }
    fn pow(&self, a: LaurentPoly, e: i64) -> Result<LaurentPoly, ScalarError> {
        a.pow(e)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono = self.fmt_monomial(e);
            let simple = c.is_single_coordinate();
            // a single negative coordinate is printed as a subtraction
            let (neg, c) = if simple && c.leading_negative() { (true, -c) } else { (false, c.clone()) };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&mono)?;
            } else if simple {
                write!(f, "{c}*{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.params)
    }
}

/// Panics on a parameter-set mismatch; use the `checked_*` methods for a `Result`.
impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.checked_add(o).expect("parameter-set mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(o).expect("parameter-set mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(o).expect("parameter-set mismatch")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &LaurentPoly) -> LaurentPoly { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { params: self.params.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn px() -> ParamSet {
        ParamSet::new(["x"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let p = px();
        let one = LaurentPoly::one(&p);
        let x = LaurentPoly::var(&p, "x").unwrap();
        assert_eq!((&one + &x) * (&one - &x), LaurentPoly::parse("1 - x^2", &p).unwrap());
    }

    #[test]
    fn laurent_unit() {
        let p = ParamSet::new(["q"]).unwrap();
        let q = LaurentPoly::var(&p, "q").unwrap();
        assert!((&q * &q.inverse().unwrap()).is_one());
    }

    #[test]
    fn sum_of_squares_expansion() {
        let p = px();
        let a = LaurentPoly::parse("(1+x)^2 + (1-x)^2", &p).unwrap();
        assert_eq!(a.to_string(), "2 + 2*x^2");
    }

    #[test]
    fn substitution_examples() {
        let p = ParamSet::new(["q", "x"]).unwrap();
        let e = LaurentPoly::parse("q*(1 - x)", &p).unwrap();
        let mut b = BTreeMap::new();
        b.insert("q".to_string(), LaurentPoly::one(&ParamSet::empty()));
        assert_eq!(e.substitute(&b).unwrap().to_string(), "1 - x");

        let pq = ParamSet::new(["q"]).unwrap();
        let qi = LaurentPoly::parse("q^-1", &pq).unwrap();
        let mut b = BTreeMap::new();
        b.insert("q".to_string(), LaurentPoly::var(&pq, "q").unwrap());
        assert_eq!(qi.substitute(&b).unwrap(), qi);

        let pxy = ParamSet::new(["x", "y"]).unwrap();
        let xy = LaurentPoly::parse("x*y", &pxy).unwrap();
        let mut v = BTreeMap::new();
        v.insert("x".to_string(), FieldElement::from_int(2));
        v.insert("y".to_string(), FieldElement::from_int(3));
        assert_eq!(xy.evaluate(&v).unwrap().constant_value(), Some(FieldElement::from_int(6)));
    }

    #[test]
    fn negative_power_needs_invertible_value() {
        let p = px();
        let e = LaurentPoly::parse("x^-1", &p).unwrap();
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), LaurentPoly::parse_auto("1 + y").unwrap());
        assert!(matches!(e.substitute(&b), Err(ScalarError::NonInvertibleSubstitution { .. })));
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), LaurentPoly::zero(&ParamSet::empty()));
        assert!(e.substitute(&b).is_err());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = LaurentPoly::parse_auto("q").unwrap();
        let b = LaurentPoly::parse_auto("x").unwrap();
        assert!(matches!(a.checked_add(&b), Err(ScalarError::ParamMismatch(..))));
        // constants lift into any parameter set
        let c = LaurentPoly::parse_auto("1/2 + i").unwrap();
        assert_eq!(a.checked_mul(&c).unwrap().to_string(), "(1/2 + i)*q");
    }

    #[test]
    fn print_and_parse() {
        let p = ParamSet::new(["q", "x"]).unwrap();
        let s = "(1/2 + 1/2*i)*q^-1*x^2 + sqrt2";
        let e = LaurentPoly::parse(s, &p).unwrap();
        assert_eq!(e.to_string(), s);
        let e = LaurentPoly::parse(" - 2 * q ^ -1 +x*  q", &p).unwrap();
        assert_eq!(e.to_string(), "-2*q^-1 + q*x");
        assert!(LaurentPoly::parse("1/(1+q)", &p).is_err());
        assert!(LaurentPoly::parse("z", &p).is_err());
    }

    #[test]
    fn exact_division() {
        let p = ParamSet::new(["q", "x"]).unwrap();
        let a = LaurentPoly::parse("(1 + q)*(q^-1 - 2*x + x^2*q)", &p).unwrap();
        let d = LaurentPoly::parse("1 + q", &p).unwrap();
        assert_eq!(a.exact_div(&d).unwrap(), LaurentPoly::parse("q^-1 - 2*x + x^2*q", &p).unwrap());
        let r = LaurentPoly::parse("1 + q^2", &p).unwrap();
        assert!(r.exact_div(&d).is_none());
        assert!(d.exact_div(&LaurentPoly::zero(&p)).is_none());
    }
}
