use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FreeAlgError, Generator, Word};
use crate::expr::{parse_expr, Evaluator};
use crate::scalar::{FieldElement, LaurentPoly, ParamSet, ScalarError};

/// Noncommutative polynomial with Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    params: ParamSet,
    terms: BTreeMap<Word, LaurentPoly>,
}

impl NCPoly {
    pub fn zero(params: &ParamSet) -> Self {
        NCPoly { params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn one(params: &ParamSet) -> Self {
        NCPoly::term(Word::unit(), LaurentPoly::one(params))
    }

    pub fn constant(c: LaurentPoly) -> Self {
        NCPoly::term(Word::unit(), c)
    }

    pub fn generator(params: &ParamSet, g: Generator) -> Self {
        NCPoly::term(Word::from(g), LaurentPoly::one(params))
    }

    pub fn word(params: &ParamSet, w: Word) -> Self {
        NCPoly::term(w, LaurentPoly::one(params))
    }

    pub fn term(w: Word, c: LaurentPoly) -> Self {
        let params = c.params().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { params, terms }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(|| LaurentPoly::zero(&self.params))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Word::degree);
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    pub fn homogeneous_part(&self, n: usize) -> NCPoly {
        NCPoly {
            params: self.params.clone(),
            terms: self.terms.iter().filter(|(w, _)| w.degree() == n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Word::degree).collect()
    }

    /// The deglex-greatest term.
    pub fn leading(&self) -> Option<(&Word, &LaurentPoly)> {
        self.terms.iter().next_back()
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|w| w.letters().iter().copied()).collect()
    }

    /// Equality after re-expressing both sides over the union of their parameters.
    pub fn equivalent(&self, o: &NCPoly) -> bool {
        if self.params == o.params {
            return self == o;
        }
        let p = self.params.union(&o.params);
        matches!((self.embed(&p), o.embed(&p)), (Ok(a), Ok(b)) if a == b)
    }

    fn all_constant(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_constant)
    }

    pub fn embed(&self, target: &ParamSet) -> Result<NCPoly, FreeAlgError> {
        if &self.params == target {
            return Ok(self.clone());
        }
        let terms = self.terms.iter().map(|(w, c)| Ok((w.clone(), c.embed(target)?))).collect::<Result<_, ScalarError>>()?;
        Ok(NCPoly { params: target.clone(), terms })
    }

    fn unify(&self, o: &NCPoly) -> Result<ParamSet, FreeAlgError> {
        if self.params == o.params || o.all_constant() {
            Ok(self.params.clone())
        } else if self.all_constant() {
            Ok(o.params.clone())
        } else {
            Err(FreeAlgError::ParamMismatch(format!("{:?}", self.params), format!("{:?}", o.params)))
        }
    }

    fn insert_add(terms: &mut BTreeMap<Word, LaurentPoly>, w: Word, c: LaurentPoly) {
        use std::collections::btree_map::Entry;
        match terms.entry(w) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, o: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        let p = self.unify(o)?;
        let mut out = self.embed(&p)?;
        for (w, c) in &o.embed(&p)?.terms {
            NCPoly::insert_add(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        let p = self.unify(o)?;
        let (a, b) = (self.embed(&p)?, o.embed(&p)?);
        let mut out = NCPoly::zero(&p);
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                NCPoly::insert_add(&mut out.terms, u.concat(v), x * y);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &LaurentPoly) -> Result<NCPoly, FreeAlgError> {
        self.checked_mul(&NCPoly::constant(c.clone()))
    }

    pub fn scale(&self, c: &FieldElement) -> NCPoly {
        let mut out = NCPoly::zero(&self.params);
        for (w, x) in &self.terms {
            NCPoly::insert_add(&mut out.terms, w.clone(), x.scale(c));
        }
        out
    }

    /// w·self·v
    pub fn sandwich(&self, w: &Word, v: &Word) -> NCPoly {
        NCPoly { params: self.params.clone(), terms: self.terms.iter().map(|(u, c)| (w.concat(u).concat(v), c.clone())).collect() }
    }

    /// Divides by the leading coefficient when it is a Laurent unit.
    pub fn normalize(&self) -> NCPoly {
        match self.leading() {
            Some((_, c)) if c.is_unit() && !c.is_one() => {
                let inv = c.inverse().expect("unit");
                NCPoly { params: self.params.clone(), terms: self.terms.iter().map(|(w, x)| (w.clone(), x * &inv)).collect() }
            }
            _ => self.clone(),
        }
    }

    /// Substitutes g → s(g)·g for each listed generator.
    pub fn rescale(&self, scale: &BTreeMap<Generator, LaurentPoly>) -> Result<NCPoly, FreeAlgError> {
        let mut p = self.params.clone();
        for s in scale.values() {
            p = p.union(s.params());
        }
        let mut out = NCPoly::zero(&p);
        for (w, c) in &self.terms {
            let mut c = c.embed(&p)?;
            for g in w.letters() {
                if let Some(s) = scale.get(g) {
                    c = &c * &s.embed(&p)?;
                }
            }
            NCPoly::insert_add(&mut out.terms, w.clone(), c);
        }
        Ok(out)
    }

    pub fn substitute_params(&self, bindings: &BTreeMap<String, LaurentPoly>) -> Result<NCPoly, FreeAlgError> {
        let mut target = self.params.without(&bindings.keys().map(String::as_str).collect::<Vec<_>>());
        for v in bindings.values() {
            target = target.union(&ParamSet::new(v.used_params())?);
        }
        let mut out = NCPoly::zero(&target);
        for (w, c) in &self.terms {
            NCPoly::insert_add(&mut out.terms, w.clone(), c.substitute_into(bindings, &target)?);
        }
        Ok(out)
    }

    /// Parses the scalar grammar extended by the generator names `a`…`d'`.
    pub fn parse(s: &str, params: &ParamSet) -> Result<NCPoly, FreeAlgError> {
        let e = parse_expr(s)?;
        NcEval { params }.eval(&e)
    }

    /// Like [`NCPoly::parse`], taking every non-generator identifier as a parameter.
    pub fn parse_auto(s: &str) -> Result<NCPoly, FreeAlgError> {
        let e = parse_expr(s)?;
        let names: Vec<String> =
            e.identifiers().into_iter().filter(|n| n != "i" && n != "sqrt2" && Generator::parse(n).is_none()).collect();
        let params = ParamSet::new(names)?;
        NcEval { params: &params }.eval(&e)
    }
}

struct NcEval<'a> {
    params: &'a ParamSet,
}

impl Evaluator for NcEval<'_> {
    type Value = NCPoly;
    type Error = FreeAlgError;

    fn constant(&self, f: FieldElement) -> NCPoly {
        NCPoly::constant(LaurentPoly::constant(self.params, f))
    }

    fn ident(&self, name: &str) -> Result<NCPoly, FreeAlgError> {
        if let Some(g) = Generator::parse(name) {
            return Ok(NCPoly::generator(self.params, g));
        }
        Ok(NCPoly::constant(LaurentPoly::var(self.params, name)?))
    }

    fn add(&self, a: NCPoly, b: NCPoly) -> Result<NCPoly, FreeAlgError> {
        a.checked_add(&b)
    }

    fn sub(&self, a: NCPoly, b: NCPoly) -> Result<NCPoly, FreeAlgError> {
        a.checked_sub(&b)
    }

    fn mul(&self, a: NCPoly, b: NCPoly) -> Result<NCPoly, FreeAlgError> {
        a.checked_mul(&b)
    }

    fn div(&self, a: NCPoly, b: NCPoly) -> Result<NCPoly, FreeAlgError> {
        match b.terms.iter().next() {
            Some((w, c)) if b.terms.len() == 1 && w.is_unit() => a.scalar_mul(&LaurentPoly::one(self.params).checked_div(c)?),
            _ => Err(FreeAlgError::NonScalarDivision(b.to_string())),
        }
    }

    fn neg(&self, a: NCPoly) -> Result<NCPoly, FreeAlgError> {
        Ok(-a)
    }

    fn pow(&self, a: NCPoly, e: i64) -> Result<NCPoly, FreeAlgError> {
        if a.terms.len() == 1 && a.terms.keys().next().unwrap().is_unit() {
            let c = a.terms.values().next().unwrap();
            return Ok(NCPoly::constant(c.pow(e)?));
        }
        if e < 0 {
            return Err(FreeAlgError::NegativePower(a.to_string()));
        }
        let mut acc = NCPoly::one(&a.params);
        for _ in 0..e {
            acc = acc.checked_mul(&a)?;
        }
        Ok(acc)
    }
}

fn write_coeff(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &LaurentPoly,
    w: &Word,
) -> fmt::Result {
    let s = c.to_string();
    let compound = s[1..].contains(" + ") || s[1..].contains(" - ");
    let (neg, body) = if !compound && s.starts_with('-') { (true, &s[1..]) } else { (false, s.as_str()) };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if w.is_unit() {
        return if compound { write!(f, "({body})") } else { f.write_str(body) };
    }
    if compound {
        write!(f, "({body})*{w}")
    } else if body == "1" {
        write!(f, "{w}")
    } else {
        write!(f, "{body}*{w}")
    }
}

/// Terms are written leading (deglex-greatest) first.
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            write_coeff(f, k == 0, c, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

impl<'a> Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn add(self, o: &NCPoly) -> NCPoly {
        self.checked_add(o).expect("parameter-set mismatch")
    }
}

impl<'a> Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn sub(self, o: &NCPoly) -> NCPoly {
        self.checked_sub(o).expect("parameter-set mismatch")
    }
}

impl<'a> Mul<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn mul(self, o: &NCPoly) -> NCPoly {
        self.checked_mul(o).expect("parameter-set mismatch")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly { params: self.params.clone(), terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}
