use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{FreeAlgError, Generator, NCPoly, RelationSet, Word};
use crate::scalar::{LaurentPoly, ParamSet};

/// `coeff · left · rels[relation] · right`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTerm {
    pub left: Word,
    pub relation: usize,
    pub right: Word,
    pub coeff: LaurentPoly,
}

/// Σ terms = denominator · target, with denominator 1 when absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCertificate {
    pub terms: Vec<CertificateTerm>,
    pub denominator: Option<LaurentPoly>,
}

impl IdealCertificate {
    pub fn empty() -> Self {
        IdealCertificate { terms: Vec::new(), denominator: None }
    }

    /// Re-expands the combination by plain multiplication and compares with the target.
    pub fn verify(&self, target: &NCPoly, rels: &RelationSet) -> bool {
        let rel: Vec<&NCPoly> = rels.polys().collect();
        let mut params = target.params().clone();
        for r in &rel {
            params = params.union(r.params());
        }
        for t in &self.terms {
            params = params.union(t.coeff.params());
        }
        if let Some(d) = &self.denominator {
            params = params.union(d.params());
        }
        let Ok(target) = target.embed(&params) else { return false };
        let mut sum = NCPoly::zero(&params);
        for t in &self.terms {
            let Some(r) = rel.get(t.relation) else { return false };
            let (Ok(r), Ok(c)) = (r.embed(&params), t.coeff.embed(&params)) else { return false };
            let prod = &(&NCPoly::word(&params, t.left.clone()) * &r) * &NCPoly::word(&params, t.right.clone());
            sum = &sum + &prod.scalar_mul(&c).expect("shared parameters");
        }
        let rhs = match &self.denominator {
            None => target,
            Some(d) => match d.embed(&params) {
                Ok(d) => target.scalar_mul(&d).expect("shared parameters"),
                Err(_) => return false,
            },
        };
        sum == rhs
    }

    pub fn to_json(&self, rels: &RelationSet) -> CertificateJson {
        let rel: Vec<String> = rels.polys().map(|p| p.to_string()).collect();
        CertificateJson {
            denominator: self.denominator.as_ref().map(|d| d.to_string()),
            terms: self
                .terms
                .iter()
                .map(|t| CertificateTermJson {
                    left: t.left.to_string(),
                    relation: t.relation,
                    relation_text: rel.get(t.relation).cloned().unwrap_or_default(),
                    right: t.right.to_string(),
                    coeff: t.coeff.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTermJson {
    pub left: String,
    pub relation: usize,
    pub relation_text: String,
    pub right: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub denominator: Option<String>,
    pub terms: Vec<CertificateTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(IdealCertificate),
    NotFound { bound: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn certificate(&self) -> Option<&IdealCertificate> {
        match self {
            Membership::Member(c) => Some(c),
            Membership::NotFound { .. } => None,
        }
    }
}

type Combo = BTreeMap<usize, LaurentPoly>;

struct Row {
    vec: NCPoly,
    combo: Combo,
}

fn combo_axpy(out: &mut Combo, a: &LaurentPoly, x: &Combo, b: &LaurentPoly) {
    // out ← a·out + b·x
    if !a.is_one() {
        for v in out.values_mut() {
            *v = &*v * a;
        }
    }
    for (k, v) in x {
        let add = b * v;
        let e = out.entry(*k).or_insert_with(|| LaurentPoly::zero(v.params()));
        *e = &*e + &add;
    }
    out.retain(|_, v| !v.is_zero());
}

struct Eliminator {
    pivots: BTreeMap<Word, Row>,
}

impl Eliminator {
    fn new() -> Self {
        Eliminator { pivots: BTreeMap::new() }
    }

    fn insert(&mut self, mut vec: NCPoly, mut combo: Combo) {
        while let Some((w, t)) = vec.leading() {
            let Some(row) = self.pivots.get(w) else { break };
            let t = t.clone();
            let p = row.vec.coeff(w);
            let neg_t = -&t;
            if p.is_one() {
                vec = &vec - &row.vec.scalar_mul(&t).expect("shared parameters");
                combo_axpy(&mut combo, &LaurentPoly::one(t.params()), &row.combo, &neg_t);
            } else {
                vec = &vec.scalar_mul(&p).expect("shared parameters") - &row.vec.scalar_mul(&t).expect("shared parameters");
                combo_axpy(&mut combo, &p, &row.combo, &neg_t);
            }
        }
        let Some((w, lc)) = vec.leading() else { return };
        let w = w.clone();
        if lc.is_unit() && !lc.is_one() {
            let inv = lc.inverse().expect("unit");
            vec = vec.scalar_mul(&inv).expect("shared parameters");
            for v in combo.values_mut() {
                *v = &*v * &inv;
            }
        }
        self.pivots.insert(w, Row { vec, combo });
    }

    /// Returns (s, c) with s·target = Σ c_k·P_k, or None if target is outside the span.
    fn solve(&self, target: &NCPoly) -> Option<(LaurentPoly, Combo)> {
        let one = LaurentPoly::one(target.params());
        let mut residual = target.clone();
        let mut s = one.clone();
        let mut c = Combo::new();
        while let Some((w, t)) = residual.leading() {
            let row = self.pivots.get(w)?;
            let t = t.clone();
            let p = row.vec.coeff(w);
            if p.is_one() {
                residual = &residual - &row.vec.scalar_mul(&t).expect("shared parameters");
                combo_axpy(&mut c, &one, &row.combo, &t);
            } else {
                residual =
                    &residual.scalar_mul(&p).expect("shared parameters") - &row.vec.scalar_mul(&t).expect("shared parameters");
                s = &s * &p;
                combo_axpy(&mut c, &p, &row.combo, &t);
            }
        }
        Some((s, c))
    }
}

struct Product {
    left: Word,
    relation: usize,
    right: Word,
}

fn products_of_degree(rels: &[NCPoly], alphabet: &[Generator], n: usize, exact: bool) -> Vec<Product> {
    let mut out = Vec::new();
    for (k, r) in rels.iter().enumerate() {
        let Some(d) = r.degree() else { continue };
        if d > n {
            continue;
        }
        let slack = n - d;
        let totals: Vec<usize> = if exact { vec![slack] } else { (0..=slack).collect() };
        for tot in totals {
            for lw in 0..=tot {
                for left in Word::all_of_degree(alphabet, lw) {
                    for right in Word::all_of_degree(alphabet, tot - lw) {
                        out.push(Product { left: left.clone(), relation: k, right });
                    }
                }
            }
        }
    }
    out
}

fn solve_component(
    target: &NCPoly,
    rels: &[NCPoly],
    alphabet: &[Generator],
    degree: usize,
    exact: bool,
) -> Option<(LaurentPoly, Vec<CertificateTerm>)> {
    let prods = products_of_degree(rels, alphabet, degree, exact);
    let mut elim = Eliminator::new();
    let one = LaurentPoly::one(target.params());
    for (k, p) in prods.iter().enumerate() {
        let v = rels[p.relation].sandwich(&p.left, &p.right);
        elim.insert(v, Combo::from([(k, one.clone())]));
    }
    let (s, c) = elim.solve(target)?;
    let terms = c
        .into_iter()
        .map(|(k, coeff)| CertificateTerm {
            left: prods[k].left.clone(),
            relation: prods[k].relation,
            right: prods[k].right.clone(),
            coeff,
        })
        .collect();
    Some((s, terms))
}

/// Decides whether `target` lies in the span of w·r·v with deg ≤ `bound`,
/// over the fraction field of the coefficient ring.
pub fn ideal_member(target: &NCPoly, rels: &RelationSet, bound: usize) -> Result<Membership, FreeAlgError> {
    if target.is_zero() {
        return Ok(Membership::Member(IdealCertificate::empty()));
    }
    let deg = target.degree().unwrap_or(0);
    if deg > bound {
        return Err(FreeAlgError::BoundTooSmall { bound, degree: deg });
    }
    let mut params: ParamSet = target.params().clone();
    for r in rels.polys() {
        params = params.union(r.params());
    }
    let target = target.embed(&params)?;
    let rel: Vec<NCPoly> = rels.polys().map(|r| r.embed(&params)).collect::<Result<_, _>>()?;
    let mut alpha: BTreeSet<Generator> = target.generators();
    alpha.extend(rels.generators());
    let alphabet: Vec<Generator> = alpha.into_iter().collect();

    let comps: Vec<(NCPoly, usize, bool)> = if rels.is_homogeneous() {
        target.degrees().into_iter().map(|n| (target.homogeneous_part(n), n, true)).collect()
    } else {
        vec![(target.clone(), bound, false)]
    };
    let mut solved: Vec<(LaurentPoly, Vec<CertificateTerm>)> = Vec::new();
    for (t, n, exact) in comps {
        match solve_component(&t, &rel, &alphabet, n, exact) {
            Some((s, mut terms)) => {
                if s.is_unit() {
                    let inv = s.inverse()?;
                    for term in &mut terms {
                        term.coeff = &term.coeff * &inv;
                    }
                    solved.push((LaurentPoly::one(&params), terms));
                } else {
                    solved.push((s, terms));
                }
            }
            None => return Ok(Membership::NotFound { bound }),
        }
    }
    let mut terms = Vec::new();
    let mut denom = LaurentPoly::one(&params);
    for (k, (_, ts)) in solved.iter().enumerate() {
        let others = solved
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .fold(LaurentPoly::one(&params), |acc, (_, (s, _))| &acc * s);
        for t in ts {
            terms.push(CertificateTerm { coeff: &t.coeff * &others, ..t.clone() });
        }
    }
    for (s, _) in &solved {
        denom = &denom * s;
    }
    terms.retain(|t| !t.coeff.is_zero());
    let denominator = if denom.is_one() { None } else { Some(denom) };
    Ok(Membership::Member(IdealCertificate { terms, denominator }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_relation;

    fn qp() -> ParamSet {
        ParamSet::new(["q"]).unwrap()
    }

    fn p(s: &str) -> NCPoly {
        parse_relation(s, &qp()).unwrap()
    }

    fn six(w: i64) -> RelationSet {
        let ws = if w < 0 { "-" } else { "" };
        RelationSet::from_polys(
            [
                "a*a - d*d".to_string(),
                "a*b - q*d*c".into(),
                format!("b*b - {ws}q^2*c*c"),
                "a*d - d*a".into(),
                format!("b*a - {ws}q*c*d"),
                format!("b*c - {ws}c*b"),
            ]
            .iter()
            .map(|s| p(s)),
        )
    }

    #[test]
    fn trivial_cases() {
        let r = six(-1);
        assert_eq!(ideal_member(&p("0"), &r, 2).unwrap(), Membership::Member(IdealCertificate::empty()));
        assert_eq!(ideal_member(&p("a - d"), &r, 2).unwrap(), Membership::NotFound { bound: 2 });
        assert!(matches!(ideal_member(&p("a*a*a"), &r, 2), Err(FreeAlgError::BoundTooSmall { .. })));
    }

    #[test]
    fn annihilation_identity() {
        for w in [-1, 1] {
            let r = six(w);
            let ws = if w < 0 { "-" } else { "" };
            let f1 = p(&format!("c*a - {ws}q^-1*b*d"));
            let f2 = p("a*c - q^-1*d*b");
            let a = p("a");
            let t = &a * &f2;
            let m = ideal_member(&t, &r, 3).unwrap();
            assert!(m.certificate().unwrap().verify(&t, &r), "omega {w}");
            let t = &f1 * &a;
            assert!(ideal_member(&t, &r, 3).unwrap().certificate().unwrap().verify(&t, &r));
        }
    }

    #[test]
    fn relation_itself_and_scaled_sum() {
        let r = six(-1);
        let t = &p("2*a*a - 2*d*d") + &(&p("b") * &p("a*d - d*a"));
        let m = ideal_member(&t, &r, 3).unwrap();
        let cert = m.certificate().unwrap();
        assert!(cert.denominator.is_none());
        assert!(cert.verify(&t, &r));
        let mut broken = cert.clone();
        broken.terms[0].coeff = &broken.terms[0].coeff + &LaurentPoly::one(&qp());
        assert!(!broken.verify(&t, &r));
    }

    #[test]
    fn non_homogeneous_relations() {
        let r = RelationSet::from_polys([p("a*a - 1")]);
        let t = p("a*a*a - a");
        assert!(ideal_member(&t, &r, 3).unwrap().certificate().unwrap().verify(&t, &r));
        assert!(!ideal_member(&p("a - 1"), &r, 3).unwrap().is_member());
    }

    #[test]
    fn fraction_field_denominator() {
        let r = RelationSet::from_polys([p("a*b"), p("(1 + q)*b*a + a*b")]);
        let t = p("b*a");
        let m = ideal_member(&t, &r, 2).unwrap();
        let c = m.certificate().unwrap();
        assert_eq!(c.denominator.as_ref().unwrap().to_string(), "1 + q");
        assert!(c.verify(&t, &r));
    }
}
