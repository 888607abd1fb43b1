use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FreeAlgError, Generator, NCPoly};
use crate::linalg::SymMatrix;
use crate::scalar::{LaurentPoly, ParamSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub poly: NCPoly,
    pub labels: Vec<String>,
}

/// Normalized relations, deduplicated up to unit scalars, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationSet {
    relations: Vec<Relation>,
}

impl RelationSet {
    pub fn new() -> Self {
        RelationSet::default()
    }

    pub fn from_polys<I: IntoIterator<Item = NCPoly>>(polys: I) -> Self {
        let mut s = RelationSet::new();
        for p in polys {
            s.push(p, None);
        }
        s
    }

    /// Adds a relation; returns false if it was zero or already present (labels are merged).
    pub fn push(&mut self, poly: NCPoly, label: Option<String>) -> bool {
        if poly.is_zero() {
            return false;
        }
        let n = poly.normalize();
        if let Some(r) = self.relations.iter_mut().find(|r| r.poly.equivalent(&n)) {
            if let Some(l) = label {
                if !r.labels.contains(&l) {
                    r.labels.push(l);
                }
            }
            return false;
        }
        self.relations.push(Relation { poly: n, labels: label.into_iter().collect() });
        true
    }

    fn push_labelled(&mut self, poly: NCPoly, labels: &[String]) {
        if labels.is_empty() {
            self.push(poly, None);
        } else {
            for l in labels {
                self.push(poly.clone(), Some(l.clone()));
            }
        }
    }

    pub fn extend(&mut self, o: &RelationSet) {
        for r in &o.relations {
            self.push_labelled(r.poly.clone(), &r.labels);
        }
    }

    pub fn union(&self, o: &RelationSet) -> RelationSet {
        let mut s = self.clone();
        s.extend(o);
        s
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn polys(&self) -> impl Iterator<Item = &NCPoly> {
        self.relations.iter().map(|r| &r.poly)
    }

    pub fn contains(&self, p: &NCPoly) -> bool {
        let n = p.normalize();
        self.relations.iter().any(|r| r.poly.equivalent(&n))
    }

    pub fn position(&self, p: &NCPoly) -> Option<usize> {
        let n = p.normalize();
        self.relations.iter().position(|r| r.poly.equivalent(&n))
    }

    /// Equality as sets of normalized relations.
    pub fn same_relations(&self, o: &RelationSet) -> bool {
        self.len() == o.len() && self.polys().all(|p| o.contains(p))
    }

    /// Relations of `o` absent here, and relations here absent from `o`.
    pub fn difference(&self, o: &RelationSet) -> (Vec<NCPoly>, Vec<NCPoly>) {
        let missing = o.polys().filter(|p| !self.contains(p)).cloned().collect();
        let extra = self.polys().filter(|p| !o.contains(p)).cloned().collect();
        (missing, extra)
    }

    pub fn without(&self, drop: &[NCPoly]) -> RelationSet {
        let drop: Vec<NCPoly> = drop.iter().map(NCPoly::normalize).collect();
        RelationSet { relations: self.relations.iter().filter(|r| !drop.iter().any(|d| d.equivalent(&r.poly))).cloned().collect() }
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.polys().flat_map(|p| p.generators()).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.polys().filter_map(NCPoly::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.polys().all(NCPoly::is_homogeneous)
    }

    /// Applies g → s(g)·g; each scale must be a Laurent unit.
    pub fn apply_rescaling(&self, scale: &BTreeMap<Generator, LaurentPoly>) -> Result<RelationSet, FreeAlgError> {
        if let Some((g, s)) = scale.iter().find(|(_, s)| !s.is_unit()) {
            return Err(FreeAlgError::NonUnitScale(g.to_string(), s.to_string()));
        }
        let mut out = RelationSet::new();
        for r in &self.relations {
            out.push_labelled(r.poly.rescale(scale)?, &r.labels);
        }
        Ok(out)
    }

    pub fn substitute_params(&self, bindings: &BTreeMap<String, LaurentPoly>) -> Result<RelationSet, FreeAlgError> {
        let mut out = RelationSet::new();
        for r in &self.relations {
            out.push_labelled(r.poly.substitute_params(bindings)?, &r.labels);
        }
        Ok(out)
    }

    /// One relation per line; blank lines and `#` comments are skipped. A
    /// relation may be written `lhs = rhs`.
    pub fn parse_text(s: &str, params: &ParamSet) -> Result<RelationSet, FreeAlgError> {
        let mut out = RelationSet::new();
        for line in s.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            out.push(parse_relation(line, params)?, None);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.relations.iter().map(|r| format!("{}\n", r.poly)).collect()
    }

    pub fn to_json(&self) -> RelationSetJson {
        RelationSetJson {
            params: self.relations.first().map(|r| r.poly.params().names().to_vec()).unwrap_or_default(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationJson { poly: r.poly.to_string(), labels: r.labels.clone() })
                .collect(),
        }
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            if r.labels.is_empty() {
                writeln!(f, "{}", r.poly)?;
            } else {
                writeln!(f, "{}    [{}]", r.poly, r.labels.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Parses `p` or `lhs = rhs` (as lhs − rhs). Commutators `[x, y]` and
/// anticommutators `{x, y}` are expanded first.
pub fn parse_relation(s: &str, params: &ParamSet) -> Result<NCPoly, FreeAlgError> {
    let s = expand_brackets(s)?;
    match s.split_once('=') {
        Some((l, r)) => NCPoly::parse(l, params)?.checked_sub(&NCPoly::parse(r, params)?),
        None => NCPoly::parse(&s, params),
    }
}

fn expand_brackets(s: &str) -> Result<String, FreeAlgError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c != '[' && c != '{' {
            out.push(c);
            k += 1;
            continue;
        }
        let close = if c == '[' { ']' } else { '}' };
        let (mut depth, mut comma, mut end) = (0i32, None, None);
        for (j, &x) in chars.iter().enumerate().skip(k) {
            match x {
                '[' | '{' | '(' => depth += 1,
                ']' | '}' | ')' => {
                    depth -= 1;
                    if depth == 0 {
                        if x != close {
                            break;
                        }
                        end = Some(j);
                        break;
                    }
                }
                ',' if depth == 1 => comma = Some(j),
                _ => {}
            }
        }
        let bad = || FreeAlgError::Bracket(s.to_string());
        let (Some(comma), Some(end)) = (comma, end) else { return Err(bad()) };
        let x = expand_brackets(&chars[k + 1..comma].iter().collect::<String>())?;
        let y = expand_brackets(&chars[comma + 1..end].iter().collect::<String>())?;
        let op = if c == '[' { '-' } else { '+' };
        out.push_str(&format!("(({x})*({y}) {op} ({y})*({x}))"));
        k = end + 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub poly: String,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSetJson {
    pub params: Vec<String>,
    pub relations: Vec<RelationJson>,
}

fn t_matrix(params: &ParamSet, primed: bool) -> [[NCPoly; 2]; 2] {
    let g = |l| NCPoly::generator(params, Generator::new(l, primed).expect("letter"));
    [[g('a'), g('b')], [g('c'), g('d')]]
}

fn kron_t(l: &[[NCPoly; 2]; 2], r: &[[NCPoly; 2]; 2]) -> Vec<Vec<NCPoly>> {
    let mut out = vec![vec![]; 4];
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for m in 0..2 {
                    out[2 * i + k].push(&l[i][j] * &r[k][m]);
                }
            }
        }
    }
    out
}

/// Entries of Ř(T_L⊗T_R) − (T_R⊗T_L)Ř, labelled by 1-based position.
pub fn frt_derive(r: &SymMatrix, left_primed: bool, right_primed: bool) -> Result<RelationSet, FreeAlgError> {
    if (r.rows(), r.cols()) != (4, 4) {
        return Err(FreeAlgError::Shape(r.rows(), r.cols()));
    }
    let p = r.params();
    let tl = t_matrix(p, left_primed);
    let tr = t_matrix(p, right_primed);
    let lr = kron_t(&tl, &tr);
    let rl = kron_t(&tr, &tl);
    let mut out = RelationSet::new();
    for i in 0..4 {
        for j in 0..4 {
            let mut e = NCPoly::zero(p);
            for k in 0..4 {
                let x = r.get(i, k);
                if !x.is_zero() {
                    e = &e + &lr[k][j].scalar_mul(x)?;
                }
                let y = r.get(k, j);
                if !y.is_zero() {
                    e = &e - &rl[i][k].scalar_mul(y)?;
                }
            }
            out.push(e, Some(format!("({},{})", i + 1, j + 1)));
        }
    }
    Ok(out)
}

/// Relations of the two-copy algebra built from the unnormalized, q-deformed B₊.
#[derive(Debug, Clone)]
pub struct BAlgebra {
    pub a_rels: RelationSet,
    pub a_prime_rels: RelationSet,
    /// From B₊(T⊗T′) = (T′⊗T)B₊.
    pub mixed_tt: RelationSet,
    /// From B₊(T′⊗T) = (T⊗T′)B₊.
    pub mixed_t_t: RelationSet,
    pub mixed_rels: RelationSet,
}

impl BAlgebra {
    pub fn all(&self) -> RelationSet {
        self.a_rels.union(&self.a_prime_rels).union(&self.mixed_rels)
    }
}

pub fn derive_b_algebra(q_symbolic: bool) -> Result<BAlgebra, FreeAlgError> {
    let mut r = crate::bellmodels::build_bell_q(crate::bellmodels::BellSign::Plus);
    if !q_symbolic {
        let unit = BTreeMap::from([("q".to_string(), crate::scalar::FieldElement::one())]);
        r = r.evaluate(&unit)?;
    }
    let a_rels = frt_derive(&r, false, false)?;
    let a_prime_rels = frt_derive(&r, true, true)?;
    let mixed_tt = frt_derive(&r, false, true)?;
    let mixed_t_t = frt_derive(&r, true, false)?;
    let mixed_rels = mixed_tt.union(&mixed_t_t);
    Ok(BAlgebra { a_rels, a_prime_rels, mixed_tt, mixed_t_t, mixed_rels })
}
