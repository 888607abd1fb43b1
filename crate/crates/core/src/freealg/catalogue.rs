//! Printed relation lists for the Bell-matrix algebras, as literal text.

use super::{parse_relation, NCPoly, RelationSet};
use crate::bellmodels::OmegaFlag;
use crate::scalar::ParamSet;

/// A relation as written, with its parsed form (lhs − rhs).
#[derive(Debug, Clone)]
pub struct PrintedRelation {
    pub text: String,
    pub poly: NCPoly,
}

pub fn q_params() -> ParamSet {
    ParamSet::new(["q"]).expect("valid name")
}

fn parse_list<S: AsRef<str>>(texts: &[S]) -> Vec<PrintedRelation> {
    let p = q_params();
    texts
        .iter()
        .map(|t| PrintedRelation {
            text: t.as_ref().to_string(),
            poly: parse_relation(t.as_ref(), &p).expect("catalogue entries parse"),
        })
        .collect()
}

fn to_set(list: &[PrintedRelation]) -> RelationSet {
    RelationSet::from_polys(list.iter().map(|r| r.poly.clone()))
}

fn w(omega: OmegaFlag) -> &'static str {
    match omega {
        OmegaFlag::PlusOne => "",
        OmegaFlag::MinusOne => "-",
    }
}

/// [F1] = ĉâ − ωq⁻¹b̂d̂
pub fn f1(omega: OmegaFlag) -> NCPoly {
    parse_relation(&format!("c*a - {}q^-1*b*d", w(omega)), &q_params()).expect("parses")
}

/// [F2] = âĉ − q⁻¹d̂b̂
pub fn f2() -> NCPoly {
    parse_relation("a*c - q^-1*d*b", &q_params()).expect("parses")
}

/// The eight ŘTT relations of Ř_ω, [F1] and [F2] included.
pub fn algebra_eight(omega: OmegaFlag) -> Vec<PrintedRelation> {
    let s = w(omega);
    parse_list(&[
        "a*a = d*d".to_string(),
        "a*b = q*d*c".into(),
        format!("b*b = {s}q^2*c*c"),
        "a*c = q^-1*d*b".into(),
        "a*d = d*a".into(),
        format!("b*a = {s}q*c*d"),
        format!("b*c = {s}c*b"),
        format!("c*a = {s}q^-1*b*d"),
    ])
}

/// The eight relations without [F1] and [F2].
pub fn algebra_six(omega: OmegaFlag) -> RelationSet {
    to_set(&algebra_eight(omega)).without(&[f1(omega), f2()])
}

/// The six relations after absorbing q into ĉ.
pub fn rescaled_six(omega: OmegaFlag) -> Vec<PrintedRelation> {
    let s = w(omega);
    parse_list(&[
        "a*a = d*d".to_string(),
        "a*d = d*a".into(),
        format!("b*b = {s}c*c"),
        format!("b*c = {s}c*b"),
        "a*b = d*c".into(),
        format!("b*a = {s}c*d"),
    ])
}

/// From B₊(T⊗T′) = (T′⊗T)B₊.
pub fn mixed_tt() -> Vec<PrintedRelation> {
    parse_list(&[
        "[a, a'] = -q*c*c' - q^-1*b'*b",
        "{a, b'} = a'*b - q*c*d'",
        "{a, c'} = c*a' + q^-1*d'*b",
        "[a, d'] = c*b' - c'*b",
        "[b, a'] = b'*a - q*d*c'",
        "[b, b'] = -q*d*d' + q*a'*a",
        "{b, c'} = d*a' - d'*a",
        "{b, d'} = d*b' - q*c'*a",
        "[c, a'] = -a*c' - q^-1*b'*d",
        "{c, b'} = a'*d - a*d'",
        "[c, c'] = q^-1*a*a' - q^-1*d'*d",
        "{c, d'} = c'*d + q^-1*a*b'",
        "[d, a'] = b'*c - b*c'",
        "[d, b'] = q*a'*c - b*d'",
        "[d, c'] = d'*c + q^-1*b*a'",
        "[d, d'] = q^-1*b*b' + q*c'*c",
    ])
}

/// From B₊(T′⊗T) = (T⊗T′)B₊.
pub fn mixed_t_t() -> Vec<PrintedRelation> {
    parse_list(&[
        "[a, a'] = q^-1*b*b' + q*c'*c",
        "[a, b'] = -b*a' + q*d'*c",
        "[a, c'] = q^-1*b*d' + a'*c",
        "[a, d'] = -b*c' + b'*c",
        "{b, a'} = a*b' - q*c'*d",
        "[b, b'] = -q*a*a' + q*d'*d",
        "{b, c'} = a*d' - a'*d",
        "[b, d'] = -q*a*c' + b'*d",
        "{c, a'} = q^-1*d*b' + c'*a",
        "{c, b'} = -d*a' + d'*a",
        "[c, c'] = q^-1*d*d' - q^-1*a'*a",
        "[c, d'] = -d*c' - q^-1*b'*a",
        "[d, a'] = c*b' - c'*b",
        "{d, b'} = -q*c*a' + d'*b",
        "{d, c'} = c*d' + q^-1*a'*b",
        "[d, d'] = -q*c*c' - q^-1*b'*b",
    ])
}

/// Simplified forms of the B₊(T⊗T′) relations.
pub fn simplified_tt() -> Vec<PrintedRelation> {
    parse_list(&[
        "[a, a'] = -q*c*c' - q^-1*b'*b",
        "[b, b'] = -q*d*d' + q*a'*a",
        "[a, a'] = [d', d]",
        "[b, b'] = q^2*[c, c']",
        "{a, b'} = a'*b - q*c*d'",
        "[b, a'] = b'*a - q*d*c'",
        "{a, b'} = q*[d, c']",
        "[b, a'] = -q*{d', c}",
        "{a, c'} = c*a' + q^-1*d'*b",
        "[c, a'] = -a*c' - q^-1*b'*d",
        "{a, c'} = q^-1*[d, b']",
        "[c, a'] = -q^-1*{b, d'}",
        "[a, d'] = c*b' - c'*b",
        "{b, c'} = d*a' - d'*a",
        "[a, d'] = [a', d]",
        "{b, c'} = {c, b'}",
    ])
}

/// Simplified forms of the B₊(T′⊗T) relations.
pub fn simplified_t_t() -> Vec<PrintedRelation> {
    parse_list(&[
        "[a, a'] = q^-1*b*b' + q*c'*c",
        "[b, b'] = -q*a*a' + q*d'*d",
        "[a, a'] = [d', d]",
        "[b, b'] = q^2*[c, c']",
        "[a, b'] = -b*a' + q*d'*c",
        "{a', b} = a*b' - q*c'*d",
        "[a, b'] = q*{d, c'}",
        "{a', b} = q*[d', c]",
        "[a, c'] = q^-1*b*d' + a'*c",
        "{c, a'} = q^-1*d*b' + c'*a",
        "[a, c'] = q^-1*{d, b'}",
        "{c, a'} = -q^-1*[b, d']",
        "[a, d'] = -b*c' + b'*c",
        "{b, c'} = a*d' - a'*d",
        "[a, d'] = [a', d]",
        "{b, c'} = {c, b'}",
    ])
}

/// The commutation relations between primed and unprimed generators,
/// including the literal `c*c' = c*c'`.
pub fn b_commutative() -> Vec<PrintedRelation> {
    parse_list(&[
        "a*a' = a'*a",
        "d*d' = d'*d",
        "b*b' = b'*b",
        "c*c' = c*c'",
        "a*b' = a'*b",
        "b'*a = b*a'",
        "d'*c = d*c'",
        "c*d' = c'*d",
        "a*c' = a'*c",
        "c'*a = c*a'",
        "b*d' = b'*d",
        "d*b' = d'*b",
        "a'*d = a*d'",
        "d*a' = d'*a",
        "b*c' = b'*c",
        "c*b' = c'*b",
    ])
}

/// The additional mixed relations resembling the rescaled six.
pub fn b_additional() -> Vec<PrintedRelation> {
    parse_list(&[
        "a'*a = d*d'",
        "a*d' = d'*a",
        "b*b' = -q^2*c'*c",
        "b*c' = -c'*b",
        "a'*b = q*d'*c",
        "b*a' = -q*c*d'",
    ])
}

pub fn as_set(list: &[PrintedRelation]) -> RelationSet {
    to_set(list)
}
