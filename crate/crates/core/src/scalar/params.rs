use std::fmt;
use std::sync::Arc;

use super::ScalarError;

/// Ordered list of distinct parameter names; exponent vectors index into it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamSet(Arc<Vec<String>>);

impl ParamSet {
    pub fn new<I, S>(names: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if !is_identifier(&n) || is_reserved(&n) {
                return Err(ScalarError::BadParameterName(n));
            }
            if out.contains(&n) {
                return Err(ScalarError::DuplicateParameter(n));
            }
            out.push(n);
        }
        Ok(ParamSet(Arc::new(out)))
    }

    pub fn empty() -> Self {
        ParamSet::default()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// `self` followed by the names of `other` not already present.
    pub fn union(&self, other: &ParamSet) -> ParamSet {
        if self == other {
            return self.clone();
        }
        let mut names = self.0.as_ref().clone();
        for n in other.names() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        ParamSet(Arc::new(names))
    }

    pub fn without(&self, drop: &[&str]) -> ParamSet {
        ParamSet(Arc::new(self.0.iter().filter(|n| !drop.contains(&n.as_str())).cloned().collect()))
    }

    /// A name starting with `base` that is not in the set.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.contains(base) {
            return base.to_string();
        }
        (1..).map(|k| format!("{base}{k}")).find(|n| !self.contains(n)).unwrap()
    }
}

impl fmt::Debug for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    let rest: Vec<char> = chars.collect();
    let body_end = rest.iter().position(|&c| c == '\'').unwrap_or(rest.len());
    rest[..body_end].iter().all(|c| c.is_ascii_alphanumeric() || *c == '_')
        && rest[body_end..].iter().all(|&c| c == '\'')
}

pub(crate) fn is_reserved(s: &str) -> bool {
    s == "i" || s == "sqrt2"
}
