//! Named matrices and relation sets, so the standard objects need no input files.

use bell_frt::bellmodels::{build_bell, build_bell_q, build_r_omega, build_spectral_bell, BellSign, OmegaFlag};
use bell_frt::freealg::catalogue::{self, as_set};
use bell_frt::freealg::{derive_b_algebra, RelationSet};
use bell_frt::linalg::{SpectralFamily, SymMatrix};
use bell_frt::reptheory::algebra_relations;
use bell_frt::scalar::ParamSet;

use crate::report::{read_file, CliError};

pub const MATRICES: [&str; 8] = ["bell+", "bell-", "r_omega+1", "r_omega-1", "swap", "bellx+", "bellx-", "identity"];

pub const RELATIONS: [&str; 7] = ["A-1-six", "A+1-six", "A-1-eight", "A+1-eight", "A-1-rep", "B-1", "B-1-mixed"];

pub enum MatrixInput {
    Constant(SymMatrix),
    Spectral(SpectralFamily),
}

pub fn builtin_matrix(name: &str) -> Result<MatrixInput, CliError> {
    use MatrixInput::*;
    Ok(match name {
        "bell+" => Constant(build_bell(BellSign::Plus)),
        "bell-" => Constant(build_bell(BellSign::Minus)),
        "r_omega+1" => Constant(build_r_omega(OmegaFlag::PlusOne)),
        "r_omega-1" => Constant(build_r_omega(OmegaFlag::MinusOne)),
        "swap" => Constant(SymMatrix::swap()),
        "identity" => Constant(SymMatrix::identity(4, &ParamSet::empty())),
        "bellx+" => Spectral(build_spectral_bell(BellSign::Plus)),
        "bellx-" => Spectral(build_spectral_bell(BellSign::Minus)),
        _ => return Err(CliError::Usage(format!("unknown builtin matrix `{name}` (known: {})", MATRICES.join(", ")))),
    })
}

/// The q-deformed, unnormalized form used by the two-copy derivation.
pub fn mixed_source(name: &str) -> Option<SymMatrix> {
    match name {
        "bell+" => Some(build_bell_q(BellSign::Plus)),
        "bell-" => Some(build_bell_q(BellSign::Minus)),
        _ => None,
    }
}

pub fn load_matrix(builtin: Option<&str>, file: Option<&str>) -> Result<(String, MatrixInput), CliError> {
    match (builtin, file) {
        (Some(b), None) => Ok((b.to_string(), builtin_matrix(b)?)),
        (None, Some(f)) => Ok((f.to_string(), MatrixInput::Constant(SymMatrix::from_json(&read_file(f)?)?))),
        _ => Err(CliError::Usage("give exactly one of --builtin or --matrix".into())),
    }
}

pub fn builtin_relations(name: &str) -> Result<Option<RelationSet>, CliError> {
    let w = |s: &str| if s.starts_with("A-1") { OmegaFlag::MinusOne } else { OmegaFlag::PlusOne };
    Ok(Some(match name {
        "A-1-six" | "A+1-six" => catalogue::algebra_six(w(name)),
        "A-1-eight" | "A+1-eight" => as_set(&catalogue::algebra_eight(w(name))),
        "A-1-rep" => algebra_relations(),
        "B-1" => derive_b_algebra(true)?.all(),
        "B-1-mixed" => derive_b_algebra(true)?.mixed_rels,
        _ => return Ok(None),
    }))
}

/// A builtin name, or a text file with one relation per line. Parameters are
/// every identifier that is not a generator.
pub fn load_relations(spec: &str) -> Result<RelationSet, CliError> {
    if let Some(s) = builtin_relations(spec)? {
        return Ok(s);
    }
    let text = std::fs::read_to_string(spec).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            CliError::Usage(format!("`{spec}` is neither a builtin relation set ({}) nor a readable file", RELATIONS.join(", ")))
        } else {
            CliError::Io { path: spec.to_string(), source }
        }
    })?;
    let params = ParamSet::new(identifiers(&text))?;
    Ok(RelationSet::parse_text(&text, &params)?)
}

fn identifiers(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut chars = line.chars().peekable();
        while let Some(c) = chars.next() {
            if !c.is_ascii_alphabetic() {
                continue;
            }
            let mut name = c.to_string();
            while let Some(&n) = chars.peek() {
                if n.is_ascii_alphanumeric() || n == '_' {
                    name.push(n);
                    chars.next();
                } else {
                    break;
                }
            }
            let reserved = matches!(name.as_str(), "a" | "b" | "c" | "d" | "i" | "sqrt2");
            if !reserved && !out.contains(&name) {
                out.push(name);
            }
        }
    }
    out.sort();
    out
}
