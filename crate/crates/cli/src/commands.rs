use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use bell_frt::bellmodels::{
    check_free_fermion, closed_form, generation_table, BellSign, BellState, EvolutionJson, EvolutionPoint, OmegaFlag,
};
use bell_frt::freealg::catalogue;
use bell_frt::freealg::{frt_derive, ideal_member, Generator, Membership, NCPoly, RelationSet};
use bell_frt::linalg::{
    check_braid_ybe, check_spectral_ybe, FieldMatrix, MatrixJson, SpectralFamily, SpectralVerdict, SymMatrix, SymVector,
    YbeVerdict, YbeWitness,
};
use bell_frt::reptheory::{
    algebra_relations, check_rep, composition_series, coproduct_rep, decompose, eigen_analysis, local_unitary_from_bell,
    make_family, normalize_state, schmidt, Bindings, Decomposition, FamilyKind, RepCheck, RepError, Representation,
    RepresentationJson, Subspace,
};
use bell_frt::scalar::{FieldElement, LaurentPoly};

use crate::builtins::{load_matrix, load_relations, mixed_source, MatrixInput};
use crate::report::{read_file, CliError, Outcome, Status};
use crate::Analysis;

fn matrix_json(m: &FieldMatrix) -> Value {
    json!(MatrixJson::from(&SymMatrix::from_field_matrix(m)))
}

fn witness_json(w: &YbeWitness) -> Value {
    json!({ "row": w.row, "col": w.col, "value": w.value.to_string() })
}

pub fn ybe(builtin: Option<&str>, file: Option<&str>, spectral: bool, param: &str) -> Result<Outcome, CliError> {
    let (name, input) = load_matrix(builtin, file)?;
    let family = match input {
        MatrixInput::Spectral(f) => Some(f),
        MatrixInput::Constant(m) if spectral => Some(SpectralFamily::new(param, m)?),
        MatrixInput::Constant(m) => {
            let v = check_braid_ybe(&m)?;
            let mut details = json!({ "input": name, "check": "braid", "holds": v.holds(), "matrix": MatrixJson::from(&m) });
            let text = match &v {
                YbeVerdict::Holds => "braid relation holds exactly".to_string(),
                YbeVerdict::Fails(w) => {
                    details["witness"] = witness_json(w);
                    format!("LHS - RHS at ({}, {}) = {}", w.row, w.col, w.value)
                }
            };
            return Ok(Outcome { status: Status::from_bool(v.holds()), details, text });
        }
    };
    let f = family.expect("set above");
    let v = check_spectral_ybe(&f)?;
    let mut details = json!({ "input": name, "check": "spectral", "param": f.param(), "holds": v.holds(), "matrix": MatrixJson::from(f.matrix()) });
    let mut text = String::new();
    match &v {
        SpectralVerdict::Holds(c) => {
            details["convention"] = json!(c.name());
            let _ = writeln!(text, "holds with the {c} convention");
        }
        SpectralVerdict::Fails(fs) => {
            details["failures"] = fs.iter().map(|(c, w)| json!({ "convention": c.name(), "witness": witness_json(w) })).collect();
            for (c, w) in fs {
                let _ = writeln!(text, "{c}: LHS - RHS at ({}, {}) = {}", w.row, w.col, w.value);
            }
        }
    }
    if let Ok(ff) = check_free_fermion(&f) {
        details["free_fermion"] = json!({ "lhs": ff.lhs.to_string(), "rhs": ff.rhs.to_string(), "holds": ff.holds() });
        let _ = writeln!(text, "free fermion: {} = {} ({})", ff.lhs, ff.rhs, if ff.holds() { "holds" } else { "fails" });
    }
    Ok(Outcome { status: Status::from_bool(v.holds()), details, text: text.trim_end().to_string() })
}

fn write_relations(out: &Path, set: &RelationSet) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: out.display().to_string(), source };
    std::fs::write(out, set.to_text()).map_err(io)?;
    let mut j = out.as_os_str().to_owned();
    j.push(".json");
    let body = serde_json::to_string_pretty(&set.to_json()).expect("serializable");
    std::fs::write(&j, body).map_err(|source| CliError::Io { path: Path::new(&j).display().to_string(), source })
}

/// Tags relations equal (up to a unit) to the catalogue [F1] or [F2].
fn label_f1_f2(set: &mut RelationSet) {
    let named = [
        ("F1", catalogue::f1(OmegaFlag::MinusOne)),
        ("F1", catalogue::f1(OmegaFlag::PlusOne)),
        ("F2", catalogue::f2()),
    ];
    for (label, p) in named {
        if set.contains(&p) {
            set.push(p, Some(label.to_string()));
        }
    }
}

pub fn frt(builtin: Option<&str>, file: Option<&str>, mixed: bool, out: Option<&Path>) -> Result<Outcome, CliError> {
    let (name, input) = load_matrix(builtin, file)?;
    let m = match input {
        MatrixInput::Constant(m) => m,
        MatrixInput::Spectral(f) => f.matrix().clone(),
    };
    let (set, details) = if mixed {
        let src = builtin.and_then(mixed_source).unwrap_or(m);
        let tt = frt_derive(&src, false, true)?;
        let t_t = frt_derive(&src, true, false)?;
        let all = tt.union(&t_t);
        let details = json!({
            "input": name, "mixed": true, "count": all.len(),
            "t_tprime": tt.to_json(), "tprime_t": t_t.to_json(), "relations": all.to_json(),
        });
        (all, details)
    } else {
        let mut s = frt_derive(&m, false, false)?;
        label_f1_f2(&mut s);
        let details = json!({ "input": name, "mixed": false, "count": s.len(), "relations": s.to_json() });
        (s, details)
    };
    if let Some(p) = out {
        write_relations(p, &set)?;
    }
    Ok(Outcome { status: Status::Pass, details, text: format!("{} relations\n{}", set.len(), set).trim_end().to_string() })
}

pub fn ideal(target: &str, relations: &str, bound: Option<usize>) -> Result<Outcome, CliError> {
    let t = NCPoly::parse_auto(target)?;
    let rels = load_relations(relations)?;
    let bound = bound.unwrap_or_else(|| t.degree().unwrap_or(0));
    let m = ideal_member(&t, &rels, bound)?;
    let mut details = json!({
        "target": t.to_string(), "relations": relations, "relation_text": rels.to_text(), "bound": bound, "member": m.is_member(),
    });
    let (status, text) = match &m {
        Membership::Member(c) => {
            let ok = c.verify(&t, &rels);
            details["certificate"] = json!(c.to_json(&rels));
            details["verified"] = json!(ok);
            let mut text = format!("member at bound {bound}; certificate with {} terms re-expands {}", c.terms.len(), if ok { "exactly" } else { "INCORRECTLY" });
            if let Some(d) = &c.denominator {
                let _ = write!(text, " (denominator {d})");
            }
            (Status::from_bool(ok), text)
        }
        Membership::NotFound { bound } => (Status::Inconclusive, format!("not found at degree bound {bound}")),
    };
    Ok(Outcome { status, details, text })
}

pub enum RepSource {
    Family { kind: FamilyKind, bindings: Bindings },
    Coproduct(Vec<(FamilyKind, Vec<FieldElement>)>),
    File(String),
}

fn constant(s: &str) -> Result<FieldElement, CliError> {
    LaurentPoly::parse_auto(s)?
        .constant_value()
        .ok_or_else(|| CliError::Usage(format!("`{s}` is not a field constant")))
}

impl RepSource {
    pub fn from_args(family: Option<&str>, params: Option<&str>, coproduct: &[String], file: Option<&str>) -> Result<Self, CliError> {
        if let Some(f) = family {
            let kind = FamilyKind::from_str(f)?;
            let mut bindings = Bindings::new();
            for pair in params.unwrap_or("").split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (k, v) = pair.split_once('=').ok_or_else(|| CliError::Usage(format!("expected name=value, got `{pair}`")))?;
                bindings.insert(k.trim().to_string(), constant(v.trim())?);
            }
            return Ok(RepSource::Family { kind, bindings });
        }
        if !coproduct.is_empty() {
            let factors: Vec<&str> = coproduct.iter().flat_map(|s| s.split_whitespace()).collect();
            if factors.len() != 2 {
                return Err(CliError::Usage(format!("--coproduct takes two factors, got {}", factors.len())));
            }
            let parsed = factors
                .iter()
                .map(|f| {
                    let (name, vals) = f.split_once(':').unwrap_or((f, ""));
                    let vals = vals.split(',').filter(|v| !v.is_empty()).map(constant).collect::<Result<Vec<_>, _>>()?;
                    Ok((FamilyKind::from_str(name)?, vals))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            return Ok(RepSource::Coproduct(parsed));
        }
        match file {
            Some(f) => Ok(RepSource::File(f.to_string())),
            None => Err(CliError::Usage("give one of --family, --coproduct or --file".into())),
        }
    }

    fn build(&self) -> Result<Representation, CliError> {
        Ok(match self {
            RepSource::Family { kind, bindings } => make_family(*kind, bindings)?,
            RepSource::Coproduct(fs) => {
                let mut reps = Vec::new();
                for (k, vals) in fs {
                    let r = make_family(*k, &k.positional(vals)?)?;
                    reps.push(r.verify()?);
                }
                coproduct_rep(&reps[0], &reps[1])?
            }
            RepSource::File(f) => {
                let j: RepresentationJson =
                    serde_json::from_str(&read_file(f)?).map_err(|e| CliError::Usage(format!("{f}: {e}")))?;
                Representation::from_json(&j)?
            }
        })
    }
}

fn vector_text(v: &[FieldElement]) -> String {
    SymVector::from_field(v).to_string()
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.to_strings(), "text": s.to_string() })
}

fn bindings_json(b: &Bindings) -> Value {
    b.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect::<serde_json::Map<_, _>>().into()
}

pub fn rep(source: &RepSource, analysis: Analysis, generator: &str, seed: u64) -> Result<Outcome, CliError> {
    let r = source.build()?;
    let check = check_rep(&r, &algebra_relations())?;
    let mut details = json!({
        "name": r.name(), "dim": r.dim(), "bindings": bindings_json(r.bindings()), "representation": r.to_json(),
        "relations_checked": algebra_relations().len(),
    });
    if let RepCheck::Violations(vs) = &check {
        details["violations"] = vs.iter().map(|v| json!({ "relation": v.relation, "residual": matrix_json(&v.residual) })).collect();
        let text = vs.iter().map(|v| format!("violated: {}", v.relation)).collect::<Vec<_>>().join("\n");
        return Ok(Outcome { status: Status::Fail, details, text });
    }
    let r = r.verify()?;
    let (status, text) = match analysis {
        Analysis::Verify => (Status::Pass, format!("{} ({}-dimensional) satisfies all {} relations", r.name(), r.dim(), algebra_relations().len())),
        Analysis::Series => series(&r, &mut details)?,
        Analysis::Decompose => decomposition(&r, seed, &mut details)?,
        Analysis::Entangle => entangle(&r, generator, &mut details)?,
    };
    Ok(Outcome { status, details, text })
}

fn series(r: &Representation, details: &mut Value) -> Result<(Status, String), CliError> {
    let s = match composition_series(r) {
        Ok(s) => s,
        Err(e @ (RepError::LatticeCap(_) | RepError::ChainExtraction(_))) => {
            details["reason"] = json!(e.to_string());
            return Ok((Status::Inconclusive, e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    details["chain"] = s.chain.iter().map(subspace_json).collect();
    details["quotients_irreducible"] = json!(s.verdicts.iter().all(|v| v.is_irreducible()));
    details["alternatives"] = s.alternatives.iter().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect();
    details["lattice_size"] = json!(s.lattice.len());
    let mut text = format!("composition series of length {}\n", s.length());
    for m in &s.chain {
        let _ = writeln!(text, "  {m}");
    }
    for alt in &s.alternatives {
        let _ = writeln!(text, "alternative: {}", alt.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" < "));
    }
    Ok((Status::Pass, text.trim_end().to_string()))
}

fn decomposition(r: &Representation, seed: u64, details: &mut Value) -> Result<(Status, String), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = match decompose(r, &mut rng) {
        Ok(d) => d,
        Err(RepError::Inconclusive { attempts, commutant_dim, commutant }) => {
            details["attempts"] = json!(attempts);
            details["commutant"] = commutant.iter().map(matrix_json).collect();
            return Ok((Status::Inconclusive, format!("no splitting idempotent after {attempts} attempts (commutant dimension {commutant_dim})")));
        }
        Err(e) => return Err(e.into()),
    };
    details["seed"] = json!(seed);
    let text = match &d {
        Decomposition::Indecomposable { commutant_dim, semisimple_dim } => {
            details["indecomposable"] = json!(true);
            details["commutant_dim"] = json!(commutant_dim);
            details["semisimple_dim"] = json!(semisimple_dim);
            format!("indecomposable (commutant dimension {commutant_dim}, semisimple part {semisimple_dim})")
        }
        Decomposition::Summands(parts) => {
            details["indecomposable"] = json!(false);
            let mut out = Vec::new();
            for p in parts {
                let sub = r.restrict(p)?;
                let mut j = subspace_json(p);
                j["images"] = sub.images().iter().map(matrix_json).collect();
                out.push(j);
            }
            details["summands"] = json!(out);
            let dims: Vec<String> = parts.iter().map(|p| p.dim().to_string()).collect();
            let mut text = format!("{} summands of dimensions {}", parts.len(), dims.join(" + "));
            for p in parts {
                let _ = write!(text, "\n  {p}");
            }
            text
        }
    };
    Ok((Status::Pass, text))
}

fn entangle(r: &Representation, generator: &str, details: &mut Value) -> Result<(Status, String), CliError> {
    if r.dim() != 4 {
        return Err(CliError::Usage(format!("entanglement analysis needs a 4-dimensional representation, got {}", r.dim())));
    }
    let g = Generator::parse(generator)
        .filter(|g| !g.primed())
        .ok_or_else(|| CliError::Usage(format!("unknown generator `{generator}`")))?;
    let eig = match eigen_analysis(r, g) {
        Ok(e) => e,
        Err(e @ RepError::NotSplit { .. }) => {
            details["reason"] = json!(e.to_string());
            return Ok((Status::Inconclusive, e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = format!("eigenvectors of {g}:");
    let mut entries = Vec::new();
    for e in &eig {
        for v in e.eigenvectors.basis() {
            let sd = schmidt(v)?;
            let unit = normalize_state(v);
            let u = unit.as_ref().filter(|_| sd.maximally_entangled).and_then(|s| local_unitary_from_bell(s).ok());
            let _ = write!(
                text,
                "\n  {} for {}: Schmidt [{:.12}, {:.12}]{}",
                vector_text(v),
                e.eigenvalue,
                sd.coefficients[0],
                sd.coefficients[1],
                if sd.maximally_entangled { ", maximally entangled" } else { "" }
            );
            entries.push(json!({
                "eigenvalue": e.eigenvalue.to_string(),
                "multiplicity": e.multiplicity,
                "vector": v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "normalized": unit.map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                "schmidt": sd.coefficients,
                "maximally_entangled": sd.maximally_entangled,
                "local_unitary": u.as_ref().map(matrix_json),
            }));
        }
    }
    details["generator"] = json!(g.to_string());
    details["eigenvectors"] = json!(entries);
    Ok((Status::Pass, text))
}

const KETS: [&str; 4] = ["00", "01", "10", "11"];

pub fn evolve(sign: &str, theta: f64, phi: f64, ket: &str) -> Result<Outcome, CliError> {
    let s = BellSign::from_str(sign)?;
    let pt = EvolutionPoint::new(theta, phi)?;
    let k = KETS.iter().position(|&x| x == ket).ok_or_else(|| CliError::Usage(format!("ket must be one of {}", KETS.join(", "))))?;
    let out = EvolutionJson::new(s, pt, k);
    let closed = closed_form(s, pt, k);
    let residual = out.out.iter().zip(&closed).map(|(o, c)| (o[0] - c.re).hypot(o[1] - c.im)).fold(0.0, f64::max);
    let ok = residual < 1e-12;
    let mut details = json!(out);
    details["closed_form_residual"] = json!(residual);
    let amp: Vec<String> = out.out.iter().map(|[re, im]| format!("{re:+.15}{im:+.15}i")).collect();
    let text = format!("B{s}(theta={theta}, phi={phi})|{ket}> = [{}]\nresidual against closed form: {residual:.3e}", amp.join(", "));
    Ok(Outcome { status: Status::from_bool(ok), details, text })
}

pub fn bell_table() -> Result<Outcome, CliError> {
    let mut details = json!({ "states": {} });
    let mut text = String::new();
    for b in BellState::ALL {
        let v = b.vector();
        details["states"][b.name()] = json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        let _ = writeln!(text, "{b} = {}", vector_text(&v));
    }
    for s in [BellSign::Plus, BellSign::Minus] {
        let t = generation_table(s)?;
        let key = format!("B{s}");
        details[&key] = t.iter().map(|e| json!({ "ket": e.ket, "sign": e.sign, "state": e.state.name() })).collect();
        let _ = writeln!(text, "{key}: {}", t.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "));
    }
    Ok(Outcome { status: Status::Pass, details, text: text.trim_end().to_string() })
}
