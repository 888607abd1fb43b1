//! Matrix representations of the ω = −1 algebra: families, verification,
//! coproducts, invariant subspaces and their analysis.

mod decompose;
mod eigen;
mod entangle;
mod families;
mod series;
mod subspace;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bellmodels::OmegaFlag;
use crate::freealg::catalogue;
use crate::freealg::{FreeAlgError, Generator, NCPoly, RelationSet};
use crate::linalg::{FieldMatrix, LinalgError, MatrixJson, SymMatrix};
use crate::scalar::{FieldElement, LaurentPoly, ScalarError};

pub use decompose::{commutant, decompose, Decomposition};
pub use eigen::{char_poly, eigen_analysis, field_roots, EigenData, UniPoly};
pub use entangle::{ladder_check, local_unitary_from_bell, normalize_state, schmidt, LadderCheck, LadderKind, LadderReport, SchmidtData};
pub use families::{make_family, random_bindings, FamilyKind};
pub use series::{composition_series, CompositionSeries, QuotientVerdict};
pub use subspace::{invariant_closure, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("{family}: constraint `{constraint}` violated")]
    Constraint { family: String, constraint: String },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("missing binding `{0}`")]
    MissingBinding(String),
    #[error("parameter `{0}` is unbound")]
    Unbound(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("representation `{0}` is not verified")]
    Unverified(String),
    #[error("relations violated: {0:?}")]
    Violations(Vec<String>),
    #[error("characteristic polynomial of {generator} does not split over the field: {poly}")]
    NotSplit { generator: String, poly: String },
    #[error("invariant-subspace lattice exceeded {0} members")]
    LatticeCap(usize),
    #[error("no composition series with irreducible quotients: {0}")]
    ChainExtraction(String),
    #[error("decomposition inconclusive after {attempts} attempts (commutant dimension {commutant_dim})")]
    Inconclusive { attempts: usize, commutant_dim: usize, commutant: Vec<FieldMatrix> },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("zero state")]
    ZeroState,
    #[error("state is not maximally entangled: {0}")]
    NotMaximallyEntangled(String),
    #[error("format: {0}")]
    Format(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

pub type Bindings = BTreeMap<String, FieldElement>;

/// Images of â, b̂, ĉ, d̂ with every parameter bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    name: String,
    dim: usize,
    images: [FieldMatrix; 4],
    bindings: Bindings,
    verified: bool,
}

fn bind(m: &SymMatrix, bindings: &Bindings) -> Result<FieldMatrix, RepError> {
    let e = m.evaluate(bindings)?;
    e.to_field().ok_or_else(|| {
        let mut unbound: Vec<String> = e.entries().iter().flat_map(|p| p.used_params()).collect();
        unbound.sort();
        unbound.dedup();
        RepError::Unbound(unbound.join(", "))
    })
}

impl Representation {
    /// Binds the parameters of symbolic images.
    pub fn new(name: impl Into<String>, images: [SymMatrix; 4], bindings: Bindings) -> Result<Self, RepError> {
        let mut out = Vec::with_capacity(4);
        for m in &images {
            out.push(bind(m, &bindings)?);
        }
        let images: [FieldMatrix; 4] = out.try_into().expect("four images");
        Self::from_field(name, images, bindings)
    }

    pub fn from_field(name: impl Into<String>, images: [FieldMatrix; 4], bindings: Bindings) -> Result<Self, RepError> {
        let dim = images[0].rows();
        if dim == 0 {
            return Err(RepError::Shape("dimension must be positive".into()));
        }
        for (g, m) in Generator::unprimed().iter().zip(&images) {
            if (m.rows(), m.cols()) != (dim, dim) {
                return Err(RepError::Shape(format!("image of {g} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
        }
        Ok(Representation { name: name.into(), dim, images, bindings, verified: false })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[FieldMatrix; 4] {
        &self.images
    }

    /// Image of an unprimed generator; primed letters map to the same slot.
    pub fn image(&self, g: Generator) -> &FieldMatrix {
        &self.images[g.index() % 4]
    }

    pub fn bindings(&self) -> &Bindings {
        &self.bindings
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Runs [`check_rep`] against [`algebra_relations`] and marks the result verified.
    pub fn verify(mut self) -> Result<Self, RepError> {
        match check_rep(&self, &algebra_relations())? {
            RepCheck::Ok => {
                self.verified = true;
                Ok(self)
            }
            RepCheck::Violations(v) => Err(RepError::Violations(v.into_iter().map(|x| x.relation).collect())),
        }
    }

    /// Evaluates a noncommutative polynomial in the unprimed generators.
    pub fn evaluate(&self, p: &NCPoly) -> Result<FieldMatrix, RepError> {
        let mut acc = FieldMatrix::zeros(self.dim, self.dim);
        for (w, c) in p.terms() {
            let c = c.evaluate(&self.bindings)?;
            let c = c.constant_value().ok_or_else(|| RepError::Unbound(c.used_params().join(", ")))?;
            let mut m = FieldMatrix::identity(self.dim);
            for g in w.letters() {
                if g.primed() {
                    return Err(RepError::Precondition(format!("primed generator {g} in a single-copy relation")));
                }
                m = m.mul(self.image(*g));
            }
            acc = acc.add(&m.scale(&c));
        }
        Ok(acc)
    }

    /// Restriction to an invariant subspace, in the coordinates of its echelon basis.
    pub fn restrict(&self, s: &Subspace) -> Result<Representation, RepError> {
        let imgs = self.images.iter().map(|m| s.restricted(m)).collect::<Result<Vec<_>, _>>()?;
        let mut r = Representation::from_field(format!("{}|sub", self.name), imgs.try_into().expect("four"), self.bindings.clone())?;
        r.verified = self.verified;
        Ok(r)
    }

    pub fn to_json(&self) -> RepresentationJson {
        let g = |i: usize| MatrixJson::from(&SymMatrix::from_field_matrix(&self.images[i]));
        RepresentationJson {
            dim: self.dim,
            params: self.bindings.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            images: ImagesJson { a: g(0), b: g(1), c: g(2), d: g(3) },
        }
    }

    pub fn from_json(j: &RepresentationJson) -> Result<Self, RepError> {
        let mut bindings = Bindings::new();
        for (k, v) in &j.params {
            let p = LaurentPoly::parse_auto(v)?;
            let c = p.constant_value().ok_or_else(|| RepError::Format(format!("binding {k} = {v} is not a field constant")))?;
            bindings.insert(k.clone(), c);
        }
        let m = |x: &MatrixJson| SymMatrix::try_from(x).map_err(RepError::from);
        let imgs = [m(&j.images.a)?, m(&j.images.b)?, m(&j.images.c)?, m(&j.images.d)?];
        let r = Representation::new("json", imgs, bindings)?;
        if r.dim != j.dim {
            return Err(RepError::Shape(format!("declared dim {} but images are {}x{}", j.dim, r.dim, r.dim)));
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImagesJson {
    pub a: MatrixJson,
    pub b: MatrixJson,
    pub c: MatrixJson,
    pub d: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub dim: usize,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    pub images: ImagesJson,
}

/// The six defining relations (ĉ rescaled to absorb q) together with [F1], [F2].
pub fn algebra_relations() -> RelationSet {
    let qinv = LaurentPoly::parse("q^-1", &catalogue::q_params()).expect("parses");
    let scale = BTreeMap::from([(Generator::C, qinv)]);
    let mut set = RelationSet::new();
    for r in catalogue::rescaled_six(OmegaFlag::MinusOne) {
        set.push(r.poly, Some(r.text));
    }
    let f1 = catalogue::f1(OmegaFlag::MinusOne).rescale(&scale).expect("unit scale");
    let f2 = catalogue::f2().rescale(&scale).expect("unit scale");
    set.push(f1, Some("F1".into()));
    set.push(f2, Some("F2".into()));
    set
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub residual: FieldMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepCheck {
    Ok,
    Violations(Vec<Violation>),
}

impl RepCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, RepCheck::Ok)
    }
}

/// Substitutes the images into every relation and collects the nonzero residuals.
pub fn check_rep(rep: &Representation, rels: &RelationSet) -> Result<RepCheck, RepError> {
    let mut bad = Vec::new();
    for r in rels.relations() {
        let residual = rep.evaluate(&r.poly)?;
        if !residual.is_zero() {
            let label = if r.labels.is_empty() { r.poly.to_string() } else { format!("{} [{}]", r.poly, r.labels.join(", ")) };
            bad.push(Violation { relation: label, residual });
        }
    }
    Ok(if bad.is_empty() { RepCheck::Ok } else { RepCheck::Violations(bad) })
}

/// Δ(â)=â⊗â′+b̂⊗ĉ′, Δ(b̂)=â⊗b̂′+b̂⊗d̂′, Δ(ĉ)=ĉ⊗â′+d̂⊗ĉ′, Δ(d̂)=ĉ⊗b̂′+d̂⊗d̂′.
pub fn coproduct_rep(r1: &Representation, r2: &Representation) -> Result<Representation, RepError> {
    for r in [r1, r2] {
        if !r.verified {
            return Err(RepError::Unverified(r.name.clone()));
        }
    }
    let [a, b, c, d] = &r1.images;
    let [a2, b2, c2, d2] = &r2.images;
    let k = |x: &FieldMatrix, y: &FieldMatrix| x.kron(y);
    let imgs = [
        k(a, a2).add(&k(b, c2)),
        k(a, b2).add(&k(b, d2)),
        k(c, a2).add(&k(d, c2)),
        k(c, b2).add(&k(d, d2)),
    ];
    let mut bindings = r1.bindings.clone();
    for (n, v) in &r2.bindings {
        bindings.insert(format!("{n}'"), v.clone());
    }
    Representation::from_field(format!("{} (x) {}", r1.name, r2.name), imgs, bindings)
}

/// Block-diagonal sum of two representations.
pub fn direct_sum(r1: &Representation, r2: &Representation) -> Result<Representation, RepError> {
    let n = r1.dim + r2.dim;
    let imgs: Vec<FieldMatrix> = (0..4)
        .map(|i| {
            let mut m = FieldMatrix::zeros(n, n);
            for (off, src) in [(0, &r1.images[i]), (r1.dim, &r2.images[i])] {
                for r in 0..src.rows() {
                    for c in 0..src.cols() {
                        m.set(off + r, off + c, src.get(r, c).clone());
                    }
                }
            }
            m
        })
        .collect();
    let mut bindings = r1.bindings.clone();
    for (k, v) in &r2.bindings {
        bindings.insert(format!("{k}'"), v.clone());
    }
    let mut r = Representation::from_field(format!("{} (+) {}", r1.name, r2.name), imgs.try_into().expect("four"), bindings)?;
    r.verified = r1.verified && r2.verified;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn algebra_relations_are_q_free() {
        let rels = algebra_relations();
        assert_eq!(rels.len(), 8);
        for r in rels.relations() {
            for (_, c) in r.poly.terms() {
                assert!(c.is_constant(), "{}", r.poly);
            }
        }
    }

    #[test]
    fn trivial_rep_passes() {
        let i = FieldMatrix::identity(1);
        let z = FieldMatrix::zeros(1, 1);
        let r = Representation::from_field("trivial", [i.clone(), z.clone(), z, i], Bindings::new()).unwrap();
        assert!(check_rep(&r, &algebra_relations()).unwrap().is_ok());
        let r = r.verify().unwrap();
        let t = coproduct_rep(&r, &r).unwrap();
        assert_eq!(t.image(Generator::A), &FieldMatrix::identity(1));
        assert!(t.verify().is_ok());
    }

    #[test]
    fn modified_fermion_reports_violation() {
        let r = make_family(FamilyKind::Fermion, &Bindings::from([("l1".into(), fe(1)), ("l2".into(), fe(2))])).unwrap();
        let mut imgs = r.images().clone();
        imgs[3] = FieldMatrix::from_rows(vec![vec![fe(1), fe(0)], vec![fe(0), fe(2)]]);
        let bad = Representation::from_field("bad", imgs.clone(), Bindings::new()).unwrap();
        let RepCheck::Violations(v) = check_rep(&bad, &algebra_relations()).unwrap() else { panic!("should fail") };
        let names: Vec<&str> = v.iter().map(|x| x.relation.as_str()).collect();
        assert_eq!(names, ["c*d + b*a [b*a = -c*d]", "c*a + b*d [F1]"]);
        // independent oracle: direct products
        let (a, b, c, d) = (&imgs[0], &imgs[1], &imgs[2], &imgs[3]);
        assert!(a.mul(a).sub(&d.mul(d)).is_zero());
        assert!(a.mul(b).sub(&d.mul(c)).is_zero());
        assert!(!b.mul(a).add(&c.mul(d)).is_zero());
        assert!(!c.mul(a).add(&b.mul(d)).is_zero());
        assert_eq!(v[0].residual, b.mul(a).add(&c.mul(d)));
    }

    #[test]
    fn unverified_coproduct_is_rejected() {
        let r = make_family(FamilyKind::UnitSigma, &Bindings::new()).unwrap();
        assert!(matches!(coproduct_rep(&r, &r), Err(RepError::Unverified(_))));
    }

    #[test]
    fn json_round_trip() {
        let r = make_family(FamilyKind::PauliScalar, &Bindings::from([("l".into(), fe(1)), ("m".into(), FieldElement::sqrt2())]))
            .unwrap();
        let j = serde_json::to_string(&r.to_json()).unwrap();
        let back = Representation::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.images(), r.images());
        assert_eq!(back.bindings(), r.bindings());
    }

    #[test]
    fn unbound_parameter_is_reported() {
        let p = crate::scalar::ParamSet::new(["l"]).unwrap();
        let m = SymMatrix::identity(2, &p).scalar_mul(&LaurentPoly::var(&p, "l").unwrap()).unwrap();
        let z = SymMatrix::zeros(2, 2, &p);
        let e = Representation::new("x", [m.clone(), z.clone(), z, m], Bindings::new());
        assert!(matches!(e, Err(RepError::Unbound(s)) if s == "l"));
    }
}
