use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{Bindings, RepError, Representation};
use crate::linalg::FieldMatrix;
use crate::scalar::FieldElement;

/// The two-dimensional families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    DegenerateA,
    PauliScalar,
    UnitSigma,
    DistinctEigen,
    Fermion,
    BDiagonal,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::DegenerateA,
        FamilyKind::PauliScalar,
        FamilyKind::UnitSigma,
        FamilyKind::DistinctEigen,
        FamilyKind::Fermion,
        FamilyKind::BDiagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::DegenerateA => "degenerate_a",
            FamilyKind::PauliScalar => "pauli_scalar",
            FamilyKind::UnitSigma => "unit_sigma",
            FamilyKind::DistinctEigen => "distinct_eigen",
            FamilyKind::Fermion => "fermion",
            FamilyKind::BDiagonal => "b_diagonal",
        }
    }

    /// Parameter names in positional order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            FamilyKind::DegenerateA => &["l", "alpha", "beta", "gamma", "c1", "c2", "c3"],
            FamilyKind::PauliScalar => &["l", "m"],
            FamilyKind::UnitSigma => &[],
            FamilyKind::DistinctEigen => &["l1", "l2", "eps", "c2", "c3"],
            FamilyKind::Fermion => &["l1", "l2"],
            FamilyKind::BDiagonal => &["p", "alpha", "beta"],
        }
    }

    /// Binds values to [`param_names`](Self::param_names) in order.
    pub fn positional(self, values: &[FieldElement]) -> Result<Bindings, RepError> {
        let names = self.param_names();
        if values.len() != names.len() {
            return Err(RepError::Precondition(format!("{} takes {} parameters, got {}", self.name(), names.len(), values.len())));
        }
        Ok(names.iter().map(|n| n.to_string()).zip(values.iter().cloned()).collect())
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, RepError> {
        FamilyKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| RepError::UnknownFamily(s.to_string()))
    }
}

fn m2(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> FieldMatrix {
    FieldMatrix::from_rows(vec![vec![a, b], vec![c, d]])
}

fn int(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn diag(a: FieldElement, b: FieldElement) -> FieldMatrix {
    m2(a, int(0), int(0), b)
}

/// Builds the printed matrices after checking the family's constraints.
pub fn make_family(kind: FamilyKind, params: &Bindings) -> Result<Representation, RepError> {
    for k in params.keys() {
        if !kind.param_names().contains(&k.as_str()) {
            return Err(RepError::Precondition(format!("{kind} has no parameter `{k}`")));
        }
    }
    let get = |n: &str| params.get(n).cloned().ok_or_else(|| RepError::MissingBinding(n.to_string()));
    let fail = |c: &str| RepError::Constraint { family: kind.name().into(), constraint: c.into() };
    let z = int(0);
    let images = match kind {
        FamilyKind::Fermion => {
            let (l1, l2) = (get("l1")?, get("l2")?);
            let sp = m2(z.clone(), int(1), z.clone(), z.clone());
            [diag(l1.clone(), l2.clone()), sp.clone(), sp, diag(l1, -l2)]
        }
        FamilyKind::PauliScalar => {
            let (l, m) = (get("l")?, get("m")?);
            [
                diag(l.clone(), l.clone()),
                m2(z.clone(), -&m, m.clone(), z.clone()),
                diag(m.clone(), -m),
                m2(z.clone(), l.clone(), l, z),
            ]
        }
        FamilyKind::UnitSigma => [
            diag(int(1), int(1)),
            m2(z.clone(), int(1), int(-1), z.clone()),
            m2(z.clone(), int(1), int(1), z),
            diag(int(1), int(-1)),
        ],
        FamilyKind::DistinctEigen => {
            let (l1, l2, eps, c2, c3) = (get("l1")?, get("l2")?, get("eps")?, get("c2")?, get("c3")?);
            if l1 == l2 {
                return Err(fail("l1 != l2"));
            }
            if !(&eps * &eps).is_one() {
                return Err(fail("eps^2 = 1"));
            }
            [
                diag(l1.clone(), l2.clone()),
                m2(z.clone(), &eps * &c2, -&(&eps * &c3), z.clone()),
                m2(z.clone(), c2, c3, z.clone()),
                diag(&eps * &l1, -&(&eps * &l2)),
            ]
        }
        FamilyKind::DegenerateA => {
            let (l, alpha, beta, gamma) = (get("l")?, get("alpha")?, get("beta")?, get("gamma")?);
            let (c1, c2, c3) = (get("c1")?, get("c2")?, get("c3")?);
            if l.is_zero() {
                return Err(fail("l != 0"));
            }
            if &(&alpha * &alpha) + &(&beta * &gamma) != &l * &l {
                return Err(fail("alpha^2 + beta*gamma = l^2"));
            }
            if &(&int(2) * &c1) * &alpha != -&(&(&c3 * &beta) + &(&c2 * &gamma)) {
                return Err(fail("2*c1*alpha = -c3*beta - c2*gamma"));
            }
            let d = m2(alpha.clone(), beta, gamma, -&alpha);
            let c = m2(c1.clone(), c2, c3, -&c1);
            let b = d.mul(&c).scale(&l.inv()?);
            [diag(l.clone(), l), b, c, d]
        }
        FamilyKind::BDiagonal => {
            let (p, alpha, beta) = (get("p")?, get("alpha")?, get("beta")?);
            if p.is_zero() {
                return Err(fail("p != 0"));
            }
            if beta.is_zero() {
                return Err(fail("beta != 0"));
            }
            let p2 = &p * &p;
            let pinv = p.inv()?;
            [
                m2(alpha.clone(), &p2 * &beta, beta.clone(), alpha.clone()),
                diag(p.clone(), -&p),
                m2(z.clone(), -&p2, int(1), z),
                m2(&p * &beta, &p * &alpha, &pinv * &alpha, &p * &beta),
            ]
        }
    };
    Representation::from_field(kind.name(), images, params.clone())
}

fn small<R: Rng + ?Sized>(rng: &mut R) -> FieldElement {
    let den = rng.gen_range(1..=3);
    FieldElement::gaussian(
        crate::scalar::Rational::new(rng.gen_range(-4..=4).into(), den.into()),
        crate::scalar::Rational::new(rng.gen_range(-4..=4).into(), den.into()),
    )
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R) -> FieldElement {
    loop {
        let x = small(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random bindings satisfying the family's constraints, with Gaussian-rational values.
pub fn random_bindings<R: Rng + ?Sized>(kind: FamilyKind, rng: &mut R) -> Bindings {
    let vals: Vec<FieldElement> = match kind {
        FamilyKind::Fermion => vec![small(rng), small(rng)],
        FamilyKind::PauliScalar => vec![small(rng), small(rng)],
        FamilyKind::UnitSigma => vec![],
        FamilyKind::DistinctEigen => {
            let l1 = small(rng);
            let l2 = loop {
                let x = small(rng);
                if x != l1 {
                    break x;
                }
            };
            let eps = if rng.gen_bool(0.5) { int(1) } else { int(-1) };
            vec![l1, l2, eps, small(rng), small(rng)]
        }
        FamilyKind::DegenerateA => {
            let (l, alpha, beta) = (nonzero(rng), small(rng), nonzero(rng));
            let binv = beta.inv().expect("nonzero");
            let gamma = &(&(&l * &l) - &(&alpha * &alpha)) * &binv;
            let (c1, c2) = (small(rng), small(rng));
            let c3 = -&(&(&(&int(2) * &c1) * &alpha) + &(&c2 * &gamma)) * &binv;
            vec![l, alpha, beta, gamma, c1, c2, c3]
        }
        FamilyKind::BDiagonal => vec![nonzero(rng), small(rng), nonzero(rng)],
    };
    kind.positional(&vals).expect("arity matches")
}
