use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{BellError, BellSign};

pub type CMatrix4 = [[Complex64; 4]; 4];
type CMatrix2 = [[Complex64; 2]; 2];

const KETS: [&str; 4] = ["00", "01", "10", "11"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionPoint {
    theta: f64,
    phi: f64,
}

impl EvolutionPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self, BellError> {
        if theta.is_finite() && phi.is_finite() {
            Ok(EvolutionPoint { theta, phi })
        } else {
            Err(BellError::NonFinite)
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

fn off_diagonal(half_angle: f64) -> CMatrix2 {
    let z = Complex64::new(0.0, 0.0);
    [[z, Complex64::from_polar(1.0, -half_angle)], [Complex64::from_polar(1.0, half_angle), z]]
}

/// σ₊e^{−i(φ+π)/2} + σ₋e^{i(φ+π)/2}
pub fn sigma_n1(phi: f64) -> [[Complex64; 2]; 2] {
    off_diagonal((phi + std::f64::consts::PI) / 2.0)
}

/// σ₊e^{−iφ/2} + σ₋e^{iφ/2}
pub fn sigma_n2(phi: f64) -> [[Complex64; 2]; 2] {
    off_diagonal(phi / 2.0)
}

fn kron2(a: &CMatrix2, b: &CMatrix2) -> CMatrix4 {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn identity4() -> CMatrix4 {
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = Complex64::new(1.0, 0.0);
    }
    m
}

fn matmul(a: &CMatrix4, b: &CMatrix4) -> CMatrix4 {
    let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// H₊ = ½σ_{n1}⊗σ_{n2}, H₋ = ½σ_{n2}⊗σ_{n1}.
pub fn hamiltonian(s: BellSign, phi: f64) -> CMatrix4 {
    let (a, b) = (sigma_n1(phi), sigma_n2(phi));
    let m = match s {
        BellSign::Plus => kron2(&a, &b),
        BellSign::Minus => kron2(&b, &a),
    };
    m.map(|row| row.map(|x| x * 0.5))
}

/// cos(π/4−θ)·I + 2i·sin(π/4−θ)·H±
pub fn evolution_matrix(s: BellSign, pt: EvolutionPoint) -> CMatrix4 {
    let t = FRAC_PI_4 - pt.theta;
    let h = hamiltonian(s, pt.phi);
    let c = Complex64::new(0.0, 2.0 * t.sin());
    let mut m = identity4();
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = m[i][j] * t.cos() + c * h[i][j];
        }
    }
    m
}

/// B±(θ)|ket⟩ for ket index 0..3 in the order |00⟩, |01⟩, |10⟩, |11⟩.
pub fn evolve(s: BellSign, pt: EvolutionPoint, ket: usize) -> [Complex64; 4] {
    let m = evolution_matrix(s, pt);
    [m[0][ket], m[1][ket], m[2][ket], m[3][ket]]
}

/// The printed closed-form action of B±(θ) on each product ket.
pub fn closed_form(s: BellSign, pt: EvolutionPoint, ket: usize) -> [Complex64; 4] {
    let t = FRAC_PI_4 - pt.theta;
    let (c, sn) = (Complex64::new(t.cos(), 0.0), t.sin());
    let z = Complex64::new(0.0, 0.0);
    let pm = s.factor() as f64;
    match ket {
        0 => [c, z, z, -Complex64::from_polar(1.0, pt.phi) * sn],
        1 => [z, c, Complex64::new(-pm * sn, 0.0), z],
        2 => [z, Complex64::new(pm * sn, 0.0), c, z],
        3 => [Complex64::from_polar(1.0, -pt.phi) * sn, z, z, c],
        _ => panic!("ket index {ket} out of range"),
    }
}

/// Power series for exp(i(π/2−2θ)H±), summed until terms fall below 1e-18.
pub fn exp_series(s: BellSign, pt: EvolutionPoint) -> CMatrix4 {
    let alpha = std::f64::consts::FRAC_PI_2 - 2.0 * pt.theta;
    let x = hamiltonian(s, pt.phi).map(|row| row.map(|h| h * Complex64::new(0.0, alpha)));
    let mut sum = identity4();
    let mut term = identity4();
    for k in 1..200 {
        term = matmul(&term, &x).map(|row| row.map(|v| v / k as f64));
        let size = term.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        for i in 0..4 {
            for j in 0..4 {
                sum[i][j] += term[i][j];
            }
        }
        if size < 1e-18 {
            break;
        }
    }
    sum
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionJson {
    pub theta: f64,
    pub phi: f64,
    pub sign: String,
    #[serde(rename = "in")]
    pub input: String,
    pub out: Vec<[f64; 2]>,
}

impl EvolutionJson {
    pub fn new(s: BellSign, pt: EvolutionPoint, ket: usize) -> Self {
        EvolutionJson {
            theta: pt.theta,
            phi: pt.phi,
            sign: s.symbol().to_string(),
            input: KETS[ket].to_string(),
            out: evolve(s, pt, ket).iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}
