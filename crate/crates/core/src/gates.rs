//! Gate definitions and finite gate sets.
//!
//! A `GateSet` is an ordered list of named unitary gates of arity at most
//! three. The ordering is part of the contract: enumeration walks gates in
//! set order and qubit tuples lexicographically, and that order is the
//! global tie-breaker everywhere a "first" or "smallest" witness is
//! reported.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{CMat, ONE, ZERO};

pub const MAX_ARITY: usize = 3;
const GATE_UNITARITY_TOL: f64 = 1e-10;

/// A named unitary gate on `arity` qubits.
#[derive(Debug, Clone)]
pub struct GateDef {
    pub label: String,
    pub arity: usize,
    pub matrix: CMat,
}

impl GateDef {
    pub fn new(label: impl Into<String>, arity: usize, matrix: CMat) -> Result<Self> {
        let label = label.into();
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::ArityTooLarge {
                arity,
                max: MAX_ARITY,
            });
        }
        if matrix.dim != 1 << arity {
            return Err(Error::DimensionMismatch {
                context: "GateDef::new",
                expected: 1 << arity,
                got: matrix.dim,
            });
        }
        let defect = matrix.unitarity_defect();
        if defect > GATE_UNITARITY_TOL {
            return Err(Error::NotUnitary { deviation: defect });
        }
        Ok(GateDef {
            label,
            arity,
            matrix,
        })
    }
}

/// An ordered, uniquely-labeled collection of gates.
#[derive(Debug, Clone)]
pub struct GateSet {
    pub name: String,
    gates: Vec<GateDef>,
    by_label: HashMap<String, usize>,
}

impl GateSet {
    pub fn new(name: impl Into<String>, gates: Vec<GateDef>) -> Result<Self> {
        let name = name.into();
        let mut by_label = HashMap::new();
        for (i, g) in gates.iter().enumerate() {
            if by_label.insert(g.label.clone(), i).is_some() {
                return Err(Error::Unsupported(format!(
                    "duplicate gate label `{}` in gate set `{}`",
                    g.label, name
                )));
            }
        }
        Ok(GateSet {
            name,
            gates,
            by_label,
        })
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate(&self, idx: usize) -> &GateDef {
        &self.gates[idx]
    }

    pub fn gates(&self) -> &[GateDef] {
        &self.gates
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.by_label.get(label).copied().ok_or_else(|| Error::UnknownGate {
            label: label.to_string(),
            set: self.name.clone(),
        })
    }

    /// Number of (gate, ordered distinct qubit tuple) choices on a register
    /// of `width` qubits. This is the per-slot factor of the closed-form
    /// circuit count.
    pub fn placements_on(&self, width: usize) -> u128 {
        self.gates
            .iter()
            .map(|g| arrangements(g.arity, width))
            .sum()
    }
}

/// Number of ordered tuples of distinct qubits: width! / (width - arity)!.
pub fn arrangements(arity: usize, width: usize) -> u128 {
    if arity > width {
        return 0;
    }
    let mut acc: u128 = 1;
    for k in 0..arity {
        acc *= (width - k) as u128;
    }
    acc
}

/// All ordered tuples of `arity` distinct qubits from `0..width`, in
/// lexicographic order.
pub fn qubit_tuples(arity: usize, width: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(arity);
    fn rec(arity: usize, width: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for q in 0..width {
            if cur.contains(&q) {
                continue;
            }
            cur.push(q);
            rec(arity, width, cur, out);
            cur.pop();
        }
    }
    rec(arity, width, &mut cur, &mut out);
    out
}

fn mat1(rows: [[C64; 2]; 2]) -> CMat {
    CMat {
        dim: 2,
        a: rows.iter().flat_map(|r| r.iter().copied()).collect(),
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn x_matrix() -> CMat {
    mat1([[ZERO, ONE], [ONE, ZERO]])
}

pub fn h_matrix() -> CMat {
    let s = 1.0 / 2.0f64.sqrt();
    mat1([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]])
}

pub fn t_matrix() -> CMat {
    mat1([[ONE, ZERO], [ZERO, C64::from_polar(1.0, FRAC_PI_4)]])
}

pub fn tdg_matrix() -> CMat {
    mat1([[ONE, ZERO], [ZERO, C64::from_polar(1.0, -FRAC_PI_4)]])
}

/// CNOT on (control, target) with the control on the first (most
/// significant) tuple position.
pub fn cnot_matrix() -> CMat {
    let mut m = CMat::zeros(4);
    m.set(0, 0, ONE);
    m.set(1, 1, ONE);
    m.set(2, 3, ONE);
    m.set(3, 2, ONE);
    m
}

/// CNOT composed with an X on the target wire applied first:
/// |c, t> -> |c, c xor t xor 1>. Flips the target exactly when the control
/// is 0.
pub fn cnot_ix_matrix() -> CMat {
    let mut m = CMat::zeros(4);
    m.set(0, 1, ONE); // |00> -> |01>
    m.set(1, 0, ONE); // |01> -> |00>
    m.set(2, 2, ONE); // |10> -> |10>
    m.set(3, 3, ONE); // |11> -> |11>
    m
}

/// Toffoli on (control, control, target).
pub fn toffoli_matrix() -> CMat {
    let mut m = CMat::identity(8);
    m.set(6, 6, ZERO);
    m.set(7, 7, ZERO);
    m.set(6, 7, ONE);
    m.set(7, 6, ONE);
    m
}

pub fn ry_matrix(theta: f64) -> CMat {
    let (s, co) = (theta / 2.0).sin_cos();
    mat1([[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]])
}

pub fn rz_matrix(theta: f64) -> CMat {
    mat1([
        [C64::from_polar(1.0, -theta / 2.0), ZERO],
        [ZERO, C64::from_polar(1.0, theta / 2.0)],
    ])
}

/// The Clifford+T-style base set:
/// {X, H, T, Tdg, CNOT, Toffoli, CNOT(I(x)X)} in that fixed order.
pub fn gate_set_g0() -> GateSet {
    GateSet::new(
        "g0",
        vec![
            GateDef::new("x", 1, x_matrix()).unwrap(),
            GateDef::new("h", 1, h_matrix()).unwrap(),
            GateDef::new("t", 1, t_matrix()).unwrap(),
            GateDef::new("tdg", 1, tdg_matrix()).unwrap(),
            GateDef::new("cnot", 2, cnot_matrix()).unwrap(),
            GateDef::new("toffoli", 3, toffoli_matrix()).unwrap(),
            GateDef::new("cnotx", 2, cnot_ix_matrix()).unwrap(),
        ],
    )
    .unwrap()
}

/// CNOT plus single-qubit Y/Z rotations on the angle grid k * 2pi / 2^d,
/// k = 1 .. 2^d - 1 (identity excluded). Default precision is d = 3.
pub fn gate_set_grot(d: u32) -> Result<GateSet> {
    if d == 0 || d > 8 {
        return Err(Error::Unsupported(format!(
            "rotation grid precision d={d} outside 1..=8"
        )));
    }
    let steps = 1u32 << d;
    let mut gates = vec![GateDef::new("cnot", 2, cnot_matrix()).unwrap()];
    for k in 1..steps {
        let theta = 2.0 * PI * k as f64 / steps as f64;
        gates.push(GateDef::new(format!("ry{k}_{steps}"), 1, ry_matrix(theta))?);
    }
    for k in 1..steps {
        let theta = 2.0 * PI * k as f64 / steps as f64;
        gates.push(GateDef::new(format!("rz{k}_{steps}"), 1, rz_matrix(theta))?);
    }
    let name = if d == 3 {
        "grot".to_string()
    } else {
        format!("grot-d{d}")
    };
    GateSet::new(name, gates)
}

/// Resolve a builtin gate set by name. Recognized: "g0", "grot",
/// "grot-d<k>", and "formula2q" (the two-qubit formula-evaluation pair).
pub fn gate_set_by_name(name: &str) -> Result<GateSet> {
    if name == "g0" {
        return Ok(gate_set_g0());
    }
    if name == "grot" {
        return gate_set_grot(3);
    }
    if let Some(d) = name.strip_prefix("grot-d") {
        if let Ok(d) = d.parse::<u32>() {
            return gate_set_grot(d);
        }
    }
    if name == "formula2q" {
        return Ok(crate::finegrained::gate_set_formula2q());
    }
    Err(Error::UnknownGateSet {
        name: name.to_string(),
    })
}
