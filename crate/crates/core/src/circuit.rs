//! Quantum circuits over a finite gate set.
//!
//! A circuit acts on `n` input qubits plus `t` ancilla qubits, all ancillas
//! initialized to |0>. Qubit 0 is the most significant bit of the state
//! index; ancillas occupy the trailing (least significant) positions. Gate
//! operands are ordered tuples of distinct qubits, with the first operand
//! matching the gate's most significant local qubit.
//!
//! The measured output is qubit 0 unless `output_qubit` overrides it, which
//! constructions that naturally write elsewhere (a Toffoli computing AND
//! into its target, for instance) rely on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{gate_set_by_name, GateSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Op {
    pub gate: usize,
    pub qubits: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumCircuit {
    pub n: usize,
    pub t: usize,
    pub ops: Vec<Op>,
    /// Measured qubit; defaults to qubit 0 when absent.
    pub output_qubit: Option<usize>,
}

impl QuantumCircuit {
    pub fn empty(n: usize, t: usize) -> Self {
        QuantumCircuit {
            n,
            t,
            ops: Vec::new(),
            output_qubit: None,
        }
    }

    pub fn width(&self) -> usize {
        self.n + self.t
    }

    pub fn size(&self) -> usize {
        self.ops.len()
    }

    pub fn output_qubit(&self) -> usize {
        self.output_qubit.unwrap_or(0)
    }

    /// Check operand counts, ranges and distinctness against a gate set.
    pub fn validate(&self, gs: &GateSet) -> Result<()> {
        let width = self.width();
        if let Some(out) = self.output_qubit {
            if out >= width {
                return Err(Error::QubitOutOfRange {
                    index: out,
                    width,
                });
            }
        }
        for op in &self.ops {
            if op.gate >= gs.len() {
                return Err(Error::UnknownGate {
                    label: format!("#{}", op.gate),
                    set: gs.name.clone(),
                });
            }
            let g = gs.gate(op.gate);
            if op.qubits.len() != g.arity {
                return Err(Error::WrongOperandCount {
                    label: g.label.clone(),
                    expected: g.arity,
                    got: op.qubits.len(),
                });
            }
            for (i, &q) in op.qubits.iter().enumerate() {
                if q >= width {
                    return Err(Error::QubitOutOfRange { index: q, width });
                }
                if op.qubits[..i].contains(&q) {
                    return Err(Error::DuplicateQubit { index: q });
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self, gs: &GateSet) -> Result<CircuitJson> {
        self.validate(gs)?;
        Ok(CircuitJson {
            n: self.n,
            t: self.t,
            gateset: gs.name.clone(),
            ops: self
                .ops
                .iter()
                .map(|op| OpJson {
                    g: gs.gate(op.gate).label.clone(),
                    q: op.qubits.clone(),
                })
                .collect(),
            out: self.output_qubit,
        })
    }
}

/// Wire format: {"n": int, "t": int, "gateset": string,
/// "ops": [{"g": label, "q": [qubits...]}], "out": optional int}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitJson {
    pub n: usize,
    pub t: usize,
    pub gateset: String,
    pub ops: Vec<OpJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpJson {
    pub g: String,
    pub q: Vec<usize>,
}

impl CircuitJson {
    /// Resolve the named gate set and build the validated circuit.
    pub fn resolve(&self) -> Result<(GateSet, QuantumCircuit)> {
        let gs = gate_set_by_name(&self.gateset)?;
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            ops.push(Op {
                gate: gs.index_of(&op.g)?,
                qubits: op.q.clone(),
            });
        }
        let circuit = QuantumCircuit {
            n: self.n,
            t: self.t,
            ops,
            output_qubit: self.out,
        };
        circuit.validate(&gs)?;
        Ok((gs, circuit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::gate_set_g0;

    #[test]
    fn json_round_trip_matches_schema() {
        let gs = gate_set_g0();
        let c = QuantumCircuit {
            n: 2,
            t: 1,
            ops: vec![
                Op {
                    gate: gs.index_of("toffoli").unwrap(),
                    qubits: vec![0, 1, 2],
                },
                Op {
                    gate: gs.index_of("cnot").unwrap(),
                    qubits: vec![2, 0],
                },
            ],
            output_qubit: None,
        };
        let j = c.to_json(&gs).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(
            text,
            r#"{"n":2,"t":1,"gateset":"g0","ops":[{"g":"toffoli","q":[0,1,2]},{"g":"cnot","q":[2,0]}]}"#
        );
        let back: CircuitJson = serde_json::from_str(&text).unwrap();
        let (_, c2) = back.resolve().unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn validate_rejects_bad_operands() {
        let gs = gate_set_g0();
        let dup = QuantumCircuit {
            n: 2,
            t: 0,
            ops: vec![Op {
                gate: gs.index_of("cnot").unwrap(),
                qubits: vec![1, 1],
            }],
            output_qubit: None,
        };
        assert!(matches!(
            dup.validate(&gs),
            Err(Error::DuplicateQubit { .. })
        ));

        let oor = QuantumCircuit {
            n: 1,
            t: 0,
            ops: vec![Op {
                gate: gs.index_of("x").unwrap(),
                qubits: vec![3],
            }],
            output_qubit: None,
        };
        assert!(matches!(
            oor.validate(&gs),
            Err(Error::QubitOutOfRange { .. })
        ));
    }
}
