//! Problem instances: Boolean functions (total and partial), target
//! unitaries, and target pure states, with their JSON wire formats.
//!
//! Truth tables are written as strings over {0,1} (plus '*' for don't-care
//! rows) indexed by input x read MSB-first, so position 0 holds f(0...0).
//! States are flat complex vectors over state indices with qubit 0 as the
//! most significant bit; unitaries are dense row-major complex matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{C64, CMat};

pub const NORM_TOL: f64 = 1e-9;
pub const UNITARY_TOL: f64 = 1e-9;

/// Total Boolean function on n inputs as a dense truth table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub n: usize,
    /// bits[x] = f(x), x read MSB-first over the n input qubits.
    pub bits: Vec<bool>,
}

impl TruthTable {
    pub fn parse(s: &str) -> Result<TruthTable> {
        let len = s.len();
        if len == 0 || len & (len - 1) != 0 {
            return Err(Error::TableParse(format!(
                "table length {} is not a power of two",
                len
            )));
        }
        let n = len.trailing_zeros() as usize;
        let mut bits = Vec::with_capacity(len);
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::TableParse(format!(
                        "unexpected character {:?} in total truth table",
                        other
                    )))
                }
            }
        }
        Ok(TruthTable { n, bits })
    }

    pub fn to_string_repr(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn value(&self, x: usize) -> bool {
        self.bits[x]
    }
}

/// Partial Boolean function: '*' rows are unconstrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTruthTable {
    pub n: usize,
    /// rows[x] = Some(f(x)) or None for don't-care.
    pub rows: Vec<Option<bool>>,
}

impl PartialTruthTable {
    pub fn parse(s: &str) -> Result<PartialTruthTable> {
        let len = s.len();
        if len == 0 || len & (len - 1) != 0 {
            return Err(Error::TableParse(format!(
                "table length {} is not a power of two",
                len
            )));
        }
        let n = len.trailing_zeros() as usize;
        let mut rows = Vec::with_capacity(len);
        for ch in s.chars() {
            match ch {
                '0' => rows.push(Some(false)),
                '1' => rows.push(Some(true)),
                '*' => rows.push(None),
                other => {
                    return Err(Error::TableParse(format!(
                        "unexpected character {:?} in partial truth table",
                        other
                    )))
                }
            }
        }
        Ok(PartialTruthTable { n, rows })
    }

    pub fn to_string_repr(&self) -> String {
        self.rows
            .iter()
            .map(|r| match r {
                Some(true) => '1',
                Some(false) => '0',
                None => '*',
            })
            .collect()
    }

    pub fn from_total(t: &TruthTable) -> PartialTruthTable {
        PartialTruthTable {
            n: t.n,
            rows: t.bits.iter().map(|&b| Some(b)).collect(),
        }
    }

    pub fn defined_rows(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(x, r)| r.map(|b| (x, b)))
    }

    pub fn is_all_star(&self) -> bool {
        self.rows.iter().all(|r| r.is_none())
    }
}

/// Normalized pure state on n qubits.
#[derive(Debug, Clone)]
pub struct PureState {
    pub n: usize,
    pub amps: Vec<C64>,
}

impl PureState {
    pub fn new(n: usize, amps: Vec<C64>) -> Result<PureState> {
        let dim = 1usize << n;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "pure state amplitude vector".into(),
                expected: dim,
                got: amps.len(),
            });
        }
        let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm2.sqrt() - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(PureState { n, amps })
    }

    pub fn basis(n: usize, index: usize) -> PureState {
        let dim = 1usize << n;
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        PureState { n, amps }
    }
}

/// Target unitary on n qubits, validated to UNITARY_TOL.
#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    pub n: usize,
    pub mat: CMat,
}

impl UnitaryMatrix {
    pub fn new(n: usize, mat: CMat) -> Result<UnitaryMatrix> {
        let dim = 1usize << n;
        if mat.dim != dim {
            return Err(Error::DimensionMismatch {
                context: "unitary matrix".into(),
                expected: dim,
                got: mat.dim,
            });
        }
        let deviation = mat.unitarity_defect();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(UnitaryMatrix { n, mat })
    }
}

/// Wire format for states: {"n": int, "re": [...], "im": [...]}, flat over
/// state indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub n: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl StateJson {
    pub fn to_state(&self) -> Result<PureState> {
        if self.re.len() != self.im.len() {
            return Err(Error::DimensionMismatch {
                context: "state re/im arrays".into(),
                expected: self.re.len(),
                got: self.im.len(),
            });
        }
        let amps = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| C64::new(r, i))
            .collect();
        PureState::new(self.n, amps)
    }

    pub fn from_state(s: &PureState) -> StateJson {
        StateJson {
            n: s.n,
            re: s.amps.iter().map(|a| a.re).collect(),
            im: s.amps.iter().map(|a| a.im).collect(),
        }
    }
}

/// Wire format for unitaries: {"n": int, "re": [[...]], "im": [[...]]},
/// row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitaryJson {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl UnitaryJson {
    pub fn to_unitary(&self) -> Result<UnitaryMatrix> {
        let dim = 1usize << self.n;
        if self.re.len() != dim || self.im.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "unitary row count".into(),
                expected: dim,
                got: self.re.len().min(self.im.len()),
            });
        }
        let mut mat = CMat::zeros(dim);
        for r in 0..dim {
            if self.re[r].len() != dim || self.im[r].len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "unitary row length",
                    expected: dim,
                    got: self.re[r].len().min(self.im[r].len()),
                });
            }
            for c in 0..dim {
                mat.set(r, c, C64::new(self.re[r][c], self.im[r][c]));
            }
        }
        UnitaryMatrix::new(self.n, mat)
    }

    pub fn from_unitary(u: &UnitaryMatrix) -> UnitaryJson {
        let dim = u.mat.dim;
        let mut re = vec![vec![0.0; dim]; dim];
        let mut im = vec![vec![0.0; dim]; dim];
        for r in 0..dim {
            for c in 0..dim {
                let v = u.mat.at(r, c);
                re[r][c] = v.re;
                im[r][c] = v.im;
            }
        }
        UnitaryJson { n: u.n, re, im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parsing_round_trips() {
        let t = TruthTable::parse("0001").unwrap();
        assert_eq!(t.n, 2);
        assert!(!t.value(0b10));
        assert!(t.value(0b11));
        assert_eq!(t.to_string_repr(), "0001");

        let p = PartialTruthTable::parse("01*1").unwrap();
        assert_eq!(p.n, 2);
        assert_eq!(p.rows[2], None);
        assert_eq!(p.to_string_repr(), "01*1");
        assert_eq!(
            p.defined_rows().collect::<Vec<_>>(),
            vec![(0, false), (1, true), (3, true)]
        );

        assert!(TruthTable::parse("011").is_err());
        assert!(TruthTable::parse("01*1").is_err());
        assert!(PartialTruthTable::parse("01x1").is_err());
    }

    #[test]
    fn state_validation_enforces_norm() {
        let ok = PureState::new(
            1,
            vec![
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
            ],
        );
        assert!(ok.is_ok());
        let bad = PureState::new(1, vec![C64::new(0.9, 0.0), C64::new(0.0, 0.0)]);
        assert!(matches!(bad, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn unitary_json_round_trips() {
        let mut m = CMat::identity(2);
        m.set(0, 0, C64::new(0.0, 1.0));
        let u = UnitaryMatrix::new(1, m).unwrap();
        let j = UnitaryJson::from_unitary(&u);
        let text = serde_json::to_string(&j).unwrap();
        let back: UnitaryJson = serde_json::from_str(&text).unwrap();
        let u2 = back.to_unitary().unwrap();
        assert!(u.mat.max_abs_diff(&u2.mat) < 1e-15);

        let bad = UnitaryJson {
            n: 1,
            re: vec![vec![1.0, 1.0], vec![0.0, 1.0]],
            im: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        };
        assert!(matches!(bad.to_unitary(), Err(Error::NotUnitary { .. })));
    }
}
