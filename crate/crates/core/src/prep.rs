//! Exact preparation of a target pure state from |0...0> by a cascade of
//! single-qubit rotations: one multiplexed Ry per qubit level fixes the
//! amplitude magnitudes, then one diagonal gate injects the phases.
//!
//! The construction returns its own gate set, since the rotation angles
//! depend on the target state. Gate arity caps the reach at 3 qubits: the
//! level-q multiplexer conditions on the q preceding qubits.

use crate::circuit::{Op, QuantumCircuit};
use crate::error::{Error, Result};
use crate::gates::{GateDef, GateSet, MAX_ARITY};
use crate::linalg::{CMat, C64};

fn is_identity(m: &CMat, tol: f64) -> bool {
    m.max_abs_diff(&CMat::identity(m.dim)) < tol
}

/// Multiplexed Ry on a (controls+1)-qubit gate: block-diagonal with one
/// Ry(theta_p) block per control prefix p, target in the least significant
/// local position.
fn multiplexed_ry(angles: &[f64]) -> CMat {
    let blocks = angles.len();
    let mut m = CMat::zeros(2 * blocks);
    for (p, &theta) in angles.iter().enumerate() {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        m.set(2 * p, 2 * p, C64::new(c, 0.0));
        m.set(2 * p, 2 * p + 1, C64::new(-s, 0.0));
        m.set(2 * p + 1, 2 * p, C64::new(s, 0.0));
        m.set(2 * p + 1, 2 * p + 1, C64::new(c, 0.0));
    }
    m
}

/// Circuit preparing `target` from |0...0>, together with the gate set it
/// is expressed over. The state is reproduced exactly up to floating-point
/// rounding. Targets already equal to |0...0> yield an empty circuit.
pub fn state_prep_circuit(target: &[C64]) -> Result<(GateSet, QuantumCircuit)> {
    let dim = target.len();
    if dim == 0 || dim & (dim - 1) != 0 {
        return Err(Error::DimensionMismatch {
            context: "state preparation target length",
            expected: dim.next_power_of_two().max(2),
            got: dim,
        });
    }
    let n = dim.trailing_zeros() as usize;
    let norm2: f64 = target.iter().map(|a| a.norm_sqr()).sum();
    if norm2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (norm2.sqrt() - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized {
            deviation: (norm2.sqrt() - 1.0).abs(),
        });
    }
    if n == 0 {
        // A global phase on a zero-qubit register; nothing to prepare.
        return Ok((
            GateSet::new("prep", vec![])?,
            QuantumCircuit::empty(0, 0),
        ));
    }
    if n > MAX_ARITY {
        return Err(Error::ArityTooLarge {
            arity: n,
            max: MAX_ARITY,
        });
    }

    let mut gates = Vec::new();
    let mut ops = Vec::new();

    // Subtree weights: weight(q, p) = sum of |amp|^2 over indices with
    // q-bit prefix p.
    let weight = |q: usize, p: usize| -> f64 {
        let span = dim >> q;
        target[p * span..(p + 1) * span]
            .iter()
            .map(|a| a.norm_sqr())
            .sum()
    };

    for q in 0..n {
        let angles: Vec<f64> = (0..1usize << q)
            .map(|p| {
                let w0 = weight(q + 1, 2 * p);
                let w1 = weight(q + 1, 2 * p + 1);
                if w0 + w1 == 0.0 {
                    0.0
                } else {
                    2.0 * w1.sqrt().atan2(w0.sqrt())
                }
            })
            .collect();
        let m = multiplexed_ry(&angles);
        if is_identity(&m, 1e-12) {
            continue;
        }
        gates.push(GateDef::new(format!("mry{}", q), q + 1, m)?);
        ops.push(Op {
            gate: gates.len() - 1,
            qubits: (0..=q).collect(),
        });
    }

    let mut phase = CMat::zeros(dim);
    for (x, amp) in target.iter().enumerate() {
        let phi = if amp.norm_sqr() > 0.0 { amp.arg() } else { 0.0 };
        phase.set(x, x, C64::new(0.0, phi).exp());
    }
    if !is_identity(&phase, 1e-12) {
        gates.push(GateDef::new("phase", n, phase)?);
        ops.push(Op {
            gate: gates.len() - 1,
            qubits: (0..n).collect(),
        });
    }

    let gs = GateSet::new("prep", gates)?;
    let circuit = QuantumCircuit {
        n,
        t: 0,
        ops,
        output_qubit: None,
    };
    circuit.validate(&gs)?;
    Ok((gs, circuit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::run_on_input;
    use rand::{Rng, SeedableRng};

    fn l2_error(a: &[C64], b: &[C64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn basis_zero_state_needs_no_gates() {
        let v = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let (_, c) = state_prep_circuit(&v).unwrap();
        assert_eq!(c.size(), 0);
    }

    #[test]
    fn plus_state_needs_one_rotation() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = vec![C64::new(h, 0.0), C64::new(h, 0.0)];
        let (gs, c) = state_prep_circuit(&v).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(gs.gate(c.ops[0].gate).label, "mry0");
        let out = run_on_input(&gs, &c, 0);
        assert!(l2_error(&out, &v) < 1e-12);
    }

    #[test]
    fn zero_vector_is_rejected() {
        let v = vec![C64::new(0.0, 0.0); 4];
        assert!(matches!(state_prep_circuit(&v), Err(Error::ZeroVector)));
        let bad = vec![C64::new(0.9, 0.0), C64::new(0.0, 0.0)];
        assert!(matches!(
            state_prep_circuit(&bad),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn random_states_are_reproduced() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for n in 1..=3usize {
            for _ in 0..25 {
                let dim = 1usize << n;
                let mut v: Vec<C64> = (0..dim)
                    .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                for a in &mut v {
                    *a /= norm;
                }
                let (gs, c) = state_prep_circuit(&v).unwrap();
                let out = run_on_input(&gs, &c, 0);
                assert!(
                    l2_error(&out, &v) < 1e-6,
                    "n={} error {}",
                    n,
                    l2_error(&out, &v)
                );
            }
        }
    }

    #[test]
    fn sparse_state_with_dead_branches() {
        // Amplitudes only on |00> and |11>: the level-1 multiplexer has a
        // zero-weight block on one side per branch.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = vec![
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, -h),
        ];
        let (gs, c) = state_prep_circuit(&v).unwrap();
        let out = run_on_input(&gs, &c, 0);
        assert!(l2_error(&out, &v) < 1e-12);
    }

    #[test]
    fn four_qubits_is_out_of_reach() {
        let mut v = vec![C64::new(0.0, 0.0); 16];
        v[0] = C64::new(1.0, 0.0);
        assert!(matches!(
            state_prep_circuit(&v),
            Err(Error::ArityTooLarge { .. })
        ));
    }
}
