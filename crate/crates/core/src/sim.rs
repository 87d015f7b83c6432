//! Dense statevector simulation and the fidelity/acceptance functionals the
//! oracles score circuits with.
//!
//! State indices put qubit 0 in the most significant bit, so the input
//! |x, 0^t> lives at index x << t.

use rand::Rng;

use crate::circuit::QuantumCircuit;
use crate::gates::GateSet;
use crate::linalg::{inner, CMat, C64};
use crate::objects::PartialTruthTable;

pub fn zero_state(width: usize) -> Vec<C64> {
    basis_state(width, 0)
}

pub fn basis_state(width: usize, index: usize) -> Vec<C64> {
    let dim = 1usize << width;
    assert!(index < dim, "basis index out of range");
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[index] = C64::new(1.0, 0.0);
    amps
}

/// Apply a k-qubit gate matrix to the named operand qubits in place.
/// The first operand is the most significant bit of the gate's local index.
pub fn apply_gate(amps: &mut [C64], width: usize, matrix: &CMat, qubits: &[usize]) {
    let k = qubits.len();
    let sub = 1usize << k;
    debug_assert_eq!(matrix.dim, sub);
    debug_assert_eq!(amps.len(), 1usize << width);

    // Offset of each local basis state inside a block with operand bits 0.
    let mut offsets = [0usize; 8];
    for local in 0..sub {
        let mut off = 0usize;
        for (j, &q) in qubits.iter().enumerate() {
            if (local >> (k - 1 - j)) & 1 == 1 {
                off |= 1usize << (width - 1 - q);
            }
        }
        offsets[local] = off;
    }
    let mask: usize = offsets[sub - 1]
        | qubits
            .iter()
            .map(|&q| 1usize << (width - 1 - q))
            .fold(0, |a, b| a | b);

    let dim = amps.len();
    let mut gathered = [C64::new(0.0, 0.0); 8];
    let mut base = 0usize;
    loop {
        for local in 0..sub {
            gathered[local] = amps[base + offsets[local]];
        }
        for row in 0..sub {
            let mut acc = C64::new(0.0, 0.0);
            for col in 0..sub {
                acc += matrix.at(row, col) * gathered[col];
            }
            amps[base + offsets[row]] = acc;
        }
        base = ((base | mask) + 1) & !mask;
        if base == 0 || base >= dim {
            break;
        }
    }
}

/// Apply every op of the circuit, in order, to the state in place.
pub fn apply_circuit(amps: &mut [C64], gs: &GateSet, c: &QuantumCircuit) {
    let width = c.width();
    for op in &c.ops {
        apply_gate(amps, width, &gs.gate(op.gate).matrix, &op.qubits);
    }
}

/// C |x, 0^t> for the n-bit input x.
pub fn run_on_input(gs: &GateSet, c: &QuantumCircuit, x: usize) -> Vec<C64> {
    let mut amps = basis_state(c.width(), x << c.t);
    apply_circuit(&mut amps, gs, c);
    amps
}

/// Dense unitary of the whole circuit on all n + t qubits.
pub fn circuit_unitary(gs: &GateSet, c: &QuantumCircuit) -> CMat {
    let width = c.width();
    let dim = 1usize << width;
    let mut out = CMat::zeros(dim);
    for col in 0..dim {
        let mut amps = basis_state(width, col);
        apply_circuit(&mut amps, gs, c);
        for row in 0..dim {
            out.set(row, col, amps[row]);
        }
    }
    out
}

/// Probability that measuring `qubit` yields `bit`.
pub fn prob_bit(amps: &[C64], width: usize, qubit: usize, bit: bool) -> f64 {
    let shift = width - 1 - qubit;
    let want = usize::from(bit);
    amps.iter()
        .enumerate()
        .filter(|(idx, _)| (idx >> shift) & 1 == want)
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

pub fn state_fidelity(a: &[C64], b: &[C64]) -> f64 {
    inner(a, b).norm_sqr()
}

/// min over defined rows x of Pr[measuring `out` of C|x,0^t> gives f(x)].
/// An all-star table scores 1 vacuously.
pub fn partial_func_score(
    gs: &GateSet,
    c: &QuantumCircuit,
    f: &PartialTruthTable,
    out: usize,
) -> f64 {
    let mut worst = 1.0f64;
    for (x, b) in f.defined_rows() {
        let amps = run_on_input(gs, c, x);
        worst = worst.min(prob_bit(&amps, c.width(), out, b));
    }
    worst
}

/// ||(<phi| ⊗ I_t) |v>||^2 where phi lives on the first n qubits of the
/// (n+t)-qubit state v: the probability that C|0^{n+t}> collapses onto phi
/// when the ancillas are traced out.
pub fn overlap_on_first_qubits(phi: &[C64], v: &[C64], t: usize) -> f64 {
    let anc = 1usize << t;
    debug_assert_eq!(phi.len() * anc, v.len());
    let mut total = 0.0;
    for j in 0..anc {
        let mut acc = C64::new(0.0, 0.0);
        for (i, p) in phi.iter().enumerate() {
            acc += p.conj() * v[i * anc + j];
        }
        total += acc.norm_sqr();
    }
    total
}

/// Fidelities of C against target ⊗ |0^t> on computational basis inputs
/// (ascending) followed by equal-superposition pair inputs (a < b, lex).
pub fn unitary_check_fidelities(gs: &GateSet, c: &QuantumCircuit, u: &CMat) -> Vec<f64> {
    let dim_n = 1usize << c.n;
    debug_assert_eq!(u.dim, dim_n);
    let cols: Vec<Vec<C64>> = (0..dim_n).map(|i| run_on_input(gs, c, i)).collect();
    unitary_check_fidelities_from_columns(u, &cols, c.t)
}

/// Same checks computed from precomputed columns: cols[i] = C |i, 0^t>.
/// Pair-input states follow from linearity of C.
pub fn unitary_check_fidelities_from_columns(u: &CMat, cols: &[Vec<C64>], t: usize) -> Vec<f64> {
    let dim_n = u.dim;
    debug_assert_eq!(cols.len(), dim_n);
    let mut fids = Vec::with_capacity(dim_n + dim_n * (dim_n - 1) / 2);
    for (i, col) in cols.iter().enumerate() {
        fids.push(target_column_overlap(u, &[(i, C64::new(1.0, 0.0))], col, t));
    }
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut combined = vec![C64::new(0.0, 0.0); cols[0].len()];
    for a in 0..dim_n {
        for b in (a + 1)..dim_n {
            for (k, amp) in combined.iter_mut().enumerate() {
                *amp = (cols[a][k] + cols[b][k]) * h;
            }
            fids.push(target_column_overlap(u, &[(a, h), (b, h)], &combined, t));
        }
    }
    fids
}

/// |<(U in) ⊗ 0^t | w>|^2 for the sparse input Σ c_i |i>.
pub fn target_column_overlap(u: &CMat, input: &[(usize, C64)], w: &[C64], t: usize) -> f64 {
    let anc = 1usize << t;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..u.dim {
        let mut target_j = C64::new(0.0, 0.0);
        for &(i, coef) in input {
            target_j += u.at(j, i) * coef;
        }
        acc += target_j.conj() * w[j * anc];
    }
    acc.norm_sqr()
}

/// Worst-case fidelity certificate from basis and pair checks: if every
/// check has fidelity at least 1 - delta, then for every input state the
/// fidelity is at least 1 - 10 * 2^(n/2) * delta^(1/4), clamped to [0, 1].
pub fn certified_min_fidelity(n: usize, check_fidelities: &[f64]) -> f64 {
    let delta = check_fidelities
        .iter()
        .fold(0.0f64, |acc, &f| acc.max(1.0 - f));
    certified_bound_from_delta(n, delta)
}

/// The same certified bound expressed directly in terms of the largest
/// check deficiency delta = max(1 - fidelity); useful when checks are
/// scored incrementally.
pub fn certified_bound_from_delta(n: usize, delta: f64) -> f64 {
    let bound = 1.0 - 10.0 * 2f64.powf(n as f64 / 2.0) * delta.max(0.0).powf(0.25);
    bound.clamp(0.0, 1.0)
}

/// One swap-test sample between phi and psi: returns the measured control
/// bit, which is 1 with probability 1/2 - |<phi|psi>|^2 / 2.
pub fn swap_test_sample<R: Rng + ?Sized>(rng: &mut R, phi: &[C64], psi: &[C64]) -> bool {
    let p_one = 0.5 - 0.5 * state_fidelity(phi, psi);
    rng.gen_bool(p_one.clamp(0.0, 1.0))
}

/// Sample a full computational-basis measurement of the state.
pub fn sample_index<R: Rng + ?Sized>(rng: &mut R, amps: &[C64]) -> usize {
    let r: f64 = rng.gen();
    let mut acc = 0.0;
    for (idx, a) in amps.iter().enumerate() {
        acc += a.norm_sqr();
        if r < acc {
            return idx;
        }
    }
    amps.len() - 1
}
