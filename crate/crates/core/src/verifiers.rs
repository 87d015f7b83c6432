//! Statistical certificate-checking protocols: sampling verifiers that
//! accept or reject a claimed witness circuit for a Boolean function, a
//! quantum state, or a unitary, recording per-check sample counts,
//! thresholds, and the seed in a reproducible report.
//!
//! Measurement outcomes are Bernoulli draws from exactly computed
//! probabilities; no measurement circuits are materialized. Every check
//! draws from its own RNG stream derived from (seed, check index), so a
//! report is identical no matter how the sampling loops are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::QuantumCircuit;
use crate::error::{Error, Result};
use crate::exec::{map_blocks, ExecMode};
use crate::gates::GateSet;
use crate::linalg::C64;
use crate::objects::{PureState, TruthTable, UnitaryMatrix};
use crate::sim::{
    apply_circuit, apply_gate, overlap_on_first_qubits, prob_bit, run_on_input, zero_state,
};

/// Verdict of a protocol run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

/// Sample statistics for one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub samples: u64,
    pub negatives: u64,
    /// Rejection threshold on the negative-sample ratio.
    pub threshold: f64,
}

impl CheckReport {
    /// Fraction of samples that came out negative.
    pub fn negative_ratio(&self) -> f64 {
        self.negatives as f64 / self.samples as f64
    }

    /// Whether this check alone forces rejection: negative ratio >= threshold.
    pub fn fires(&self) -> bool {
        self.negatives as f64 >= self.threshold * self.samples as f64
    }
}

/// Full transcript of one verifier run. The verdict is `Reject` exactly
/// when some check fires, and `threshold_mode` states whether thresholds
/// came straight from the soundness formula or were raised to a cap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifierReport {
    pub checks: Vec<CheckReport>,
    pub verdict: Verdict,
    pub seed: u64,
    /// "exact" or "capped(<value>)".
    pub threshold_mode: String,
}

impl VerifierReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }

    /// The checks whose names start with the given prefix.
    pub fn checks_named<'a>(
        &'a self,
        prefix: &'a str,
    ) -> impl Iterator<Item = &'a CheckReport> + 'a {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }
}

fn verdict_from(checks: &[CheckReport]) -> Verdict {
    if checks.iter().any(CheckReport::fires) {
        Verdict::Reject
    } else {
        Verdict::Accept
    }
}

/// Number of negative outcomes among `samples` Bernoulli draws at negative
/// probability `p_negative`, drawn from the RNG stream `(seed, stream)`.
/// Each check of a verifier run uses its check index as the stream, which
/// pins its count regardless of what the other checks do.
pub fn sample_check_negatives(seed: u64, stream: u64, samples: u64, p_negative: f64) -> u64 {
    let p = p_negative.clamp(0.0, 1.0);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut negatives = 0;
    for _ in 0..samples {
        if rng.gen::<f64>() < p {
            negatives += 1;
        }
    }
    negatives
}

/// One check laid out before any sampling happens.
struct PlannedCheck {
    name: String,
    samples: u64,
    p_negative: f64,
    threshold: f64,
}

fn run_checks(seed: u64, threshold_mode: String, planned: Vec<PlannedCheck>) -> VerifierReport {
    let checks: Vec<CheckReport> = map_blocks(ExecMode::default(), planned.len(), |k| {
        let plan = &planned[k];
        CheckReport {
            name: plan.name.clone(),
            samples: plan.samples,
            negatives: sample_check_negatives(seed, k as u64, plan.samples, plan.p_negative),
            threshold: plan.threshold,
        }
    });
    let verdict = verdict_from(&checks);
    VerifierReport {
        checks,
        verdict,
        seed,
        threshold_mode,
    }
}

fn validate_protocol_thresholds(alpha: f64, beta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) || beta >= alpha {
        return Err(Error::InvalidThresholds(format!(
            "need 0 <= beta < alpha <= 1, got alpha={alpha}, beta={beta}"
        )));
    }
    Ok(())
}

fn validate_samples(label: &str, count: u64) -> Result<()> {
    if count == 0 {
        return Err(Error::Unsupported(format!(
            "{label} must be at least 1 sample"
        )));
    }
    Ok(())
}

/// Success probabilities of every round-trip check of the unitary
/// protocol, in report order: for each basis state i, the probability
/// that measuring the register of (U† ⊗ I_t) C |i, 0^t> returns i, then
/// for each a < b the probability that the round trip of
/// (|a> + |b>)/√2 ⊗ |0^t> projects back onto (|a> + |b>)/√2 on the
/// register. Ancilla qubits are left free in both stages — the protocol
/// only ever looks at the register, which is exactly why a witness can
/// hide basis-dependent junk there and why the pair stage is needed.
pub fn roundtrip_check_probabilities(
    gs: &GateSet,
    u: &UnitaryMatrix,
    witness: &QuantumCircuit,
) -> Vec<f64> {
    let dim = u.mat.dim;
    let width = witness.width();
    let t = witness.t;
    let register: Vec<usize> = (0..witness.n).collect();
    let udag = u.mat.dagger();
    let cols: Vec<Vec<C64>> = (0..dim)
        .map(|i| {
            let mut amps = run_on_input(gs, witness, i);
            apply_gate(&mut amps, width, &udag, &register);
            amps
        })
        .collect();
    let anc = 1usize << t;
    let mut probs = Vec::with_capacity(dim + dim * (dim - 1) / 2);
    for (i, col) in cols.iter().enumerate() {
        let p: f64 = (0..anc).map(|y| col[(i << t) | y].norm_sqr()).sum();
        probs.push(p.min(1.0));
    }
    let half = C64::new(0.5, 0.0);
    for a in 0..dim {
        for b in (a + 1)..dim {
            // By linearity the round trip of (|a> + |b>)/√2 ⊗ |0^t> is
            // (cols[a] + cols[b])/√2; project each ancilla slice onto the
            // same register superposition.
            let p: f64 = (0..anc)
                .map(|y| {
                    let comp = (cols[a][(a << t) | y]
                        + cols[b][(a << t) | y]
                        + cols[a][(b << t) | y]
                        + cols[b][(b << t) | y])
                        * half;
                    comp.norm_sqr()
                })
                .sum();
            probs.push(p.min(1.0));
        }
    }
    probs
}

/// Function verifier: samples the witness's output bit `trials_per_x`
/// times on every input x and accepts when every input agrees with f(x)
/// on more than an (alpha+beta)/2 fraction of trials — equivalently,
/// rejects exactly when some per-input negative ratio reaches
/// 1 - (alpha+beta)/2 (ties go to rejection, keeping the report's
/// fire-iff-reject rule exact).
pub fn verify_mqcsp(
    gs: &GateSet,
    table: &TruthTable,
    witness: &QuantumCircuit,
    alpha: f64,
    beta: f64,
    trials_per_x: u64,
    seed: u64,
) -> Result<VerifierReport> {
    validate_protocol_thresholds(alpha, beta)?;
    validate_samples("trials_per_x", trials_per_x)?;
    witness.validate(gs)?;
    if witness.n != table.n {
        return Err(Error::Unsupported(format!(
            "witness takes {} input qubits but the table has {} inputs",
            witness.n, table.n
        )));
    }
    let threshold = 1.0 - (alpha + beta) / 2.0;
    let out = witness.output_qubit();
    let planned = map_blocks(ExecMode::default(), 1usize << table.n, |x| {
        let amps = run_on_input(gs, witness, x);
        let p_correct = prob_bit(&amps, witness.width(), out, table.value(x));
        PlannedCheck {
            name: format!("x={x}"),
            samples: trials_per_x,
            p_negative: (1.0 - p_correct).clamp(0.0, 1.0),
            threshold,
        }
    });
    Ok(run_checks(seed, "exact".to_string(), planned))
}

/// State verifier: runs `ell` swap tests between psi and the state the
/// witness prepares from |0...0>, counting 1-outcomes as negatives.
/// Accepts when the 0-outcome count clears (1/2 + (alpha+beta)/4) * ell;
/// a bare (alpha+beta)/2 zero-count cut could sit below the swap test's
/// 1/2 floor, so the averaged cut is the one completeness needs.
pub fn verify_smcsp(
    gs: &GateSet,
    psi: &PureState,
    witness: &QuantumCircuit,
    alpha: f64,
    beta: f64,
    ell: u64,
    seed: u64,
) -> Result<VerifierReport> {
    validate_protocol_thresholds(alpha, beta)?;
    validate_samples("ell", ell)?;
    witness.validate(gs)?;
    if witness.n != psi.n {
        return Err(Error::Unsupported(format!(
            "witness prepares {} qubits but the target state has {}",
            witness.n, psi.n
        )));
    }
    let mut state = zero_state(witness.width());
    apply_circuit(&mut state, gs, witness);
    let fidelity = overlap_on_first_qubits(&psi.amps, &state, witness.t);
    let p_zero = 0.5 + 0.5 * fidelity;
    let planned = vec![PlannedCheck {
        name: "swap test".to_string(),
        samples: ell,
        p_negative: (1.0 - p_zero).clamp(0.0, 1.0),
        threshold: 0.5 - (alpha + beta) / 4.0,
    }];
    Ok(run_checks(seed, "exact".to_string(), planned))
}

/// Unitary verifier with two stages: per-basis-state round trips (apply
/// the witness, undo with U†, measure, expect the input back) and
/// per-pair coherency checks that project a (|i>+|j>)/√2 round trip back
/// onto the same superposition, catching witnesses that are correct only
/// up to basis-state-dependent phases. The negative-ratio threshold is
/// 2^(-2n-18)(1-beta)^4; at desk scale that is far below 1/samples, so an
/// optional cap raises it to a usable value and the report records which
/// mode ran.
#[allow(clippy::too_many_arguments)]
pub fn verify_umcsp(
    gs: &GateSet,
    u: &UnitaryMatrix,
    witness: &QuantumCircuit,
    beta: f64,
    poly1: u64,
    poly2: u64,
    threshold_cap: Option<f64>,
    seed: u64,
) -> Result<VerifierReport> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidThresholds(format!(
            "need 0 <= beta < 1, got beta={beta}"
        )));
    }
    validate_samples("poly1", poly1)?;
    validate_samples("poly2", poly2)?;
    witness.validate(gs)?;
    if witness.n != u.n {
        return Err(Error::Unsupported(format!(
            "witness acts on {} register qubits but the unitary has {}",
            witness.n, u.n
        )));
    }
    if let Some(cap) = threshold_cap {
        if !(cap > 0.0 && cap <= 1.0) {
            return Err(Error::InvalidThresholds(format!(
                "threshold cap must lie in (0, 1], got {cap}"
            )));
        }
    }
    let exact = (1.0 - beta).powi(4) * 2f64.powi(-(2 * u.n as i32) - 18);
    let (threshold, mode) = match threshold_cap {
        Some(cap) if cap > exact => (cap, format!("capped({cap})")),
        _ => (exact, "exact".to_string()),
    };
    let dim = u.mat.dim;
    let fidelities = roundtrip_check_probabilities(gs, u, witness);
    let mut planned = Vec::with_capacity(fidelities.len());
    for (i, &fid) in fidelities.iter().take(dim).enumerate() {
        planned.push(PlannedCheck {
            name: format!("basis i={i}"),
            samples: poly1,
            p_negative: (1.0 - fid).clamp(0.0, 1.0),
            threshold,
        });
    }
    let mut k = dim;
    for a in 0..dim {
        for b in (a + 1)..dim {
            planned.push(PlannedCheck {
                name: format!("pair a={a} b={b}"),
                samples: poly2,
                p_negative: (1.0 - fidelities[k]).clamp(0.0, 1.0),
                threshold,
            });
            k += 1;
        }
    }
    Ok(run_checks(seed, mode, planned))
}

/// The ancilla state the witness leaves behind when it round-trips basis
/// state `a`: project (U† ⊗ I_t) C |a, 0^t> onto |a> on the first n
/// qubits and return the projection probability together with the
/// normalized residue on the t ancilla qubits. When the basis and pair
/// checks all pass with deficiency at most delta, residues of different
/// basis states are within 4·delta^(1/4) of each other in l2 norm — which
/// is what makes the pair checks sufficient.
pub fn ancilla_residue(
    gs: &GateSet,
    u: &UnitaryMatrix,
    witness: &QuantumCircuit,
    a: usize,
) -> Result<(f64, Vec<C64>)> {
    witness.validate(gs)?;
    if witness.n != u.n {
        return Err(Error::Unsupported(format!(
            "witness acts on {} register qubits but the unitary has {}",
            witness.n, u.n
        )));
    }
    if a >= u.mat.dim {
        return Err(Error::Unsupported(format!(
            "basis index {a} out of range for {} qubits",
            u.n
        )));
    }
    let width = witness.width();
    let register: Vec<usize> = (0..witness.n).collect();
    let mut amps = run_on_input(gs, witness, a);
    apply_gate(&mut amps, width, &u.mat.dagger(), &register);
    let anc = 1usize << witness.t;
    let mut residue: Vec<C64> = (0..anc).map(|y| amps[(a << witness.t) | y]).collect();
    let weight: f64 = residue.iter().map(|c| c.norm_sqr()).sum();
    if weight <= 0.0 {
        return Err(Error::Unsupported(
            "round trip leaves zero weight on the input basis state".to_string(),
        ));
    }
    let norm = weight.sqrt();
    for c in &mut residue {
        *c /= norm;
    }
    Ok((weight, residue))
}
