//! Reductions between the compilation problems.
//!
//! Three families live here:
//!
//! * **Search-to-decision drivers** ([`s2d_umcsp`], [`s2d_smcsp`]): given
//!   only a threshold decision oracle, recover an explicit witness circuit
//!   by peeling one gate per round.  Round `i` asks, for each candidate
//!   gate `h` in canonical placement order, whether `h^dag` times the
//!   current target is still compilable in the remaining budget at a
//!   slightly relaxed threshold; the first accepted gate becomes the
//!   *last* gate of the witness.  Each round relaxes the fidelity floor by
//!   a step `delta = 2^(-2*c3*n)`, so after `s` rounds the recovered
//!   circuit is certified to fidelity at least `1 - eps - s*delta`, which
//!   stays above `1 - eps - 2^(-c3*n)` whenever `s <= 2^(c3*n)`.
//! * **Boolean-to-unitary embedding** ([`build_u_f`], [`mqcsp_via_umcsp`]):
//!   a Boolean function is lifted to the permutation that XORs its value
//!   into a trailing oracle register, and the function's gate cost is then
//!   bracketed by the lifted unitary's cost (compute/copy/uncompute gives
//!   the lower arm, and reading the oracle register directly gives the
//!   upper arm).
//! * **State self-reduction** ([`self_reduce_smcsp`]): an n-qubit state's
//!   cost is bracketed by the costs of its two top-qubit branch states on
//!   n-1 qubits, with a measured controlled-compilation overhead on the
//!   upper arm and an amplification-style loss on the lower arm.
//!
//! The drivers are single-threaded; any parallelism lives inside the
//! oracle implementations they query.  All drivers work on ancilla-free
//! targets: peeling a gate presumes the scored register and the gate act
//! on the same wires, so oracle wrappers reject workspace qubits.

use serde::{Deserialize, Serialize};

use crate::circuit::{Op, QuantumCircuit};
use crate::error::{Error, Result};
use crate::gates::GateSet;
use crate::linalg::{C64, CMat};
use crate::objects::{PureState, TruthTable, UnitaryMatrix};
use crate::oracles::scan::{Placement, placement_list};
use crate::oracles::{
    OracleOptions, PromiseKind, PromiseThresholds, VerdictKind, decide_smcsp, decide_umcsp,
    min_size_state, min_size_unitary,
};
use crate::sim::apply_gate;

/// Integer bracket `[lo, hi]` on a quantity, with human-readable formulas
/// recording how each arm was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: usize,
    pub hi: usize,
    pub lo_formula: String,
    pub hi_formula: String,
}

/// One decision-oracle query made by a reduction driver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCall {
    pub query: String,
    pub verdict: VerdictKind,
}

/// One accepted peeling step: at iteration `i` the driver fixed `gate` as
/// the i-th gate counted from the *end* of the witness circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub iteration: usize,
    pub gate: String,
}

/// Audit trail of a reduction run: every oracle query with its verdict,
/// and every accepted gate in peel order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub oracle_calls: Vec<OracleCall>,
    pub steps: Vec<ReductionStep>,
}

/// Threshold decision oracle the search-to-decision drivers query.
///
/// Implementations must answer at arbitrary `(alpha, beta)` threshold
/// pairs and expose the gate set candidates are drawn from plus the
/// largest size bound they are willing to decide.
pub trait DecisionOracle {
    fn umcsp(&self, u: &UnitaryMatrix, s: usize, alpha: f64, beta: f64) -> Result<VerdictKind>;
    fn smcsp(&self, psi: &PureState, s: usize, alpha: f64, beta: f64) -> Result<VerdictKind>;
    fn gate_set(&self) -> &GateSet;
    fn size_cap(&self) -> usize;
}

/// Decision oracle backed by the exhaustive scans, on ancilla-free
/// registers.
pub struct ExhaustiveDecisionOracle {
    gs: GateSet,
    s_cap: usize,
    opts: OracleOptions,
}

impl ExhaustiveDecisionOracle {
    /// `ancillas` must be zero: a peeled gate has to act on exactly the
    /// wires the oracle scores, and workspace qubits break that identity
    /// (the peel target `h^dag U` is only defined on the target register).
    pub fn new(gs: GateSet, ancillas: usize, s_cap: usize, opts: OracleOptions) -> Result<Self> {
        if ancillas != 0 {
            return Err(Error::Unsupported(
                "gate peeling needs an ancilla-free register (workspace qubits would let the \
                 oracle accept circuits whose gates act outside the peel target)"
                    .into(),
            ));
        }
        Ok(ExhaustiveDecisionOracle { gs, s_cap, opts })
    }
}

impl DecisionOracle for ExhaustiveDecisionOracle {
    fn umcsp(&self, u: &UnitaryMatrix, s: usize, alpha: f64, beta: f64) -> Result<VerdictKind> {
        let th = PromiseThresholds::new(PromiseKind::Umcsp, alpha, beta)?;
        Ok(decide_umcsp(&self.gs, u, s, 0, &th, &self.opts)?.verdict)
    }

    fn smcsp(&self, psi: &PureState, s: usize, alpha: f64, beta: f64) -> Result<VerdictKind> {
        let th = PromiseThresholds::new(PromiseKind::Smcsp, alpha, beta)?;
        Ok(decide_smcsp(&self.gs, psi, s, 0, &th, &self.opts)?.verdict)
    }

    fn gate_set(&self) -> &GateSet {
        &self.gs
    }

    fn size_cap(&self) -> usize {
        self.s_cap
    }
}

fn validate_reduction_params(epsilon: f64, c3: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) || !epsilon.is_finite() {
        return Err(Error::InvalidThresholds(format!(
            "reduction precision epsilon {epsilon} outside (0, 1)"
        )));
    }
    if !(c3 > 0.0) || !c3.is_finite() {
        return Err(Error::InvalidThresholds(format!(
            "threshold-step exponent c3 {c3} must be positive"
        )));
    }
    Ok(())
}

fn gate_descriptor(gs: &GateSet, p: &Placement) -> String {
    format!("{}{:?}", gs.gate(p.gate).label, p.qubits)
}

/// `g^dag * u`, computed by applying the dagger of the local gate to every
/// column of `u`.
fn dagger_times_unitary(u: &CMat, width: usize, gate_dagger: &CMat, qubits: &[usize]) -> CMat {
    let dim = u.dim;
    let mut out = CMat::zeros(dim);
    let mut col = vec![C64::new(0.0, 0.0); dim];
    for j in 0..dim {
        for (k, slot) in col.iter_mut().enumerate() {
            *slot = u.at(k, j);
        }
        apply_gate(&mut col, width, gate_dagger, qubits);
        for (k, amp) in col.iter().enumerate() {
            out.set(k, j, *amp);
        }
    }
    out
}

/// Threshold pair for peel round `i` (round 0 is the size search): the
/// fidelity floor relaxes by one `delta` step per accepted gate.
fn round_thresholds(epsilon: f64, delta: f64, i: usize) -> Result<(f64, f64)> {
    let alpha = 1.0 - (epsilon + i as f64 * delta);
    let beta = alpha - delta;
    if beta <= 0.0 {
        return Err(Error::InvalidThresholds(format!(
            "threshold floor exhausted at peel round {i}: alpha={alpha:.9}, beta={beta:.9}; \
             lower epsilon, raise c3, or shrink the size cap"
        )));
    }
    Ok((alpha, beta))
}

/// Find the smallest size the oracle accepts, treating non-Yes answers as
/// No so the search only ever errs upward.  `ask(s)` must be monotone in
/// the Yes direction.
fn bisect_min_size(
    cap: usize,
    mut ask: impl FnMut(usize) -> Result<VerdictKind>,
    subject: &str,
    alpha: f64,
) -> Result<usize> {
    if ask(cap)? != VerdictKind::Yes {
        return Err(Error::PromiseViolation {
            query: format!("{subject}: no circuit of size <= {cap} reaches fidelity {alpha:.9}"),
        });
    }
    let (mut lo, mut hi) = (0usize, cap);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ask(mid)? == VerdictKind::Yes {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Recover a witness circuit for a target unitary from a threshold
/// decision oracle alone.
///
/// First the minimum accepted size `s` is found by bisection at thresholds
/// `(1 - eps, 1 - eps - delta)` with `delta = 2^(-2*c3*n)`.  Then `s` peel
/// rounds run; round `i` scans candidate gates in canonical placement
/// order and keeps the first `h` for which the oracle still accepts
/// `h^dag * U_{i-1}` at size `s - i` and thresholds
/// `(1 - eps - i*delta, 1 - eps - (i+1)*delta)`.  Accepted gates are the
/// witness's gates from last to first, so the returned circuit applies
/// them in reverse peel order.  If no candidate answers Yes, the first
/// candidate answering Unpromised is taken (its witness still clears the
/// next round's floor); if none exists the promise was violated.
///
/// On success the witness has size `s <= size_cap` and worst-case
/// expectation fidelity at least `1 - eps - s*delta`, hence at least
/// `1 - eps - 2^(-c3*n)` whenever `s <= 2^(c3*n)`.
pub fn s2d_umcsp(
    u: &UnitaryMatrix,
    epsilon: f64,
    oracle: &dyn DecisionOracle,
    c3: f64,
) -> Result<(QuantumCircuit, ReductionTrace)> {
    validate_reduction_params(epsilon, c3)?;
    let n = u.n;
    let delta = 2f64.powf(-2.0 * c3 * n as f64);
    let gs = oracle.gate_set();
    let cap = oracle.size_cap();
    let mut trace = ReductionTrace::default();

    let (alpha0, beta0) = round_thresholds(epsilon, delta, 0)?;
    let s = {
        let trace = &mut trace;
        bisect_min_size(
            cap,
            |m| {
                let verdict = oracle.umcsp(u, m, alpha0, beta0)?;
                trace.oracle_calls.push(OracleCall {
                    query: format!("bisect unitary size <= {m} at alpha={alpha0:.9}"),
                    verdict,
                });
                Ok(verdict)
            },
            "unitary size search",
            alpha0,
        )?
    };

    let placements = placement_list(gs, n);
    let daggers: Vec<CMat> = gs.gates().iter().map(|g| g.matrix.dagger()).collect();
    let mut current = u.mat.clone();
    let mut peeled: Vec<Placement> = Vec::with_capacity(s);

    for i in 1..=s {
        let (alpha, beta) = round_thresholds(epsilon, delta, i)?;
        let remaining = s - i;
        let mut accepted: Option<(usize, CMat)> = None;
        let mut fallback: Option<(usize, CMat)> = None;
        for (pi, p) in placements.iter().enumerate() {
            let candidate = dagger_times_unitary(&current, n, &daggers[p.gate], &p.qubits);
            let target = UnitaryMatrix::new(n, candidate)?;
            let verdict = oracle.umcsp(&target, remaining, alpha, beta)?;
            trace.oracle_calls.push(OracleCall {
                query: format!(
                    "round {i}: peel {} leaving size <= {remaining} at alpha={alpha:.9}",
                    gate_descriptor(gs, p)
                ),
                verdict,
            });
            match verdict {
                VerdictKind::Yes => {
                    accepted = Some((pi, target.mat));
                    break;
                }
                VerdictKind::Unpromised if fallback.is_none() => {
                    fallback = Some((pi, target.mat));
                }
                _ => {}
            }
        }
        let (pi, next) = accepted.or(fallback).ok_or_else(|| Error::PromiseViolation {
            query: format!("peel round {i}: no gate advances at alpha={alpha:.9}"),
        })?;
        let p = &placements[pi];
        trace.steps.push(ReductionStep {
            iteration: i,
            gate: gate_descriptor(gs, p),
        });
        peeled.push(p.clone());
        current = next;
    }

    let ops = peeled
        .iter()
        .rev()
        .map(|p| Op {
            gate: p.gate,
            qubits: p.qubits.clone(),
        })
        .collect();
    let circuit = QuantumCircuit {
        n,
        t: 0,
        ops,
        output_qubit: None,
    };
    Ok((circuit, trace))
}

/// Recover a preparation circuit for a target state from a threshold
/// decision oracle alone.
///
/// Identical driver shape to [`s2d_umcsp`], except the size search is
/// capped by `s_bound` (the promised preparation budget) as well as the
/// oracle's own cap, and peeling transforms the state: round `i` keeps
/// the first gate `h` for which `h^dag |psi_{i-1}>` is still preparable
/// in `s* - i` gates.  The returned circuit prepares the target from
/// `|0...0>` with squared overlap at least `1 - eps - s*·delta`.
pub fn s2d_smcsp(
    psi: &PureState,
    s_bound: usize,
    epsilon: f64,
    oracle: &dyn DecisionOracle,
    c3: f64,
) -> Result<(QuantumCircuit, ReductionTrace)> {
    validate_reduction_params(epsilon, c3)?;
    let n = psi.n;
    let delta = 2f64.powf(-2.0 * c3 * n as f64);
    let gs = oracle.gate_set();
    let cap = s_bound.min(oracle.size_cap());
    let mut trace = ReductionTrace::default();

    let (alpha0, beta0) = round_thresholds(epsilon, delta, 0)?;
    let s_star = {
        let trace = &mut trace;
        bisect_min_size(
            cap,
            |m| {
                let verdict = oracle.smcsp(psi, m, alpha0, beta0)?;
                trace.oracle_calls.push(OracleCall {
                    query: format!("bisect state size <= {m} at alpha={alpha0:.9}"),
                    verdict,
                });
                Ok(verdict)
            },
            "state size search",
            alpha0,
        )?
    };

    let placements = placement_list(gs, n);
    let daggers: Vec<CMat> = gs.gates().iter().map(|g| g.matrix.dagger()).collect();
    let mut current = psi.amps.clone();
    let mut peeled: Vec<Placement> = Vec::with_capacity(s_star);

    for i in 1..=s_star {
        let (alpha, beta) = round_thresholds(epsilon, delta, i)?;
        let remaining = s_star - i;
        let mut accepted: Option<(usize, Vec<C64>)> = None;
        let mut fallback: Option<(usize, Vec<C64>)> = None;
        for (pi, p) in placements.iter().enumerate() {
            let mut candidate = current.clone();
            apply_gate(&mut candidate, n, &daggers[p.gate], &p.qubits);
            let target = PureState::new(n, candidate)?;
            let verdict = oracle.smcsp(&target, remaining, alpha, beta)?;
            trace.oracle_calls.push(OracleCall {
                query: format!(
                    "round {i}: peel {} leaving size <= {remaining} at alpha={alpha:.9}",
                    gate_descriptor(gs, p)
                ),
                verdict,
            });
            match verdict {
                VerdictKind::Yes => {
                    accepted = Some((pi, target.amps));
                    break;
                }
                VerdictKind::Unpromised if fallback.is_none() => {
                    fallback = Some((pi, target.amps));
                }
                _ => {}
            }
        }
        let (pi, next) = accepted.or(fallback).ok_or_else(|| Error::PromiseViolation {
            query: format!("peel round {i}: no gate advances at alpha={alpha:.9}"),
        })?;
        let p = &placements[pi];
        trace.steps.push(ReductionStep {
            iteration: i,
            gate: gate_descriptor(gs, p),
        });
        peeled.push(p.clone());
        current = next;
    }

    let ops = peeled
        .iter()
        .rev()
        .map(|p| Op {
            gate: p.gate,
            qubits: p.qubits.clone(),
        })
        .collect();
    let circuit = QuantumCircuit {
        n,
        t: 0,
        ops,
        output_qubit: None,
    };
    Ok((circuit, trace))
}

/// Lift a Boolean function to the permutation unitary that XORs its value
/// into a trailing m-bit oracle register:
/// `|x>|b> -> |x>|b XOR f(x)>`, with `f(x)` zero-extended into the
/// register's least significant bit.  Wires `0..n` carry the input (qubit
/// 0 most significant) and wires `n..n+m` the register.  Only `m <= 2` is
/// supported; wider registers add nothing for single-bit functions.
pub fn build_u_f(f: &TruthTable, m: usize) -> Result<UnitaryMatrix> {
    if m == 0 || m > 2 {
        return Err(Error::Unsupported(format!(
            "oracle register width m={m} outside the supported range 1..=2"
        )));
    }
    let width = f.n + m;
    let dim = 1usize << width;
    let mut mat = CMat::zeros(dim);
    for x in 0..(1usize << f.n) {
        for b in 0..(1usize << m) {
            let col = (x << m) | b;
            let row = (x << m) | (b ^ usize::from(f.value(x)));
            mat.set(row, col, C64::new(1.0, 0.0));
        }
    }
    UnitaryMatrix::new(width, mat)
}

/// Minimum-size oracle over unitaries, used by [`mqcsp_via_umcsp`].
pub trait UnitarySizeOracle {
    fn min_size(&self, u: &UnitaryMatrix) -> Result<usize>;
}

/// Exhaustive minimum-size oracle for ancilla-free unitary compilation at
/// fixed precision.
pub struct ExhaustiveUnitarySizeOracle {
    pub gs: GateSet,
    pub epsilon: f64,
    pub s_cap: usize,
    pub opts: OracleOptions,
}

impl UnitarySizeOracle for ExhaustiveUnitarySizeOracle {
    fn min_size(&self, u: &UnitaryMatrix) -> Result<usize> {
        min_size_unitary(&self.gs, u, self.epsilon, 0, self.s_cap, &self.opts)
            .map(|cert| cert.min_size)
    }
}

/// Bracket a Boolean function's gate cost by the gate cost of its oracle
/// unitary (register width m = 1).
///
/// With `s` the minimum size of the lifted unitary: a function circuit of
/// size `c` yields a unitary circuit of size at most `2c + m`
/// (compute, copy into the register, uncompute), so
/// `c >= ceil(s/2) - m`; and the unitary circuit itself computes the
/// function onto the register wire, so `c <= s`.  The function side reads
/// its output on whichever wire carries it (the register wire), with the
/// m register qubits as its only workspace.
pub fn mqcsp_via_umcsp(f: &TruthTable, oracle: &dyn UnitarySizeOracle) -> Result<Bracket> {
    let m = 1usize;
    let u = build_u_f(f, m)?;
    let s = oracle.min_size(&u)?;
    let lo = s.div_ceil(2).saturating_sub(m);
    Ok(Bracket {
        lo,
        hi: s,
        lo_formula: format!("max(0, ceil(s/2) - m) with s={s}, m={m}"),
        hi_formula: format!("s={s}, the oracle unitary's minimum size"),
    })
}

/// Minimum-size oracle over states at caller-chosen precision, used by
/// [`self_reduce_smcsp`] on the (n-1)-qubit branch states.
pub trait StateSizeOracle {
    fn min_size(&self, psi: &PureState, epsilon: f64) -> Result<usize>;
}

/// Exhaustive minimum-size oracle for ancilla-free state preparation.
pub struct ExhaustiveStateSizeOracle {
    pub gs: GateSet,
    pub s_cap: usize,
    pub opts: OracleOptions,
}

impl StateSizeOracle for ExhaustiveStateSizeOracle {
    fn min_size(&self, psi: &PureState, epsilon: f64) -> Result<usize> {
        min_size_state(&self.gs, psi, epsilon, 0, self.s_cap, &self.opts).map(|cert| cert.min_size)
    }
}

/// Measured constants the state self-reduction's bracket arms depend on.
///
/// `controlled_overhead` is the worst-case gate count for compiling one
/// rotation-or-CNOT gate into its singly-controlled form over the same
/// rotation gate set (measured once against the default grid and stored
/// here); `peel_slack` absorbs the seed rotation and boundary gates the
/// lower arm cannot attribute to either branch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelfReductionConfig {
    pub controlled_overhead: usize,
    pub peel_slack: usize,
}

impl Default for SelfReductionConfig {
    fn default() -> Self {
        SelfReductionConfig {
            controlled_overhead: 17,
            peel_slack: 2,
        }
    }
}

/// Bracket an n-qubit state's preparation cost by (n-1)-qubit subproblems
/// on its top-qubit branches.
///
/// Writing `psi = c0 |0>|psi_0> + c1 |1>|psi_1>` (qubit 0 is the most
/// significant bit), the driver computes `|c_i|^2` exactly from the
/// amplitudes and splits:
///
/// * **Dominant branch** (`|c_i|^2 < eps/2` for one side): preparing the
///   other branch alone is enough, and the bracket is
///   `[CC(psi_major, 4*eps), CC(psi_major, eps/4)]`.
/// * **Balanced branches**: the upper arm prepares a seed rotation and
///   both branches under control, costing
///   `k*(CC(psi_0, eps) + CC(psi_1, eps)) + 3` with `k` the measured
///   controlled-compilation overhead; the lower arm runs the preparation
///   `k* = ceil(4/eps)` times to amplify one branch to precision
///   `eps' = min(1, (1 - eps/4)^k* + eps)`, giving
///   `max_i CC(psi_i, eps') / k* - h` (floored at zero).
///
/// All three constants (`k`, `k*`, `h`) are reported in the bracket's
/// formula strings.
pub fn self_reduce_smcsp(
    psi: &PureState,
    epsilon: f64,
    sub: &dyn StateSizeOracle,
    cfg: &SelfReductionConfig,
) -> Result<Bracket> {
    if psi.n < 2 {
        return Err(Error::Unsupported(
            "state self-reduction needs at least two qubits to split a branch off".into(),
        ));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) || !epsilon.is_finite() {
        return Err(Error::InvalidThresholds(format!(
            "self-reduction precision epsilon {epsilon} outside (0, 1)"
        )));
    }
    let half = psi.amps.len() / 2;
    let weight0: f64 = psi.amps[..half].iter().map(|a| a.norm_sqr()).sum();
    let weight1: f64 = psi.amps[half..].iter().map(|a| a.norm_sqr()).sum();
    let branch = |amps: &[C64], weight: f64| -> Result<PureState> {
        let inv = 1.0 / weight.sqrt();
        PureState::new(psi.n - 1, amps.iter().map(|a| a * inv).collect())
    };

    let minor = if weight1 < epsilon / 2.0 {
        Some((0usize, weight1))
    } else if weight0 < epsilon / 2.0 {
        Some((1usize, weight1))
    } else {
        None
    };

    if let Some((major, _)) = minor {
        let (slice, weight) = if major == 0 {
            (&psi.amps[..half], weight0)
        } else {
            (&psi.amps[half..], weight1)
        };
        let phi = branch(slice, weight)?;
        let eps_loose = 4.0 * epsilon;
        let eps_tight = epsilon / 4.0;
        let lo = if eps_loose >= 1.0 {
            0
        } else {
            sub.min_size(&phi, eps_loose)?
        };
        let hi = sub.min_size(&phi, eps_tight)?;
        return Ok(Bracket {
            lo,
            hi,
            lo_formula: format!("CC(psi_{major}, 4*eps) at 4*eps={eps_loose:.6}"),
            hi_formula: format!("CC(psi_{major}, eps/4) at eps/4={eps_tight:.6}"),
        });
    }

    let phi0 = branch(&psi.amps[..half], weight0)?;
    let phi1 = branch(&psi.amps[half..], weight1)?;
    let s0 = sub.min_size(&phi0, epsilon)?;
    let s1 = sub.min_size(&phi1, epsilon)?;
    let k = cfg.controlled_overhead;
    let h = cfg.peel_slack;
    let hi = k * (s0 + s1) + 3;
    let k_star = (4.0 / epsilon).ceil() as usize;
    let eps_prime = ((1.0 - epsilon / 4.0).powi(k_star as i32) + epsilon).min(1.0);
    let lo = if eps_prime >= 1.0 {
        0
    } else {
        let s_loose = sub
            .min_size(&phi0, eps_prime)?
            .max(sub.min_size(&phi1, eps_prime)?);
        (s_loose / k_star).saturating_sub(h)
    };
    Ok(Bracket {
        lo,
        hi,
        lo_formula: format!(
            "max_i CC(psi_i, eps')/k* - h with eps'={eps_prime:.6}, k*={k_star}, h={h}"
        ),
        hi_formula: format!("k*(CC(psi_0, eps) + CC(psi_1, eps)) + 3 with k={k}, CC={s0}+{s1}"),
    })
}
