//! A desk-scale laboratory for quantum minimum circuit size problems.
//!
//! The crate decides, by exact brute-force search over finite gate sets,
//! whether small quantum circuits exist that compute a Boolean function,
//! implement a unitary, or prepare a state to a given fidelity. On top of
//! the oracles sit search-to-decision reductions, interactive verifier
//! simulations, a pseudorandomness distinguisher built from circuit
//! complexity, and a combinatorial equivalence between a family of partial
//! functions and independent sets in bipartite graphs.

pub mod circuit;
pub mod cryptodemo;
pub mod error;
pub mod exec;
pub mod finegrained;
pub mod gates;
pub mod linalg;
pub mod objects;
pub mod oracles;
pub mod reductions;
pub mod prep;
pub mod sim;
pub mod verifiers;

pub use circuit::{CircuitJson, Op, QuantumCircuit};
pub use error::{Error, Result};
pub use exec::ExecMode;
pub use gates::{gate_set_by_name, gate_set_g0, gate_set_grot, GateDef, GateSet};
pub use linalg::{CMat, C64};
pub use cryptodemo::{
    distinguish_by_complexity, exhaustive_cc_census, ggm_eval, local_prg_truth_table,
    run_distinguisher_experiment, ComplexityCensus, DistinguisherParams, DistinguisherResult,
    MqcspOracle, ToyPRG,
};
pub use finegrained::{
    block_permutations, build_gamma, check_permutation_formula, equivalence_experiment,
    gamma_case_audit, gate_set_formula2q, solve_bpis, witness_tree, BipartiteGraph,
    BlockPermutation, EquivalenceReport, GraphOutcome, GraphSample, StarOutcome,
};
pub use objects::{PartialTruthTable, PureState, TruthTable, UnitaryMatrix};
pub use oracles::{
    decide_mqcsp, decide_mqcsp_star, decide_smcsp, decide_umcsp, min_size_function,
    min_size_state, min_size_unitary, ComplexityCertificate, ObjectKind, OracleOptions,
    OracleVerdict, OutputMode, PromiseKind, PromiseThresholds, ScorePath, VerdictKind,
};
pub use verifiers::{
    ancilla_residue, sample_check_negatives, verify_mqcsp, verify_smcsp, verify_umcsp,
    CheckReport, Verdict, VerifierReport,
};
pub use reductions::{
    build_u_f, mqcsp_via_umcsp, s2d_smcsp, s2d_umcsp, self_reduce_smcsp, Bracket, DecisionOracle,
    ExhaustiveDecisionOracle, ExhaustiveStateSizeOracle, ExhaustiveUnitarySizeOracle, OracleCall,
    ReductionStep, ReductionTrace, SelfReductionConfig, StateSizeOracle, UnitarySizeOracle,
};
