//! Structured error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enum. Resource limits (dimension cap, enumeration
/// budget) and promise violations get their own variants because the CLI
/// maps them to dedicated exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("state vector is not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("matrix is not unitary: max |(M M^dag - I)_ij| = {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("gate arity {arity} exceeds the supported maximum of {max}")]
    ArityTooLarge { arity: usize, max: usize },

    #[error("unknown gate `{label}` in gate set `{set}`")]
    UnknownGate { label: String, set: String },

    #[error("unknown gate set `{name}`")]
    UnknownGateSet { name: String },

    #[error("qubit index {index} out of range for a register of {width} qubits")]
    QubitOutOfRange { index: usize, width: usize },

    #[error("duplicate qubit operand {index} in a single gate application")]
    DuplicateQubit { index: usize },

    #[error("gate `{label}` acts on {expected} qubits, got {got} operands")]
    WrongOperandCount {
        label: String,
        expected: usize,
        got: usize,
    },

    #[error("register of {qubits} qubits exceeds the dimension cap of 2^{cap_log2} amplitudes")]
    DimensionCapExceeded { qubits: usize, cap_log2: u32 },

    #[error("enumerating {count} circuits exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },

    #[error(
        "no circuit of size <= {s_max} reaches fidelity {alpha}; best {best:.6} at size {best_size}"
    )]
    NotSynthesizable {
        s_max: usize,
        alpha: f64,
        best: f64,
        best_size: usize,
    },

    #[error("decision oracle returned no usable answer on a required query: {query}")]
    PromiseViolation { query: String },

    #[error("invalid thresholds: {0}")]
    InvalidThresholds(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("zero vector cannot be normalized into a state")]
    ZeroVector,

    #[error("truth table parse error: {0}")]
    TableParse(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
