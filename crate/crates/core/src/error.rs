use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit {0} is used both as a control and as a target")]
    ControlTargetOverlap(usize),

    #[error("gate {kind} expects {expected} target(s), got {got}")]
    TargetArity {
        kind: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("qubit count mismatch: state has {state}, circuit has {circuit}")]
    QubitCountMismatch { state: usize, circuit: usize },

    #[error("state is not normalized (norm² = {0})")]
    Unnormalized(f64),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("non-integer coefficient {0}; quantize the problem first")]
    NonInteger(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("cannot quantize a polynomial whose coefficients are all zero")]
    AllZero,

    #[error("value register of {m} qubits cannot hold values in [{min}, {max}]; at least {required} qubits are needed")]
    ValueOverflow {
        m: usize,
        min: i64,
        max: i64,
        required: usize,
    },

    #[error("no feasible assignment found")]
    Infeasible,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("problem file: {0}")]
    ProblemFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
