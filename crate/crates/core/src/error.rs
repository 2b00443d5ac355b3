use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix of {len} entries is not a square 2^n x 2^n operator")]
    NotQubitShaped { len: usize },

    #[error("{num_qubits} qubits exceeds the dense-storage cap of {max}")]
    TooManyQubits { num_qubits: usize, max: usize },

    #[error("qubit index {index} out of range 1..={num_qubits}")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("partial trace needs at least one qubit to keep")]
    EmptyKeep,

    #[error("expected a {expected}-qubit operator, found {found} qubits")]
    WrongQubitCount { expected: usize, found: usize },

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("probability must be a real number")]
    ProbabilityNotReal,

    #[error("input state not normalized: |alpha|^2 + |beta|^2 = {0}")]
    NotNormalized(String),

    #[error("cannot parse amplitude `{token}`: {reason}")]
    InvalidAmplitude { token: String, reason: &'static str },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("invalid polynomial table, line {line}: {reason}")]
    InvalidTable { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
