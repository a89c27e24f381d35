use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("amplitude count {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("target out of range: {target} >= {size}")]
    TargetOutOfRange { target: u64, size: u64 },

    #[error("duplicate control qubit {0}")]
    DuplicateControl(usize),

    #[error("qubit {0} is both control and target")]
    ControlIsTarget(usize),

    #[error("controlled-X needs at least one control")]
    NoControls,

    #[error("matrix is not unitary")]
    NonUnitary,

    #[error("phase factor has modulus {0}, expected 1")]
    NonUnitPhase(f64),

    #[error("too many qubits for a dense matrix: {0} > {max}", max = crate::MAX_DENSE_QUBITS)]
    TooManyQubits(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("need {needed} work qubits, {available} available")]
    InsufficientWork { needed: usize, available: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
