use thiserror::Error;

/// Errors raised by state, operator and file-format routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid label digit {digit} at position {position}: digits must be 1 or 2")]
    InvalidLabel { position: usize, digit: u8 },
    #[error("index {index} out of range for {qubits} qubit(s)")]
    IndexOutOfRange { index: usize, qubits: usize },
    #[error("qubit count must be between 1 and {max}, got {found}")]
    InvalidQubitCount { found: usize, max: usize },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("qubit counts differ: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },
    #[error("factor {position} has {found} qubits, expected a single qubit")]
    NotSingleQubit { position: usize, found: usize },
    #[error("qubit index {index} out of range 1..={qubits}")]
    QubitIndexOutOfRange { index: usize, qubits: usize },
    #[error("operation needs {expected} qubits, state has {found}")]
    WrongQubitCount { expected: String, found: usize },
    #[error("phase at index {index} has modulus {modulus}, expected 1")]
    NonUnitPhase { index: usize, modulus: f64 },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator side {side} is not a perfect square")]
    NotPerfectSquare { side: usize },
    #[error("generator b_{index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("need at least {required} strands, got {found}")]
    TooFewStrands { required: usize, found: usize },
    #[error("operator is not invertible")]
    NonInvertible,
    #[error("dimension mismatch: {expected} vs {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dense form of dimension {dim} exceeds the cap of {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("state is identically zero")]
    ZeroState,
    #[error("malformed file: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
