use thiserror::Error;

/// Errors raised by the invariant library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator dimension {dim} exceeds the dense limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid qubit index {index} for a {num_qubits}-qubit state")]
    InvalidQubit { index: usize, num_qubits: usize },

    #[error("expected {expected} qubits, got {got}")]
    WrongQubitCount { expected: usize, got: usize },

    #[error("trace has imaginary residue {imag} (limit {limit})")]
    ImaginaryResidue { imag: f64, limit: f64 },

    #[error("invalid phase specification: {0}")]
    InvalidPhases(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no well-conditioned draw after {0} attempts")]
    SingularDraw(usize),

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
