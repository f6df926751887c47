use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    IndexOutOfRange { index: usize, num_qubits: usize },
    #[error("qubits of a fusion must differ (got {0} twice)")]
    SameQubit(usize),
    #[error("operator {0} is not Hermitian")]
    NotHermitian(String),
    #[error("parse error: {0}")]
    Parse(String),
}
