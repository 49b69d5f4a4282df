use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochNormExceeded { norm: f64 },
    #[error("wrong dimension: expected {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("dimension {0} is not a power of two in 2..=16")]
    InvalidDimension(usize),
    #[error("combined state would have {0} qubits (maximum 4)")]
    DimensionOverflow(usize),
    #[error("bad subsystem index {index} for a {n_qubits}-qubit state")]
    BadSubsystemIndex { index: usize, n_qubits: usize },
    #[error("operator is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("not a complete set of orthogonal projectors: {0}")]
    NotAProjectorSet(String),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("not a density matrix: {0}")]
    InvalidDensity(String),
    #[error("shrinking factor {0} out of range")]
    LambdaOutOfRange(f64),
    #[error("map is not completely positive (weight {index} = {value})")]
    NotCompletelyPositive { index: usize, value: f64 },
    #[error("invalid Bell mixture: {0}")]
    InvalidMixture(String),
    #[error("teleported party's reduced state is not diagonal (off-diagonal magnitude {0:e})")]
    NotCommutingPremise(f64),
    #[error("scenario premise violated: {0}")]
    PremiseViolation(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no feasible point found at lambda = 0")]
    NoFeasiblePoint,
    #[error("invalid state JSON: {0}")]
    Json(String),
}
