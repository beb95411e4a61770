use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),

    #[error("dense cap exceeded: {qubits} qubits (cap is {cap})")]
    CapExceeded { qubits: usize, cap: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("qubit indices must be distinct, got {0} twice")]
    QubitCollision(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("eigenvalue iteration did not converge")]
    EigenNoConvergence,

    #[error("coupling must be strictly positive, got {0}")]
    NonPositiveCoupling(f64),

    #[error("temperature must be non-negative, got {0}")]
    NegativeTemperature(f64),

    #[error("temperature must be strictly positive, got {0}")]
    NonPositiveTemperature(f64),

    #[error("dephasing probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("excitation pattern has {got} bits, graph has {expected} vertices")]
    PatternLengthMismatch { expected: usize, got: usize },

    #[error("invalid temperature grid: {0}")]
    InvalidGrid(String),

    #[error("negativity is zero at every probed temperature")]
    SeparableAtAllProbed,

    #[error("negativity is still positive at t_max = {0}")]
    ExceedsTMax(f64),

    #[error("cut boundary does not factor into independent pairs: {0}")]
    BoundaryNotPairProduct(String),

    #[error("no partitions to probe")]
    EmptyProbes,

    #[error("failed to parse graph JSON: {0}")]
    GraphJson(String),
}

pub type Result<T> = std::result::Result<T, Error>;
