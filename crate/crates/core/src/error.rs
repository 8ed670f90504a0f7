use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be odd and at least 3, got {0}")]
    InvalidDim(u32),
    #[error("modulus mismatch: {left} vs {right}")]
    DimMismatch { left: u32, right: u32 },
    #[error("{value} is not invertible mod {d} (gcd = {gcd})")]
    NotInvertible { value: u32, d: u32, gcd: u32 },
    #[error("operator is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("fiducial rejected: {0}")]
    FiducialRejected(String),
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("frame kind mismatch")]
    KindMismatch,
    #[error("weight λ = {0} outside [0, 1]")]
    LambdaOutOfRange(f64),
    #[error("exhaustive enumeration limited to d <= {max}, got {d}")]
    TooLarge { d: u32, max: u32 },
    #[error("closure not established: {0}")]
    ClosureNotEstablished(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
