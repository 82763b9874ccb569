use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |A - A^H| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("trace {trace:.12} differs from one")]
    TraceNotOne { trace: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subsystem index {index} out of range for {count} subsystems")]
    BadSubsystemIndex { index: usize, count: usize },
    #[error("expected exactly two subsystems, found {0}")]
    NotBipartite(usize),
    #[error("rank {rank} invalid for dimension {dim}")]
    BadRank { rank: usize, dim: usize },
    #[error("pure state norm {norm:.12} differs from one")]
    NotNormalized { norm: f64 },
    #[error("Bloch vector of length {length:.12} lies outside the unit ball")]
    BlochOutOfBall { length: f64 },
    #[error("state has a degenerate diagonal of its square root")]
    DegenerateState,
    #[error("optimization failed: {0}")]
    OptimizationFailed(String),
    #[error("Kraus operators are not complete (max deviation {deviation:.3e})")]
    IncompleteKraus { deviation: f64 },
    #[error("Kraus operator {index} does not map incoherent states to incoherent states")]
    NotIncoherent { index: usize },
    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("observable is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitianObservable { deviation: f64 },
    #[error("spectrum is degenerate (minimum gap {gap:.3e})")]
    DegenerateSpectrum { gap: f64 },
    #[error("invalid Schmidt spectrum: {0}")]
    BadSchmidtSpectrum(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad grid: {0}")]
    BadGrid(String),
}
