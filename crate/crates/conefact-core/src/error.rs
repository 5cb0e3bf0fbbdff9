use thiserror::Error;

/// Errors produced by the algebra and the solver.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("elements belong to different cone structures")]
    StructureMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error in block {block}: eigenvalue {eigenvalue} is invalid for exponent {exponent}")]
    Domain {
        block: usize,
        eigenvalue: f64,
        exponent: f64,
    },

    #[error("element is not in the interior of the cone (min eigenvalue {min_eigenvalue})")]
    NotInterior { min_eigenvalue: f64 },

    #[error("symmetric eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {off_norm})")]
    EigenFailure { sweeps: usize, off_norm: f64 },

    #[error("invalid cone structure: {0}")]
    InvalidStructure(String),

    #[error("target matrix is invalid: {0}")]
    InvalidTarget(String),

    #[error("solver error at sweep {sweep}, factor {side} index {index}: {source}")]
    SolverStep {
        sweep: usize,
        side: &'static str,
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
