//! Jordan-algebra arithmetic over direct sums of symmetric cones and the
//! multiplicative-update solver for approximate cone factorizations of
//! nonnegative matrices.
//!
//! The algebra covers orthant, second-order-cone, and real-symmetric-matrix
//! blocks. Everything numeric is generic over the scalar type ([`Scalar`],
//! implemented for `f32` and `f64`); the `*64` aliases below are the
//! concrete types the CLI and experiments use.

pub mod element;
pub mod error;
pub mod factor_map;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod polytopes;
pub mod random;
pub mod scalar;
pub mod scmu;
pub mod spectral;
pub mod structure;
pub mod tol;

pub use element::{BlockData, Element};
pub use error::{Error, Result};
pub use factor_map::{FactorSet, TargetMatrix};
pub use operator::OperatorMatrix;
pub use scalar::Scalar;
pub use scmu::{RunReport, SolverConfig, StepOutcome};
pub use spectral::SpectralDecomposition;
pub use structure::{BlockKind, ConeStructure};

pub type Element64 = Element<f64>;
pub type FactorSet64 = FactorSet<f64>;
pub type TargetMatrix64 = TargetMatrix<f64>;
pub type OperatorMatrix64 = OperatorMatrix<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type RunReport64 = RunReport<f64>;
