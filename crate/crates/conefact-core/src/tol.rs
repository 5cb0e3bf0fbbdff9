//! Default numeric tolerances used across the crate.
//!
//! Operations taking an explicit `tol` argument override these.

/// Below this (relative) size, the Soc eigenvector direction is degenerate
/// and a fixed direction is used instead.
pub const SOC_DEGENERATE_DIR: f64 = 1e-14;

/// Eigenvalues in (-EIG_CLAMP, 0) are treated as roundoff zeros when taking
/// square roots.
pub const EIG_CLAMP: f64 = 1e-12;

/// Slack-matrix entries below this are clamped to exactly zero.
pub const SLACK_ZERO_CLAMP: f64 = 1e-14;

/// Default cone-membership tolerance.
pub const CONE_MEMBERSHIP: f64 = 1e-12;
