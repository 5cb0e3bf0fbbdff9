//! Experiment tooling around the core library: cone-spec parsing, the
//! two-stage multi-start runner, and residual tables.

pub mod experiment;
pub mod spec_parse;
pub mod table;

pub use experiment::{
    child_seed, run_experiment, ExperimentConfig, ExperimentError, ExperimentReport, TargetSource,
};
pub use spec_parse::{parse_cone_spec, SpecParseError};
pub use table::{emit_csv, emit_table, GridCell};
