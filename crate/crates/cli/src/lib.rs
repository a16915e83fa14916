//! Harness around `oriented_ideal`: hypothesis checks, formula-versus-oracle
//! reports, the reference fixtures and a randomized property runner.

pub mod config;
pub mod fixtures;
pub mod fuzz;
pub mod report;
pub mod reproduce;

pub use config::{Command, ConfigError, Format, RunConfig, SizeLimits, LATTICE_CAP_ENV};
pub use fuzz::{cmd_fuzz, FuzzSummary};
pub use report::{cmd_check, cmd_invariants, InvariantReport};
pub use reproduce::{cmd_reproduce_paper, ReproduceTable};

/// Rendered text plus the process exit status it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit: i32,
}
