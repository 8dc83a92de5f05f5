//! Orchestration behind the `geocorr` binary: configuration, the theoretical curves,
//! empirical-versus-limit comparison and the on-disk cache.

pub mod cache;
pub mod compare;
pub mod config;
pub mod error;
pub mod run;
pub mod theory;

pub use compare::{compare, BinComparison, CompareSettings, Comparison};
pub use config::{Command, RunConfig};
pub use error::HarnessError;
pub use run::{run, Status};
pub use theory::{TheoryModel, TheoryPoint, VALIDATED_X_MAX, ZETA2};
