//! JSON job runner for `parahoric-core`.

pub mod error;
pub mod job;
pub mod run;
pub mod seed_check;

pub use error::CliError;
pub use job::{Job, ParahoricSpec, SCHEMA_VERSION};
pub use run::{run, Options, Report};
