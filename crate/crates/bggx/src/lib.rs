//! File formats, reports and reproducible runs on top of `bggx-core`.

pub mod cache;
pub mod checks;
pub mod commands;
pub mod error;
pub mod json;
pub mod report;

pub use error::CliError;
pub use report::{Format, RunReport};
