//! Command-line front end, caching and file formats for `qschubert-core`.
//!
//! The command implementations in [`commands`] return a [`report::Report`]:
//! a JSON value plus a pass/fail verdict. Text output is rendered from the
//! same JSON, so both formats always carry identical values.

pub mod batch;
pub mod cache;
pub mod commands;
pub mod error;
pub mod report;

pub use error::CliError;
