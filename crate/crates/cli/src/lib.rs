//! Command runner for `sarith`: configurations, reports and the acceptance
//! suite.

pub mod acceptance;
pub mod commands;
pub mod config;

pub use commands::{exit_code, run};
pub use config::{CommandKind, Format, Outcome, Report, RunConfig, Table};
