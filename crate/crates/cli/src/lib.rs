//! Batch front end for the `gimso-core` verification suites: configuration
//! parsing, suite execution, JSON and text reports, and the `gimso` command.

pub mod app;
pub mod config;
pub mod suites;

pub use config::{parse_config, ConfigError, Format, RunConfig, Suite};
pub use suites::{run, run_on, Context, RunReport, SuiteReport, Summary};
