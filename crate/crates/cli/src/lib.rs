//! Scenario runner behind the `naads` command.
//!
//! A scenario names a family (corpus name or inline description), a task
//! from [`tasks::TASKS`] with its parameters, an optional expected verdict,
//! and the files to write. Reports are plain `key: value` text with a
//! versioned schema line; plot data goes to CSV.

pub mod error;
pub mod outputs;
pub mod params;
pub mod render;
pub mod run;
pub mod scenario;
pub mod tasks;

pub use error::{CliError, CliResult, EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
pub use params::Params;
pub use render::{ReportDoc, SCHEMA};
pub use run::{check, exit_code, rerun, run_scenario, run_scenario_file, RunOptions, RunOutcome};
pub use scenario::{FamilySpec, InlineFamily, OutputKind, OutputSpec, Scenario};
pub use tasks::{task, TaskSpec, BUDGET_ENV, TASKS};
