//! Configured, seeded experiment runs and their tabular output.

pub mod config;
pub mod run;
pub mod table;

pub use config::{ExperimentConfig, Inputs};
pub use run::{run_experiment, CoordHeight, ModeRow, Payload, RunRecord, SCHEMA_VERSION};
pub use table::{emit_table, TableFormat};
