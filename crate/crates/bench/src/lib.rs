//! Experiment orchestration for branchsim: config-driven sweeps,
//! deterministic CSV results, and plot-data aggregation.
//!
//! Determinism contract: the same config and master seed produce
//! byte-identical results CSVs regardless of worker count. Per-row wall
//! times break that byte identity, so the timing column is opt-in.

pub mod config;
pub mod report;
pub mod row;
pub mod runner;

pub use config::{BackendModel, ConfigError, ExperimentConfig, ExperimentKind, RunMode};
pub use report::{frontier_map, frontier_table, report, Figure, ReportError};
pub use row::{emit_csv, parse_csv, write_csv, CsvError, ResultRow, COLUMNS, RESULT_SCHEMA};
pub use runner::{derive_seed, expand_grid, point_from_row, run_experiment, run_point, GridPoint};
