//! Sweep driver, CSV/summary output and the built-in property suite.

pub mod config;
pub mod report;
pub mod suite;
pub mod sweep;

pub use config::{Overrides, Scenario, SweepConfig};
pub use report::{emit_csv, emit_metadata, emit_summary, Summary};
pub use suite::{run_property_suite, SuiteReport};
pub use sweep::{run_sweep, RowStatus, SweepRow};
