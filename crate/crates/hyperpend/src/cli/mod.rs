//! Command-line surface: scenario configuration, the five subcommands, and
//! the deterministic verification harness.

pub mod commands;
pub mod config;
pub mod verify;

pub use commands::{
    build_figure, cmd_classify, cmd_plot, cmd_reduce, cmd_simulate, emit_summary, print_stdout,
    CommandError, PlotRequest, ReduceSummary, SimulateSummary,
};
pub use config::{InitialCondition, PotentialSpec, ScenarioConfig};
pub use verify::{run_verify, VerifyOptions, VerifyOutcome};
