//! Scenario files, experiment sweeps, CSV output and the command line.

pub mod analytic;
pub mod cli;
pub mod config;
pub mod example;
pub mod experiment;

pub use analytic::{analytic_csv, run_analytic, AnalyticRow, Model};
pub use cli::{execute, main_with_args, Cli};
pub use config::{build_sim_config, load_config, parse_config, parse_config_with, ExperimentSpec, RawConfig, Scenario, PRESETS};
pub use example::{prs_worked_example, WorkedExample};
pub use experiment::{
    fmt_g, mean_std, results_csv, run_experiment, run_sweep, run_to_dir, summarize, summary_csv, ResultRow,
    SummaryRow, Written,
};
