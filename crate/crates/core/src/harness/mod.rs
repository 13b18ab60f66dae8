//! Drivers for the boundary-element experiments and the analytic-pair suite.

pub mod config;
pub mod experiment;
pub mod output;
pub mod pairs;

pub use config::{parse_methods, ExperimentConfig, ExperimentId};
pub use experiment::{relative_errors, run_experiment, ExperimentResult, MethodSeries, INACCURACY_TOLERANCE};
pub use output::{experiment_csv, gnuplot_data, last_cycle, pairs_csv, summary_csv, write_outputs, CSV_HEADER};
pub use pairs::{invert_pair, run_pairs_benchmark, strategy_for, PairError};
