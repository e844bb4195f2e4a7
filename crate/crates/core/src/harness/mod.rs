//! Experiment harness: baseline optimizers, run records, summaries and plots.

mod experiment;
mod optimizers;
mod plot;
mod record;
mod summary;

pub use experiment::{run_experiment, ExperimentConfig, ExperimentOutcome, DEFAULT_BUDGET_MULTIPLIER};
pub use optimizers::{run_archive_evolver, run_optimizer, run_random_search, Observer, OptimizerKind, DEFAULT_STEP_SIGMA};
pub use plot::{plot_front, write_plot};
pub use record::{RunRecord, TracePoint};
pub use summary::{summarize, Summary, SummaryRow};
