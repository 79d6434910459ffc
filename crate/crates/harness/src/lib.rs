//! Discretization, empirical PID scans over all node pairs, ranked scoring, and the
//! three network experiments.

pub mod discretize;
pub mod experiments;
pub mod output;
pub mod rank;
pub mod scan;
pub mod stats;

pub use discretize::{discretize_equal_width, BinSpec};
pub use experiments::{
    run_experiment_1, run_experiment_2, run_experiment_3, ExperimentConfig, Experiment1, Experiment2, Experiment3,
};
pub use rank::{rank_scores, RankTable, Statistic};
pub use scan::{empirical_joint3, pairwise_pid_scan, PairResult};

use pidnet_core::{InfoError, ModelError};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error(transparent)]
    Info(#[from] InfoError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
