//! Experiment runner: scenario evaluation, metrics, regression checks and
//! report tables.

mod config;
mod metrics;
mod regression;
mod report;

use thiserror::Error;

pub use config::Config;
pub use metrics::{compute_metrics, Analysis, MetricSet};
pub use regression::{regression_check, RegressionReport, DEFAULT_THRESHOLD};
pub use report::{
    render_metrics, render_report, run_scenario, Cell, ExperimentReport, GridKey, ReportFormat,
    Scenario,
};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no items to evaluate")]
    EmptyItemSet,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("gold and predicted analyses belong to different regimes")]
    RegimeMismatch,
    #[error("held-out sentence {0} has no gold supertags")]
    MissingGoldSupertag(usize),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] crate::models::ModelError),
    #[error(transparent)]
    Ud(#[from] crate::udencoding::UdError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
