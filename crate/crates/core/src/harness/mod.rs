//! Dataset IO, synthetic dataset generation, metrics and the experiment
//! runner.

mod dataset;
mod experiment;
mod metrics;
mod storage;

pub use dataset::{
    generate_dataset, DatasetManifest, GenerateOptions, LabelCounts, ManifestEntry, Split,
    MANIFEST_FILE,
};
pub use experiment::{
    prepare_series, run_experiment, ExperimentOptions, Method, StrategySpec,
};
pub use metrics::{evaluate, ClassMetrics, EvalReport, Prediction};
pub use storage::{load_segment, save_segment, SEGMENT_COLUMNS};

use std::path::PathBuf;

use thiserror::Error;

use crate::classifier::ClassifierError;
use crate::csi::CsiError;
use crate::dsp::DspError;
use crate::gateway::GatewayError;
use crate::prompting::PromptError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("io error on {path}: {reason}")]
    Io { path: PathBuf, reason: String },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Csi(#[from] CsiError),
    #[error(transparent)]
    Dsp(#[from] DspError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error(transparent)]
    Gateway(#[from] GatewayError),
}
