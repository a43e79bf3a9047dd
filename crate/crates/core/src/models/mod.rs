//! Disambiguation taggers: a log-linear decision layer over fixed lexical
//! features, with a frequency-biased baseline, a prior-sentence grounding
//! variant and perceptron finetuning.

mod encoder;
mod finetune;
mod input;
mod tagger;

use thiserror::Error;

pub use encoder::{Encoder, Features};
pub use finetune::{check_leakage, finetune, FinetuneConfig};
pub use input::{pad_shift, tokenize, Regime, TaggerInput, TaggerOutput, PAD_TOKEN};
pub use tagger::{
    BiasProfile, CellWeight, DecisionMode, LogLinearTagger, Tagger, TaggerKind, TaggerState,
    Weights, WEIGHT_CAP,
};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("not a six-token relative clause: `{0}`")]
    UnsupportedTarget(String),
    #[error("train and eval items share verbs: {}", .0.join(", "))]
    Leakage(Vec<String>),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    TypeLogic(#[from] crate::typelogic::TypeLogicError),
    #[error(transparent)]
    Ud(#[from] crate::udencoding::UdError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
