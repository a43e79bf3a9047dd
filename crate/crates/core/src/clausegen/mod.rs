//! Test-set generation: templated relative clauses with grounding sentences,
//! and verb-disjoint splits.

mod generate;
mod item;
mod split;
pub mod templates;

use thiserror::Error;

pub use generate::generate_items;
pub use item::{grounded_reading, read_items, write_items, HeadOrder, PriorOrder, TestItem};
pub use split::{split_by_verb, SplitRatios, SplitSpec};

#[derive(Debug, Error)]
pub enum ClauseGenError {
    #[error("no gender known for `{0}`")]
    MissingGender(String),
    #[error("need at least 3 verbs to split, found {0}")]
    TooFewVerbs(usize),
    #[error("split ratios must be three positive numbers summing to 1, got `{0}`")]
    InvalidRatios(String),
    #[error("item file line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
