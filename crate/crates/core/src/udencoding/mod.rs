//! Dependency parsing as sequence labelling with the relative PoS encoding.

mod codec;
mod conll;
mod tree;

use thiserror::Error;

pub use codec::{decode, encode, extract_reading_ud, Decoded, RelPosLabel, REPAIR_RELATION};
pub use conll::{read_labels, read_trees, write_labels, write_trees, LabelledSentence};
pub use tree::{DepTree, PosTag, Token};

#[derive(Debug, Error)]
pub enum UdError {
    #[error("empty input")]
    EmptyInput,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("index {index} out of range for {len} labels")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("relative pronoun relation `{0}` is neither nsubj nor obj")]
    UnknownPronounRelation(String),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Unlabelled and labelled attachment scores of `predicted` against `gold`.
pub fn uas_las(gold: &DepTree, predicted: &DepTree) -> Result<(f64, f64), UdError> {
    if gold.len() != predicted.len() {
        return Err(UdError::LengthMismatch {
            expected: gold.len(),
            found: predicted.len(),
        });
    }
    let (heads, labelled) = attachment_counts(gold, predicted);
    let n = gold.len() as f64;
    Ok((heads as f64 / n, labelled as f64 / n))
}

/// Token counts with a correct head, and with a correct head and relation.
pub(crate) fn attachment_counts(gold: &DepTree, predicted: &DepTree) -> (usize, usize) {
    let mut heads = 0;
    let mut labelled = 0;
    for k in 0..gold.len() {
        if gold.heads()[k] == predicted.heads()[k] {
            heads += 1;
            if gold.deprels()[k] == predicted.deprels()[k] {
                labelled += 1;
            }
        }
    }
    (heads, labelled)
}
