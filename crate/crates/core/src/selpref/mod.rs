//! Selectional-preference triples: extraction, posterior ranking, semantic
//! classification and reversibility typing.

mod annotations;
mod classify;
mod counts;
mod lexicon;

use thiserror::Error;

pub use annotations::{apply_annotations, Annotations, OverrideAction};
pub use classify::{
    classify_triples, read_triples, write_triples, ReversibilityClass, SvoTriple, Thresholds,
};
pub use counts::{
    count_trees, extract_sharded, extract_triples, transitive_configurations, Stopwords,
    TripleCounts, TripleKey,
};
pub use lexicon::{Gender, Lexicon, NounEntry, SemanticClass};

#[derive(Debug, Error)]
pub enum SelPrefError {
    #[error("corpus line {line}: {message}")]
    MalformedCorpusLine { line: usize, message: String },
    #[error(transparent)]
    Corpus(crate::udencoding::UdError),
    #[error("no counts for triple ({0}, {1}, {2})")]
    UnknownTriple(String, String, String),
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error("duplicate lexicon entry `{0}`")]
    DuplicateLemma(String),
    #[error("annotation line {line}: {message}")]
    Annotation { line: usize, message: String },
    #[error("annotation targets unknown triple ({0}, {1}, {2})")]
    UnknownOverrideTarget(String, String, String),
    #[error("triple file line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
