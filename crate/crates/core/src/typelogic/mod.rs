//! Multimodal type-logical grammar: formulas, polarity, proof nets and
//! reading extraction from the relative pronoun's supertag.

mod formula;
mod lexicon;
mod proofnet;
mod reading;

use thiserror::Error;

pub use formula::{parse_formula, Atom, DepRole, Formula, GrammarConfig};
pub use lexicon::SupertagLexicon;
pub use proofnet::{
    count_check, enumerate_linkings, unfold, validate_linking, AxiomLinking, Link, Polarity,
    PolarizedAtom, Sequent,
};
pub use reading::{extract_reading, Reading};

#[derive(Debug, Error)]
pub enum TypeLogicError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown atom `{atom}` at byte {position}")]
    UnknownAtom { atom: String, position: usize },
    #[error("unknown role `{role}` at byte {position}")]
    UnknownRole { role: String, position: usize },
    #[error("role inventory must contain `{0}`")]
    MissingRequiredRole(String),
    #[error("grammar file line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("positive and negative atom counts differ")]
    CountMismatch,
    #[error("not a relative pronoun type: {0}")]
    NotARelativePronounType(String),
    #[error("gap role `{0}` is neither su nor obj1")]
    UnknownGapRole(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
