use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::{Formula, GrammarConfig, TypeLogicError};

/// Candidate supertags per word form, read from `word<TAB>formula` rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupertagLexicon {
    entries: BTreeMap<String, Vec<Formula>>,
}

impl SupertagLexicon {
    pub fn load(path: impl AsRef<Path>, grammar: &GrammarConfig) -> Result<Self, TypeLogicError> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text, grammar)
    }

    pub fn parse(text: &str, grammar: &GrammarConfig) -> Result<Self, TypeLogicError> {
        let mut entries: BTreeMap<String, Vec<Formula>> = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, notation) = line
                .split_once('\t')
                .ok_or_else(|| TypeLogicError::Config {
                    line: idx + 1,
                    message: "expected word<TAB>formula".to_owned(),
                })?;
            let formula = grammar.parse_formula(notation.trim())?;
            let slot = entries.entry(word.trim().to_lowercase()).or_default();
            if !slot.contains(&formula) {
                slot.push(formula);
            }
        }
        Ok(SupertagLexicon { entries })
    }

    /// Candidates for a word form, matched case-insensitively.
    pub fn lookup(&self, word: &str) -> &[Formula] {
        self.entries
            .get(&word.to_lowercase())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
