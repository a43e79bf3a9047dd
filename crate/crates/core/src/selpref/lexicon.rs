use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SelPrefError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemanticClass {
    Person,
    Animal,
    Plant,
    Substance,
    Object,
    Abstract,
    MassNoun,
}

impl SemanticClass {
    pub const ALL: [SemanticClass; 7] = [
        SemanticClass::Person,
        SemanticClass::Animal,
        SemanticClass::Plant,
        SemanticClass::Substance,
        SemanticClass::Object,
        SemanticClass::Abstract,
        SemanticClass::MassNoun,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SemanticClass::Person => "person",
            SemanticClass::Animal => "animal",
            SemanticClass::Plant => "plant",
            SemanticClass::Substance => "substance",
            SemanticClass::Object => "object",
            SemanticClass::Abstract => "abstract",
            SemanticClass::MassNoun => "mass_noun",
        }
    }
}

impl fmt::Display for SemanticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SemanticClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.trim().to_lowercase().replace(' ', "_");
        SemanticClass::ALL
            .into_iter()
            .find(|c| c.as_str() == normalized)
            .ok_or_else(|| format!("unknown semantic class {:?}", s))
    }
}

/// Grammatical gender, named after the definite article.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    De,
    Het,
}

impl Gender {
    pub fn article(self) -> &'static str {
        match self {
            Gender::De => "de",
            Gender::Het => "het",
        }
    }

    pub fn relative_pronoun(self) -> &'static str {
        match self {
            Gender::De => "die",
            Gender::Het => "dat",
        }
    }
}

impl FromStr for Gender {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "de" => Ok(Gender::De),
            "het" => Ok(Gender::Het),
            other => Err(format!("unknown gender {:?}", other)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NounEntry {
    pub lemma: String,
    pub semantic_class: SemanticClass,
    pub gender: Gender,
}

/// Nouns keyed by lowercase lemma. TSV rows: `lemma class gender`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, NounEntry>,
}

impl Lexicon {
    pub fn from_entries(
        entries: impl IntoIterator<Item = NounEntry>,
    ) -> Result<Self, SelPrefError> {
        let mut lexicon = Lexicon::default();
        for entry in entries {
            lexicon.insert(entry)?;
        }
        Ok(lexicon)
    }

    fn insert(&mut self, mut entry: NounEntry) -> Result<(), SelPrefError> {
        entry.lemma = entry.lemma.trim().to_lowercase();
        if entry.lemma.is_empty() {
            return Err(SelPrefError::Lexicon {
                line: 0,
                message: "empty lemma".to_owned(),
            });
        }
        if self.entries.contains_key(&entry.lemma) {
            return Err(SelPrefError::DuplicateLemma(entry.lemma));
        }
        self.entries.insert(entry.lemma.clone(), entry);
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SelPrefError> {
        fs::read_to_string(path)?.parse()
    }

    pub fn get(&self, lemma: &str) -> Option<&NounEntry> {
        self.entries.get(&lemma.to_lowercase())
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.get(lemma).is_some()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &NounEntry> {
        self.entries.values()
    }
}

impl FromStr for Lexicon {
    type Err = SelPrefError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lexicon = Lexicon::default();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| SelPrefError::Lexicon {
                line: idx + 1,
                message,
            };
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 {
                return Err(err("expected lemma, class, gender".to_owned()));
            }
            let entry = NounEntry {
                lemma: cols[0].to_owned(),
                semantic_class: cols[1].parse().map_err(err)?,
                gender: cols[2].parse().map_err(err)?,
            };
            lexicon.insert(entry).map_err(|e| match e {
                SelPrefError::Lexicon { message, .. } => SelPrefError::Lexicon {
                    line: idx + 1,
                    message,
                },
                other => other,
            })?;
        }
        Ok(lexicon)
    }
}
