use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::clausegen::templates::{self, PRONOUN_INDEX};
use crate::clausegen::TestItem;
use crate::typelogic::{extract_reading, Formula, Reading};
use crate::udencoding::{extract_reading_ud, RelPosLabel};

pub const PAD_TOKEN: &str = "<pad>";

/// Splits a sentence into word tokens, detaching final punctuation.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        let trimmed = word.trim_end_matches(['.', ',', '!', '?']);
        if !trimmed.is_empty() {
            tokens.push(trimmed.to_owned());
        }
        if trimmed.len() < word.len() {
            tokens.push(word[trimmed.len()..].to_owned());
        }
    }
    tokens
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggerInput {
    pub prior: Option<Vec<String>>,
    pub target: Vec<String>,
    pub context_enabled: bool,
    /// Unattended tokens placed before the input.
    pub pad_prefix: Vec<String>,
}

impl TaggerInput {
    pub fn new(prior: Option<&str>, target: &str, context_enabled: bool) -> Self {
        TaggerInput {
            prior: prior.map(tokenize),
            target: tokenize(target),
            context_enabled,
            pad_prefix: Vec::new(),
        }
    }

    pub fn from_item(item: &TestItem, context_enabled: bool) -> Self {
        TaggerInput::new(item.prior.as_deref(), &item.target, context_enabled)
    }

    /// The prior sentence as the tagger may see it.
    pub fn visible_prior(&self) -> Option<&[String]> {
        if self.context_enabled {
            self.prior.as_deref()
        } else {
            None
        }
    }
}

/// Prepends between `min_pad` and `max_pad` padding tokens.
pub fn pad_shift(input: &TaggerInput, min_pad: usize, max_pad: usize, seed: u64) -> TaggerInput {
    assert!(min_pad <= max_pad, "min_pad must not exceed max_pad");
    let k = ChaCha8Rng::seed_from_u64(seed).random_range(min_pad..=max_pad);
    let mut padded = input.clone();
    let mut prefix = vec![PAD_TOKEN.to_owned(); k];
    prefix.append(&mut padded.pad_prefix);
    padded.pad_prefix = prefix;
    padded
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// Supertags over type-logical formulas.
    #[serde(rename = "NPN")]
    Npn,
    /// Relative-PoS dependency labels.
    #[serde(rename = "UD")]
    Ud,
}

impl Regime {
    pub const ALL: [Regime; 2] = [Regime::Npn, Regime::Ud];
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Npn => "NPN",
            Regime::Ud => "UD",
        })
    }
}

impl FromStr for Regime {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "npn" => Ok(Regime::Npn),
            "ud" => Ok(Regime::Ud),
            _ => Err(ModelError::Config(format!("unknown regime `{}`", s))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Analysis {
    Supertags(Vec<Formula>),
    Labels(Vec<RelPosLabel>),
}

/// A tagger's analysis of a target phrase. The reading is always read off
/// the analysis itself.
#[derive(Clone, Debug, PartialEq)]
pub struct TaggerOutput {
    analysis: Analysis,
    reading: Reading,
}

impl TaggerOutput {
    pub fn from_supertags(supertags: Vec<Formula>) -> Result<Self, ModelError> {
        let pronoun = supertags
            .get(PRONOUN_INDEX)
            .ok_or(ModelError::UnsupportedTarget(
                "supertag sequence too short".to_owned(),
            ))?;
        let reading = extract_reading(pronoun)?;
        Ok(TaggerOutput {
            analysis: Analysis::Supertags(supertags),
            reading,
        })
    }

    pub fn from_labels(labels: Vec<RelPosLabel>) -> Result<Self, ModelError> {
        let reading = extract_reading_ud(&labels, PRONOUN_INDEX)?;
        Ok(TaggerOutput {
            analysis: Analysis::Labels(labels),
            reading,
        })
    }

    /// The template analysis of a six-token relative clause.
    pub fn for_reading(regime: Regime, reading: Reading) -> Self {
        let out = match regime {
            Regime::Npn => TaggerOutput::from_supertags(templates::gold_supertags(reading)),
            Regime::Ud => TaggerOutput::from_labels(templates::gold_labels(reading)),
        };
        out.expect("templates encode their reading")
    }

    pub fn regime(&self) -> Regime {
        match self.analysis {
            Analysis::Supertags(_) => Regime::Npn,
            Analysis::Labels(_) => Regime::Ud,
        }
    }

    pub fn supertags(&self) -> Option<&[Formula]> {
        match &self.analysis {
            Analysis::Supertags(tags) => Some(tags),
            Analysis::Labels(_) => None,
        }
    }

    pub fn labels(&self) -> Option<&[RelPosLabel]> {
        match &self.analysis {
            Analysis::Labels(labels) => Some(labels),
            Analysis::Supertags(_) => None,
        }
    }

    pub fn reading(&self) -> Reading {
        self.reading
    }
}
