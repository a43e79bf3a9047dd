use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Lexicon, SelPrefError, SemanticClass, TripleCounts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ReversibilityClass {
    Irreversible,
    ReversibleStrong,
    ReversibleWeak,
}

impl ReversibilityClass {
    pub const ALL: [ReversibilityClass; 3] = [
        ReversibilityClass::Irreversible,
        ReversibilityClass::ReversibleStrong,
        ReversibilityClass::ReversibleWeak,
    ];

    pub fn is_reversible(self) -> bool {
        self != ReversibilityClass::Irreversible
    }

    /// Short name used in annotation files and reports.
    pub fn short_name(self) -> &'static str {
        match self {
            ReversibilityClass::Irreversible => "irreversible",
            ReversibilityClass::ReversibleStrong => "strong",
            ReversibilityClass::ReversibleWeak => "weak",
        }
    }
}

impl fmt::Display for ReversibilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ReversibilityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReversibilityClass::ALL
            .into_iter()
            .find(|c| c.short_name() == s.trim())
            .ok_or_else(|| format!("unknown reversibility class {:?}", s))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvoTriple {
    pub subject: String,
    pub verb: String,
    pub object: String,
    /// Third-person singular surface form used in generated sentences.
    pub verb_form: String,
    pub subject_class: SemanticClass,
    pub object_class: SemanticClass,
    pub posterior: f64,
    pub reversibility: ReversibilityClass,
}

impl SvoTriple {
    pub fn key(&self) -> (&str, &str, &str) {
        (&self.subject, &self.verb, &self.object)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thresholds {
    /// Minimum `f(s,v,o) / max(f(o,v,s), 1)` for a strong preference.
    pub strong_ratio: f64,
    pub posterior_cutoff: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            strong_ratio: 10.0,
            posterior_cutoff: 1e-4,
        }
    }
}

/// Resolves noun classes and gives each triple an initial reversibility estimate.
///
/// A noun pair seen in both directions with the same verb keeps only its more
/// frequent direction (ties go to the alphabetically first subject), so each
/// pair yields a single triple per verb.
pub fn classify_triples(
    counts: &TripleCounts,
    lexicon: &Lexicon,
    thresholds: &Thresholds,
) -> Vec<SvoTriple> {
    let mut out = Vec::new();
    for ((s, v, o), f) in counts.iter() {
        let (Some(subj), Some(obj)) = (lexicon.get(s), lexicon.get(o)) else {
            continue;
        };
        let posterior = f as f64 / counts.verb_total(v) as f64;
        if posterior < thresholds.posterior_cutoff {
            continue;
        }
        let inverse = counts.count(o, v, s);
        if inverse > f || (inverse == f && o < s) {
            continue;
        }
        let reversibility = if subj.semantic_class != obj.semantic_class {
            ReversibilityClass::Irreversible
        } else {
            if f as f64 / inverse.max(1) as f64 >= thresholds.strong_ratio {
                ReversibilityClass::ReversibleStrong
            } else {
                ReversibilityClass::ReversibleWeak
            }
        };
        out.push(SvoTriple {
            subject: s.clone(),
            verb: v.clone(),
            object: o.clone(),
            verb_form: counts.verb_form(v),
            subject_class: subj.semantic_class,
            object_class: obj.semantic_class,
            posterior,
            reversibility,
        });
    }
    out
}

pub fn write_triples<W: Write>(mut writer: W, triples: &[SvoTriple]) -> Result<(), SelPrefError> {
    for triple in triples {
        serde_json::to_writer(&mut writer, triple)?;
        writeln!(writer)?;
    }
    Ok(())
}

pub fn read_triples<R: BufRead>(reader: R) -> Result<Vec<SvoTriple>, SelPrefError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let triple = serde_json::from_str(&line).map_err(|e| SelPrefError::Schema {
            line: idx + 1,
            message: e.to_string(),
        })?;
        out.push(triple);
    }
    Ok(out)
}
