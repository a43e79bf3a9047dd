use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::{ReversibilityClass, SelPrefError, SvoTriple, TripleKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverrideAction {
    Reclassify(ReversibilityClass),
    Drop,
}

/// Manual per-triple decisions, rows `s v o {irreversible|strong|weak|DROP}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Annotations {
    overrides: BTreeMap<TripleKey, OverrideAction>,
}

impl Annotations {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, SelPrefError> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, SelPrefError> {
        let mut overrides = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| SelPrefError::Annotation {
                line: idx + 1,
                message,
            };
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(err("expected s, v, o, action".to_owned()));
            }
            let action = match cols[3] {
                "DROP" => OverrideAction::Drop,
                other => OverrideAction::Reclassify(other.parse().map_err(err)?),
            };
            overrides.insert(
                (
                    cols[0].to_lowercase(),
                    cols[1].to_lowercase(),
                    cols[2].to_lowercase(),
                ),
                action,
            );
        }
        Ok(Annotations { overrides })
    }

    pub fn len(&self) -> usize {
        self.overrides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.overrides.is_empty()
    }
}

/// Applies manual overrides in input order.
///
/// An override naming a triple that is not in `triples` is an error, or a
/// logged warning when `lenient` is set.
pub fn apply_annotations(
    triples: Vec<SvoTriple>,
    annotations: &Annotations,
    lenient: bool,
) -> Result<Vec<SvoTriple>, SelPrefError> {
    for (s, v, o) in annotations.overrides.keys() {
        if !triples
            .iter()
            .any(|t| t.key() == (s.as_str(), v.as_str(), o.as_str()))
        {
            if lenient {
                log::warn!(
                    "annotation for unknown triple ({}, {}, {}) skipped",
                    s,
                    v,
                    o
                );
            } else {
                return Err(SelPrefError::UnknownOverrideTarget(
                    s.clone(),
                    v.clone(),
                    o.clone(),
                ));
            }
        }
    }
    Ok(triples
        .into_iter()
        .filter_map(|mut triple| {
            let key = (
                triple.subject.clone(),
                triple.verb.clone(),
                triple.object.clone(),
            );
            match annotations.overrides.get(&key) {
                None => Some(triple),
                Some(OverrideAction::Drop) => None,
                Some(OverrideAction::Reclassify(class)) => {
                    triple.reversibility = *class;
                    Some(triple)
                }
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selpref::SemanticClass;

    fn triple(s: &str, v: &str, o: &str, class: ReversibilityClass) -> SvoTriple {
        SvoTriple {
            subject: s.into(),
            verb: v.into(),
            object: o.into(),
            verb_form: v.into(),
            subject_class: SemanticClass::Person,
            object_class: SemanticClass::Person,
            posterior: 0.5,
            reversibility: class,
        }
    }

    fn sample() -> Vec<SvoTriple> {
        vec![
            triple(
                "dokter",
                "geneest",
                "patient",
                ReversibilityClass::ReversibleWeak,
            ),
            triple(
                "toerist",
                "herkent",
                "reiziger",
                ReversibilityClass::ReversibleWeak,
            ),
            triple("man", "ziet", "vrouw", ReversibilityClass::ReversibleWeak),
        ]
    }

    #[test]
    fn reclassify_verbatim() {
        let ann = Annotations::parse("dokter\tgeneest\tpatient\tstrong\n").unwrap();
        let out = apply_annotations(sample(), &ann, false).unwrap();
        assert_eq!(out[0].reversibility, ReversibilityClass::ReversibleStrong);
        assert_eq!(out[1..], sample()[1..]);
    }

    #[test]
    fn empty_file_is_identity() {
        let out = apply_annotations(sample(), &Annotations::parse("").unwrap(), false).unwrap();
        assert_eq!(out, sample());
    }

    #[test]
    fn drop_removes_one_triple() {
        let ann = Annotations::parse("toerist\therkent\treiziger\tDROP\n").unwrap();
        let out = apply_annotations(sample(), &ann, false).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].subject, "dokter");
        assert_eq!(out[1].subject, "man");
    }

    #[test]
    fn unknown_targets() {
        let ann = Annotations::parse("kat\teet\tmuis\tstrong\n").unwrap();
        assert!(matches!(
            apply_annotations(sample(), &ann, false),
            Err(SelPrefError::UnknownOverrideTarget(..))
        ));
        assert_eq!(apply_annotations(sample(), &ann, true).unwrap(), sample());
    }

    #[test]
    fn idempotent() {
        let ann = Annotations::parse(
            "dokter\tgeneest\tpatient\tstrong\nman\tziet\tvrouw\tirreversible\n",
        )
        .unwrap();
        let once = apply_annotations(sample(), &ann, false).unwrap();
        let twice = apply_annotations(once.clone(), &ann, false).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn bad_action() {
        assert!(matches!(
            Annotations::parse("a\tb\tc\tmaybe\n"),
            Err(SelPrefError::Annotation { line: 1, .. })
        ));
    }
}
