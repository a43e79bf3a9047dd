//! Fixed lexical features standing in for a pretrained sentence encoder.

use std::collections::{BTreeMap, BTreeSet};

use super::{ModelError, TaggerInput};
use crate::clausegen::templates::{PRONOUN_INDEX, TARGET_LEN};
use crate::clausegen::HeadOrder;
use crate::selpref::{Lexicon, ReversibilityClass, SemanticClass, SvoTriple};

/// Features of one input. Taggers weigh these but never change them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Features {
    /// The head noun is the subject of the visible prior sentence.
    pub prior_subject: bool,
    /// The head noun is the object of the visible prior sentence.
    pub prior_object: bool,
    /// Known stratum of the clause's triple and which argument heads it.
    pub cell: Option<(ReversibilityClass, HeadOrder)>,
}

impl Features {
    /// An irreversible triple with its object as head noun only has the
    /// object-relative reading.
    pub fn lexically_blocked(&self) -> bool {
        self.cell == Some((ReversibilityClass::Irreversible, HeadOrder::OdieSV))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Encoder {
    lexicon: Lexicon,
    triples: BTreeMap<(String, String, String), ReversibilityClass>,
    verb_lemmas: BTreeMap<String, String>,
    class_frames: BTreeSet<(String, SemanticClass, SemanticClass)>,
}

impl Encoder {
    pub fn new(lexicon: Lexicon, triples: &[SvoTriple]) -> Self {
        let mut encoder = Encoder {
            lexicon,
            ..Encoder::default()
        };
        for t in triples {
            encoder.triples.insert(
                (t.subject.clone(), t.verb.clone(), t.object.clone()),
                t.reversibility,
            );
            encoder
                .verb_lemmas
                .insert(t.verb_form.to_lowercase(), t.verb.clone());
            if t.subject_class != t.object_class {
                encoder
                    .class_frames
                    .insert((t.verb.clone(), t.subject_class, t.object_class));
            }
        }
        encoder
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    fn class(&self, lemma: &str) -> Option<SemanticClass> {
        self.lexicon.get(lemma).map(|e| e.semantic_class)
    }

    fn cell(&self, head: &str, other: &str, verb: &str) -> Option<(ReversibilityClass, HeadOrder)> {
        let key = |s: &str, o: &str| (s.to_owned(), verb.to_owned(), o.to_owned());
        if let Some(class) = self.triples.get(&key(head, other)) {
            return Some((*class, HeadOrder::SdieOV));
        }
        if let Some(class) = self.triples.get(&key(other, head)) {
            return Some((*class, HeadOrder::OdieSV));
        }
        let (h, o) = (self.class(head)?, self.class(other)?);
        if h == o {
            None
        } else if self.class_frames.contains(&(verb.to_owned(), h, o)) {
            Some((ReversibilityClass::Irreversible, HeadOrder::SdieOV))
        } else if self.class_frames.contains(&(verb.to_owned(), o, h)) {
            Some((ReversibilityClass::Irreversible, HeadOrder::OdieSV))
        } else {
            None
        }
    }

    /// Subject and object nouns of a main clause, in surface order.
    fn prior_arguments(&self, prior: &[String]) -> (Option<String>, Option<String>) {
        let mut nouns = prior
            .iter()
            .map(|t| t.to_lowercase())
            .filter(|t| self.lexicon.contains(t));
        (nouns.next(), nouns.next())
    }

    pub fn features(&self, input: &TaggerInput) -> Result<Features, ModelError> {
        let target: Vec<String> = input.target.iter().map(|t| t.to_lowercase()).collect();
        if target.len() != TARGET_LEN || !matches!(target[PRONOUN_INDEX].as_str(), "die" | "dat") {
            return Err(ModelError::UnsupportedTarget(input.target.join(" ")));
        }
        let (head, other, form) = (&target[1], &target[4], &target[5]);
        let verb = self.verb_lemmas.get(form).unwrap_or(form);

        let (mut prior_subject, mut prior_object) = (false, false);
        if let Some(prior) = input.visible_prior() {
            let (subject, object) = self.prior_arguments(prior);
            prior_subject = subject.as_ref() == Some(head);
            prior_object = !prior_subject && object.as_ref() == Some(head);
        }
        Ok(Features {
            prior_subject,
            prior_object,
            cell: self.cell(head, other, verb),
        })
    }
}
