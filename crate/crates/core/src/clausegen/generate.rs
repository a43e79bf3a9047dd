use super::item::{grounded_reading, HeadOrder, PriorOrder, TestItem};
use super::templates::{gold_labels, gold_supertags};
use super::ClauseGenError;
use crate::selpref::{Gender, Lexicon, SvoTriple};

fn capitalize(text: &str) -> String {
    let mut chars = text.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn gender(lexicon: &Lexicon, lemma: &str) -> Result<Gender, ClauseGenError> {
    lexicon
        .get(lemma)
        .map(|entry| entry.gender)
        .ok_or_else(|| ClauseGenError::MissingGender(lemma.to_owned()))
}

struct Noun<'a> {
    lemma: &'a str,
    gender: Gender,
}

impl Noun<'_> {
    fn phrase(&self) -> String {
        format!("{} {}", self.gender.article(), self.lemma)
    }
}

fn main_clause(first: &Noun, verb: &str, second: &Noun) -> String {
    capitalize(&format!("{} {} {}.", first.phrase(), verb, second.phrase()))
}

fn relative_clause(head: &Noun, other: &Noun, verb: &str) -> String {
    capitalize(&format!(
        "{} {} {} {}",
        head.phrase(),
        head.gender.relative_pronoun(),
        other.phrase(),
        verb
    ))
}

/// Builds the test items for each triple.
///
/// Irreversible triples get an SVO prior with both head orders; reversible
/// triples additionally get the OVS prior.
pub fn generate_items(
    triples: &[SvoTriple],
    lexicon: &Lexicon,
) -> Result<Vec<TestItem>, ClauseGenError> {
    let mut items = Vec::new();
    for triple in triples {
        let subject = Noun {
            lemma: &triple.subject,
            gender: gender(lexicon, &triple.subject)?,
        };
        let object = Noun {
            lemma: &triple.object,
            gender: gender(lexicon, &triple.object)?,
        };
        let verb = triple.verb_form.as_str();
        let priors: &[PriorOrder] = if triple.reversibility.is_reversible() {
            &[PriorOrder::SVO, PriorOrder::OVS]
        } else {
            &[PriorOrder::SVO]
        };
        for &prior_order in priors {
            let prior = match prior_order {
                PriorOrder::SVO => main_clause(&subject, verb, &object),
                PriorOrder::OVS => main_clause(&object, verb, &subject),
            };
            for order in HeadOrder::ALL {
                let target = match order {
                    HeadOrder::SdieOV => relative_clause(&subject, &object, verb),
                    HeadOrder::OdieSV => relative_clause(&object, &subject, verb),
                };
                let expected = grounded_reading(order, prior_order);
                items.push(TestItem {
                    prior: Some(prior.clone()),
                    target,
                    expected,
                    stratum: triple.reversibility,
                    order,
                    prior_order: Some(prior_order),
                    triple: triple.clone(),
                    gold_supertags: gold_supertags(expected),
                    gold_labels: gold_labels(expected),
                });
            }
        }
    }
    Ok(items)
}
