use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;
use std::thread;

use serde::{Deserialize, Serialize};

use super::SelPrefError;
use crate::udencoding::{read_trees, DepTree, UdError};

pub type TripleKey = (String, String, String);

/// Occurrence counts `f(s, v, o)` with cached per-verb totals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "CountsFile", into = "CountsFile")]
pub struct TripleCounts {
    counts: BTreeMap<TripleKey, u64>,
    verb_totals: BTreeMap<String, u64>,
    /// Surface forms seen per verb lemma.
    verb_forms: BTreeMap<String, BTreeMap<String, u64>>,
}

impl TripleCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, subject: &str, verb: &str, object: &str, n: u64) {
        if n == 0 {
            return;
        }
        *self
            .counts
            .entry((subject.to_owned(), verb.to_owned(), object.to_owned()))
            .or_default() += n;
        *self.verb_totals.entry(verb.to_owned()).or_default() += n;
    }

    pub fn add_verb_form(&mut self, verb: &str, form: &str, n: u64) {
        *self
            .verb_forms
            .entry(verb.to_owned())
            .or_default()
            .entry(form.to_owned())
            .or_default() += n;
    }

    pub fn merge(&mut self, other: TripleCounts) {
        for ((s, v, o), n) in other.counts {
            self.add(&s, &v, &o, n);
        }
        for (verb, forms) in other.verb_forms {
            for (form, n) in forms {
                self.add_verb_form(&verb, &form, n);
            }
        }
    }

    pub fn count(&self, subject: &str, verb: &str, object: &str) -> u64 {
        self.counts
            .get(&(subject.to_owned(), verb.to_owned(), object.to_owned()))
            .copied()
            .unwrap_or(0)
    }

    pub fn verb_total(&self, verb: &str) -> u64 {
        self.verb_totals.get(verb).copied().unwrap_or(0)
    }

    pub fn verbs(&self) -> impl Iterator<Item = &str> {
        self.verb_totals.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TripleKey, u64)> {
        self.counts.iter().map(|(k, &n)| (k, n))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.verb_totals.values().sum()
    }

    /// Most frequent surface form of a verb; the lemma itself when none was seen.
    pub fn verb_form(&self, verb: &str) -> String {
        self.verb_forms
            .get(verb)
            .and_then(|forms| {
                forms
                    .iter()
                    .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
                    .map(|(form, _)| form.clone())
            })
            .unwrap_or_else(|| verb.to_owned())
    }

    /// `p(s, v, o) = f(s, v, o) / sum over s', o' of f(s', v, o')`.
    pub fn posterior(&self, subject: &str, verb: &str, object: &str) -> Result<f64, SelPrefError> {
        match self.count(subject, verb, object) {
            0 => Err(SelPrefError::UnknownTriple(
                subject.to_owned(),
                verb.to_owned(),
                object.to_owned(),
            )),
            f => Ok(f as f64 / self.verb_total(verb) as f64),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CountsFile {
    triples: Vec<CountRow>,
    verb_forms: BTreeMap<String, BTreeMap<String, u64>>,
}

#[derive(Serialize, Deserialize)]
struct CountRow {
    subject: String,
    verb: String,
    object: String,
    count: u64,
}

impl From<CountsFile> for TripleCounts {
    fn from(file: CountsFile) -> Self {
        let mut counts = TripleCounts::new();
        for row in file.triples {
            counts.add(&row.subject, &row.verb, &row.object, row.count);
        }
        counts.verb_forms = file.verb_forms;
        counts
    }
}

impl From<TripleCounts> for CountsFile {
    fn from(counts: TripleCounts) -> Self {
        CountsFile {
            triples: counts
                .counts
                .into_iter()
                .map(|((subject, verb, object), count)| CountRow {
                    subject,
                    verb,
                    object,
                    count,
                })
                .collect(),
            verb_forms: counts.verb_forms,
        }
    }
}

/// Function words removed before counting.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stopwords(BTreeSet<String>);

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

impl Stopwords {
    /// The bundled Dutch function-word list.
    pub fn dutch() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    pub fn parse(text: &str) -> Self {
        Stopwords(
            text.lines()
                .map(|l| l.trim().to_lowercase())
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect(),
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }
}

/// The (verb, subject, object) token triples of a tree, 0-based.
///
/// A verb qualifies with every pairing of its noun `nsubj` and `obj` dependents.
pub fn transitive_configurations(tree: &DepTree) -> Vec<(usize, usize, usize)> {
    let tokens = tree.tokens();
    let mut out = Vec::new();
    for v in (0..tree.len()).filter(|&k| tokens[k].pos.as_str() == "V") {
        let noun_deps = |rel: &str| -> Vec<usize> {
            tree.dependents(v)
                .filter(|&d| tree.deprels()[d] == rel && tokens[d].pos.as_str() == "N")
                .collect()
        };
        let subjects = noun_deps("nsubj");
        let objects = noun_deps("obj");
        for &s in &subjects {
            for &o in &objects {
                out.push((v, s, o));
            }
        }
    }
    out
}

pub fn count_trees(trees: &[DepTree], stopwords: &Stopwords) -> TripleCounts {
    let mut counts = TripleCounts::new();
    for tree in trees {
        let tokens = tree.tokens();
        for (v, s, o) in transitive_configurations(tree) {
            let (sl, vl, ol) = (tokens[s].lemma(), tokens[v].lemma(), tokens[o].lemma());
            if [&sl, &vl, &ol].iter().any(|w| stopwords.contains(w)) {
                continue;
            }
            counts.add(&sl, &vl, &ol, 1);
            counts.add_verb_form(&vl, &tokens[v].form.to_lowercase(), 1);
        }
    }
    counts
}

/// Counts transitive triples in a CoNLL-like corpus.
pub fn extract_triples<R: BufRead>(
    corpus: R,
    stopwords: &Stopwords,
) -> Result<TripleCounts, SelPrefError> {
    let trees = read_trees(corpus).map_err(|e| match e {
        UdError::Malformed { line, message } => SelPrefError::MalformedCorpusLine { line, message },
        other => SelPrefError::Corpus(other),
    })?;
    Ok(count_trees(&trees, stopwords))
}

/// Counts shards on separate threads and merges the results.
pub fn extract_sharded(shards: &[Vec<DepTree>], stopwords: &Stopwords) -> TripleCounts {
    thread::scope(|scope| {
        let handles: Vec<_> = shards
            .iter()
            .map(|shard| scope.spawn(move || count_trees(shard, stopwords)))
            .collect();
        let mut total = TripleCounts::new();
        for handle in handles {
            total.merge(handle.join().expect("counting thread panicked"));
        }
        total
    })
}
