#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufReader;
use std::sync::Arc;

use proptest::prelude::*;
use relclause::clausegen::{generate_items, split_by_verb, SplitRatios, SplitSpec, TestItem};
use relclause::models::{finetune, BiasProfile, Encoder, FinetuneConfig, LogLinearTagger};
use relclause::selpref::{
    apply_annotations, classify_triples, extract_triples, Annotations, Lexicon, Stopwords,
    SvoTriple, Thresholds, TripleCounts,
};
use relclause::typelogic::Formula;
use relclause::udencoding::{DepTree, PosTag, Token};

pub const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

pub fn data_path(name: &str) -> String {
    format!("{DATA}/{name}")
}

pub struct Bundled {
    pub counts: TripleCounts,
    pub lexicon: Lexicon,
    pub triples: Vec<SvoTriple>,
}

pub fn bundled() -> Bundled {
    let corpus = BufReader::new(File::open(data_path("toy_corpus.conll")).unwrap());
    let counts = extract_triples(corpus, &Stopwords::dutch()).unwrap();
    let lexicon = Lexicon::load(data_path("lexicon.tsv")).unwrap();
    let annotations = Annotations::load(data_path("annotations.tsv")).unwrap();
    let triples = classify_triples(&counts, &lexicon, &Thresholds::default());
    let triples = apply_annotations(triples, &annotations, false).unwrap();
    Bundled {
        counts,
        lexicon,
        triples,
    }
}

pub struct Experiment {
    pub bundled: Bundled,
    pub items: Vec<TestItem>,
    pub split: SplitSpec,
    pub baseline: LogLinearTagger,
    pub grounding: LogLinearTagger,
    pub tuned: LogLinearTagger,
}

pub fn experiment(seed: u64) -> Experiment {
    let bundled = bundled();
    let items = generate_items(&bundled.triples, &bundled.lexicon).unwrap();
    let split = split_by_verb(items.clone(), SplitRatios::default(), seed).unwrap();
    let encoder = Arc::new(Encoder::new(bundled.lexicon.clone(), &bundled.triples));
    let baseline = LogLinearTagger::biased_baseline(BiasProfile::default(), encoder.clone());
    let grounding = LogLinearTagger::grounding(BiasProfile::default(), encoder);
    let config = FinetuneConfig {
        seed,
        ..FinetuneConfig::default()
    };
    let tuned = finetune(&baseline, &split.train, &split.test, &config).unwrap();
    Experiment {
        bundled,
        items,
        split,
        baseline,
        grounding,
        tuned,
    }
}

/// Implicational types with modalities erased.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Ty {
    Atom(String),
    Arrow(Box<Ty>, Box<Ty>),
}

fn erase(f: &Formula) -> Ty {
    match f {
        Formula::Atomic(a) => Ty::Atom(a.name().to_owned()),
        Formula::Implication(a, b) => Ty::Arrow(Box::new(erase(a)), Box::new(erase(b))),
        Formula::Diamond(_, body) | Formula::Box(_, body) => erase(body),
    }
}

/// Splits `A1 -> ... -> An -> p` into `([A1..An], p)`.
fn spine(ty: &Ty) -> (Vec<&Ty>, &str) {
    let mut args = Vec::new();
    let mut cur = ty;
    loop {
        match cur {
            Ty::Arrow(a, b) => {
                args.push(a.as_ref());
                cur = b;
            }
            Ty::Atom(p) => return (args, p),
        }
    }
}

/// Counts beta-normal eta-long linear lambda terms of type `goal` using each
/// hypothesis exactly once. Hypotheses are distinguished by position.
fn count_terms(ctx: &[&Ty], goal: &Ty) -> u64 {
    match goal {
        Ty::Arrow(a, b) => {
            let mut extended = ctx.to_vec();
            extended.push(a);
            count_terms(&extended, b)
        }
        Ty::Atom(p) => {
            let mut total = 0;
            for (i, hyp) in ctx.iter().enumerate() {
                let (args, head) = spine(hyp);
                if head != p {
                    continue;
                }
                let rest: Vec<&Ty> = ctx
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, t)| *t)
                    .collect();
                total += count_applications(&rest, &args);
            }
            total
        }
    }
}

/// Sums over all ways of distributing `rest` among the argument subproofs.
fn count_applications(rest: &[&Ty], args: &[&Ty]) -> u64 {
    if args.is_empty() {
        return u64::from(rest.is_empty());
    }
    let k = args.len();
    let assignments = k.pow(rest.len() as u32);
    let mut total = 0;
    for code in 0..assignments {
        let mut groups: Vec<Vec<&Ty>> = vec![Vec::new(); k];
        let mut c = code;
        for hyp in rest {
            groups[c % k].push(hyp);
            c /= k;
        }
        let mut product = 1;
        for (group, arg) in groups.iter().zip(args) {
            product *= count_terms(group, arg);
            if product == 0 {
                break;
            }
        }
        total += product;
    }
    total
}

/// Number of natural-deduction proofs of `hyps ⊢ goal` in the implicational
/// fragment of multiplicative linear logic.
pub fn natural_deduction_count(hyps: &[Formula], goal: &Formula) -> u64 {
    let erased: Vec<Ty> = hyps.iter().map(erase).collect();
    let ctx: Vec<&Ty> = erased.iter().collect();
    count_terms(&ctx, &erase(goal))
}

pub fn arb_formula(
    max_depth: u32,
    atoms: &'static [&'static str],
) -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(atoms).prop_map(Formula::atom);
    let roles = prop::sample::select(&["su", "obj1", "det", "mod", "relcl"][..]);
    leaf.prop_recursive(max_depth, 64, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (roles.clone(), inner.clone()).prop_map(|(r, f)| Formula::diamond(r, f)),
            (roles.clone(), inner).prop_map(|(r, f)| Formula::boxed(r, f)),
        ]
    })
}

pub const POS_TAGS: [&str; 5] = ["N", "V", "DET", "PRON", "ADJ"];
pub const DEPRELS: [&str; 5] = ["nsubj", "obj", "det", "amod", "acl:relcl"];

/// Random well-formed trees of 1 to `max_len` tokens: tokens are visited in
/// a random order and each attaches to an earlier-visited token.
pub fn arb_tree(max_len: usize) -> impl Strategy<Value = DepTree> {
    (1..=max_len)
        .prop_flat_map(|n| {
            (
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                prop::collection::vec(any::<prop::sample::Index>(), n),
                prop::collection::vec(prop::sample::select(&POS_TAGS[..]), n),
                prop::collection::vec(prop::sample::select(&DEPRELS[..]), n),
            )
        })
        .prop_map(|(order, parents, pos, rels)| {
            let n = order.len();
            let mut heads = vec![0usize; n];
            let mut deprels: Vec<String> = rels.iter().map(|r| r.to_string()).collect();
            deprels[order[0]] = "root".to_owned();
            for k in 1..n {
                let parent = order[parents[k].index(k)];
                heads[order[k]] = parent + 1;
            }
            let tokens = (0..n)
                .map(|i| Token::new(format!("w{i}"), PosTag::new(pos[i])))
                .collect();
            DepTree::new(tokens, heads, deprels).expect("generated tree is valid")
        })
}

/// Counts `(subject, verb, object)` lemma triples by scanning CoNLL text
/// directly, without building trees.
pub fn rescan_counts(conll: &str, stopwords: &[String]) -> BTreeMap<(String, String, String), u64> {
    let mut counts = BTreeMap::new();
    for block in conll.split("\n\n") {
        let rows: Vec<Vec<&str>> = block
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| l.split('\t').collect())
            .collect();
        let lemma = |row: &Vec<&str>| match row.get(5) {
            Some(l) if *l != "_" => l.to_string(),
            _ => row[1].to_lowercase(),
        };
        for verb in rows.iter().filter(|r| r[2] == "V") {
            let deps = |rel: &str| -> Vec<&Vec<&str>> {
                rows.iter()
                    .filter(|r| r[3] == verb[0] && r[4] == rel && r[2] == "N")
                    .collect()
            };
            for s in deps("nsubj") {
                for o in deps("obj") {
                    let key = (lemma(s), lemma(verb), lemma(o));
                    if [&key.0, &key.1, &key.2]
                        .iter()
                        .any(|w| stopwords.contains(w))
                    {
                        continue;
                    }
                    *counts.entry(key).or_insert(0) += 1;
                }
            }
        }
    }
    counts
}

pub fn bundled_stopwords() -> Vec<String> {
    fs::read_to_string(data_path("stopwords.txt"))
        .unwrap()
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}
