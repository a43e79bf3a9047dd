//! Counts subject-verb-object triples in the toy treebank and sorts them
//! into reversibility classes.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;

use relclause::selpref::{
    apply_annotations, classify_triples, extract_triples, Annotations, Lexicon, Stopwords,
    Thresholds,
};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stopwords = Stopwords::parse(&std::fs::read_to_string(format!("{DATA}/stopwords.txt"))?);
    let counts = extract_triples(
        BufReader::new(File::open(format!("{DATA}/toy_corpus.conll"))?),
        &stopwords,
    )?;
    println!(
        "{} distinct triples, {} tokens counted, {} verbs",
        counts.len(),
        counts.total(),
        counts.verbs().count()
    );

    let mut top: Vec<_> = counts.iter().collect();
    top.sort_by(|a, b| b.1.cmp(&a.1));
    for ((s, v, o), n) in top.iter().take(5) {
        println!(
            "  {n:>4}  {s} {v} {o}  p = {:.3}",
            counts.posterior(s, v, o)?
        );
    }

    let lexicon = Lexicon::load(format!("{DATA}/lexicon.tsv"))?;
    let triples = classify_triples(&counts, &lexicon, &Thresholds::default());
    let triples = apply_annotations(
        triples,
        &Annotations::load(format!("{DATA}/annotations.tsv"))?,
        false,
    )?;
    let mut by_class: BTreeMap<String, usize> = BTreeMap::new();
    for t in &triples {
        *by_class.entry(t.reversibility.to_string()).or_default() += 1;
    }
    println!("\nclassified triples:");
    for (class, n) in by_class {
        println!("  {class}: {n}");
    }
    if let Some(t) = triples.iter().find(|t| t.reversibility.is_reversible()) {
        println!(
            "\nexample: {} {} {} ({} / {}, {})",
            t.subject, t.verb, t.object, t.subject_class, t.object_class, t.reversibility
        );
    }
    Ok(())
}
