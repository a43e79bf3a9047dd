//! Builds the templated relative-clause items and splits them by verb.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::BufReader;

use relclause::clausegen::{generate_items, split_by_verb, write_items, SplitRatios};
use relclause::selpref::{
    apply_annotations, classify_triples, extract_triples, Annotations, Lexicon, Stopwords,
    Thresholds,
};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let counts = extract_triples(
        BufReader::new(File::open(format!("{DATA}/toy_corpus.conll"))?),
        &Stopwords::dutch(),
    )?;
    let lexicon = Lexicon::load(format!("{DATA}/lexicon.tsv"))?;
    let triples = classify_triples(&counts, &lexicon, &Thresholds::default());
    let triples = apply_annotations(
        triples,
        &Annotations::load(format!("{DATA}/annotations.tsv"))?,
        false,
    )?;

    let items = generate_items(&triples, &lexicon)?;
    println!("{} items from {} triples", items.len(), triples.len());
    for item in items.iter().filter(|i| i.stratum.is_reversible()).take(4) {
        println!(
            "  [{} | {:?}] {} {}  -> {:?}",
            item.order,
            item.prior_order.unwrap(),
            item.prior.as_deref().unwrap_or(""),
            item.target,
            item.expected
        );
    }

    let ratios: SplitRatios = "0.21,0.35,0.44".parse()?;
    let split = split_by_verb(items, ratios, 7)?;
    for (name, part) in ["train", "dev", "test"].iter().zip(split.parts()) {
        let verbs: BTreeSet<&str> = part.iter().map(|i| i.triple.verb.as_str()).collect();
        println!("{name}: {} items over {} verbs", part.len(), verbs.len());
    }

    let mut jsonl = Vec::new();
    write_items(&mut jsonl, &split.test[..1])?;
    print!("\nfirst test item as JSONL:\n{}", String::from_utf8(jsonl)?);
    Ok(())
}
