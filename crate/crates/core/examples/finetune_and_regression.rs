//! Finetunes the baseline on the training verbs, then checks both the
//! test items and a held-out treebank for changes.

use std::fs::File;
use std::io::BufReader;
use std::sync::Arc;

use relclause::clausegen::{generate_items, split_by_verb, SplitRatios};
use relclause::evalharness::{regression_check, run_scenario, Scenario};
use relclause::models::{finetune, BiasProfile, Encoder, FinetuneConfig, LogLinearTagger, Regime};
use relclause::selpref::{
    apply_annotations, classify_triples, extract_triples, Annotations, Lexicon, Stopwords,
    Thresholds,
};
use relclause::typelogic::Reading;
use relclause::udencoding::read_trees;

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
    let split = split_by_verb(
        generate_items(&triples, &lexicon)?,
        SplitRatios::default(),
        7,
    )?;

    let encoder = Arc::new(Encoder::new(lexicon, &triples));
    let baseline = LogLinearTagger::biased_baseline(BiasProfile::default(), encoder);
    let config = FinetuneConfig {
        seed: 7,
        ..FinetuneConfig::default()
    };
    let tuned = finetune(&baseline, &split.train, &split.test, &config)?;
    for (name, tagger) in [("before", &baseline), ("after", &tuned)] {
        let w = tagger.weights();
        let cells: Vec<String> = w.cells.iter().map(|c| format!("{:.1}", c.weight)).collect();
        println!(
            "{name:<6} bias {:+.2}  prior_subject {:+.2}  prior_object {:+.2}  cells [{}]",
            w.bias,
            w.prior_subject,
            w.prior_object,
            cells.join(" ")
        );
    }

    match finetune(&baseline, &split.train, &split.train, &config) {
        Err(e) => println!("leakage guard: {e}"),
        Ok(_) => println!("leakage guard did not fire"),
    }

    let obj_rel = |k: &relclause::evalharness::GridKey| k.expected_reading() == Reading::ObjRel;
    let before = run_scenario(&baseline, &split.test, Scenario::Grounded)?;
    let after = run_scenario(&tuned, &split.test, Scenario::FinetunedGrounded)?;
    println!(
        "\nObjRel accuracy on test verbs: {:.3} -> {:.3}",
        before.accuracy_where(obj_rel).unwrap_or(0.0),
        after.accuracy_where(obj_rel).unwrap_or(0.0)
    );

    let heldout = read_trees(BufReader::new(File::open(format!("{DATA}/heldout.conll"))?))?;
    for regime in Regime::ALL {
        let check = regression_check(
            &baseline.clone().with_regime(regime),
            &tuned.clone().with_regime(regime),
            &heldout,
            0.05,
        )?;
        println!("\n{regime}:\n{}", check.render());
    }
    Ok(())
}
