//! Runs the whole experiment on the bundled toy data: triple extraction,
//! classification, test-set generation, the three scenarios and the
//! regression check.

use std::fs::File;
use std::io::BufReader;
use std::sync::Arc;

use relclause::clausegen::{generate_items, split_by_verb, SplitRatios};
use relclause::evalharness::{
    regression_check, render_metrics, render_report, run_scenario, ExperimentReport, ReportFormat,
    Scenario, DEFAULT_THRESHOLD,
};
use relclause::models::{finetune, BiasProfile, Encoder, FinetuneConfig, LogLinearTagger, Regime};
use relclause::selpref::{
    apply_annotations, classify_triples, extract_triples, Annotations, Lexicon, Stopwords,
    Thresholds,
};
use relclause::udencoding::read_trees;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let seed = 7;

    let corpus = BufReader::new(File::open(format!("{DATA}/toy_corpus.conll"))?);
    let counts = extract_triples(corpus, &Stopwords::dutch())?;
    let lexicon = Lexicon::load(format!("{DATA}/lexicon.tsv"))?;
    let triples = classify_triples(&counts, &lexicon, &Thresholds::default());
    let triples = apply_annotations(
        triples,
        &Annotations::load(format!("{DATA}/annotations.tsv"))?,
        false,
    )?;
    println!(
        "{} triples over {} verbs",
        triples.len(),
        counts.verbs().count()
    );

    let items = generate_items(&triples, &lexicon)?;
    let split = split_by_verb(items, SplitRatios::default(), seed)?;
    println!(
        "split sizes: train {} dev {} test {}",
        split.train.len(),
        split.dev.len(),
        split.test.len()
    );

    let encoder = Arc::new(Encoder::new(lexicon, &triples));
    let baseline = LogLinearTagger::biased_baseline(BiasProfile::default(), encoder.clone());
    let grounding = LogLinearTagger::grounding(BiasProfile::default(), encoder);
    let config = FinetuneConfig {
        seed,
        ..FinetuneConfig::default()
    };
    let tuned = finetune(&baseline, &split.train, &split.test, &config)?;

    let mut report = ExperimentReport::default();
    for regime in Regime::ALL {
        let base = baseline.clone().with_regime(regime);
        report.merge(run_scenario(&base, &split.test, Scenario::NoContext)?);
        report.merge(run_scenario(
            &grounding.clone().with_regime(regime),
            &split.test,
            Scenario::Grounded,
        )?);
        report.merge(run_scenario(
            &tuned.clone().with_regime(regime),
            &split.test,
            Scenario::FinetunedGrounded,
        )?);
    }
    println!("{}", render_report(&report, ReportFormat::Markdown));
    println!("{}", render_metrics(&report, ReportFormat::Markdown));

    let heldout = read_trees(BufReader::new(File::open(format!("{DATA}/heldout.conll"))?))?;
    for regime in Regime::ALL {
        let check = regression_check(
            &baseline.clone().with_regime(regime),
            &tuned.clone().with_regime(regime),
            &heldout,
            DEFAULT_THRESHOLD,
        )?;
        println!("held-out regression ({regime}):\n{}", check.render());
    }
    Ok(())
}
