//! Compares the biased baseline with the grounding tagger, with and
//! without a prior sentence.

use std::fs::File;
use std::io::BufReader;
use std::sync::Arc;

use relclause::clausegen::generate_items;
use relclause::evalharness::{
    render_report, run_scenario, ExperimentReport, ReportFormat, Scenario,
};
use relclause::models::{BiasProfile, DecisionMode, Encoder, LogLinearTagger, TaggerInput};
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

    let profile: BiasProfile = "306:32".parse()?;
    println!("bias log-odds toward ObjRel: {:.3}", profile.log_odds());
    let encoder = Arc::new(Encoder::new(lexicon, &triples));
    let baseline = LogLinearTagger::biased_baseline(profile, encoder.clone());
    let grounding = LogLinearTagger::grounding(profile, encoder);

    let item = items
        .iter()
        .find(|i| i.stratum.is_reversible() && i.expected == relclause::typelogic::Reading::ObjRel)
        .expect("a reversible object-relative item");
    println!("\n{} {}", item.prior.as_deref().unwrap_or(""), item.target);
    for (name, tagger) in [("baseline", &baseline), ("grounding", &grounding)] {
        for context in [false, true] {
            let input = TaggerInput::from_item(item, context);
            println!(
                "  {name:<9} context={context:<5} -> {:?} (features {:?})",
                tagger.predict(&input)?,
                tagger.features(&input)?
            );
        }
    }

    let sampler = baseline
        .clone()
        .with_mode(DecisionMode::Stochastic)
        .with_seed(3);
    let obj = items
        .iter()
        .filter(|i| {
            sampler
                .predict(&TaggerInput::from_item(i, false))
                .is_ok_and(|r| r == relclause::typelogic::Reading::ObjRel)
        })
        .count();
    println!(
        "\nstochastic baseline picks ObjRel on {obj} of {} items",
        items.len()
    );

    let mut report = ExperimentReport::default();
    report.merge(run_scenario(&baseline, &items, Scenario::NoContext)?);
    report.merge(run_scenario(&baseline, &items, Scenario::Grounded)?);
    report.merge(run_scenario(&grounding, &items, Scenario::Grounded)?);
    println!("\n{}", render_report(&report, ReportFormat::Markdown));
    Ok(())
}
