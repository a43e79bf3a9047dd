//! Parses supertags, looks up the lexicon for a relative clause and
//! enumerates the proof nets for each pronoun reading.

use relclause::typelogic::{
    count_check, enumerate_linkings, extract_reading, unfold, GrammarConfig, Polarity,
    SupertagLexicon,
};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grammar = GrammarConfig::load(format!("{DATA}/grammar.cfg"))?;
    let lexicon = SupertagLexicon::load(format!("{DATA}/supertags.tsv"), &grammar)?;
    let goal = grammar.parse_formula("NP")?;

    let verb = grammar.parse_formula("dia(obj1, NP) -> dia(su, VNW) -> S")?;
    println!("verb type: {verb}");
    for atom in unfold(&verb, Polarity::Negative, 0) {
        println!("  {} {:?}", atom.atom.name(), atom.polarity);
    }

    let words = ["De", "advocaat", "die", "de", "klant", "adviseert"];
    for pronoun in lexicon.lookup("die") {
        let tags: Vec<_> = words
            .iter()
            .map(|w| match *w {
                "die" => Ok(pronoun.clone()),
                other => lexicon
                    .lookup(other)
                    .first()
                    .cloned()
                    .ok_or(format!("no supertag for {other}")),
            })
            .collect::<Result<_, _>>()?;
        let reading = extract_reading(pronoun)?;
        println!("\n{reading:?}: pronoun {pronoun}");
        if !count_check(&tags, &goal) {
            println!("  atom counts do not balance");
            continue;
        }
        let linkings = enumerate_linkings(&tags, &goal)?;
        println!("  {} valid linkings", linkings.len());
        for linking in linkings.iter().take(2) {
            println!("  {linking}");
        }
    }
    Ok(())
}
