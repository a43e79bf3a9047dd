//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relclause::clausegen::templates::{gold_tree, PRONOUN_INDEX};
use relclause::clausegen::{split_by_verb, HeadOrder, PriorOrder, SplitRatios, TestItem};
use relclause::evalharness::{
    regression_check, run_scenario, ExperimentReport, GridKey, MetricSet, Scenario,
    DEFAULT_THRESHOLD,
};
use relclause::models::{pad_shift, DecisionMode, LogLinearTagger, Regime, Tagger, TaggerInput};
use relclause::selpref::ReversibilityClass;
use relclause::typelogic::{
    count_check, enumerate_linkings, extract_reading, parse_formula, Formula, Reading,
};
use relclause::udencoding::{decode, encode, extract_reading_ud, read_trees};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&common::Experiment) -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn samples<S: Strategy>(strategy: S, n: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

fn codec_round_trip(_: &common::Experiment) -> Outcome {
    let trees = samples(common::arb_tree(12), 1000);
    for tree in &trees {
        let decoded = decode(&encode(tree), tree.tokens()).map_err(|e| e.to_string())?;
        ensure!(decoded.repair_count() == 0, "repairs on {:?}", tree);
        ensure!(&decoded.tree == tree, "round trip changed {:?}", tree);
    }
    let printed = [
        (
            Reading::SubjRel,
            "(+1,N,det) (-1,ROOT,root) (+1,V,nsubj) (+1,N,det) (+1,V,obj) (-2,N,acl:relcl)",
        ),
        (
            Reading::ObjRel,
            "(+1,N,det) (-1,ROOT,root) (+1,V,obj) (+1,N,det) (+1,V,nsubj) (-2,N,acl:relcl)",
        ),
    ];
    let forms = ["De", "patiënt", "die", "de", "dokter", "geneest"];
    for (reading, row) in printed {
        let labels: Vec<String> = encode(&gold_tree(reading, &forms))
            .iter()
            .map(ToString::to_string)
            .collect();
        ensure!(
            labels.join(" ") == row,
            "{reading:?} encodes as {}",
            labels.join(" ")
        );
    }
    Ok(format!(
        "{} trees, 0 repairs; both label rows exact",
        trees.len()
    ))
}

fn formula_round_trip(_: &common::Experiment) -> Outcome {
    let formulas = samples(common::arb_formula(6, &["N", "NP", "S", "VNW"]), 1000);
    for f in &formulas {
        let printed = f.to_string();
        let back = parse_formula(&printed).map_err(|e| format!("{printed}: {e}"))?;
        ensure!(&back == f, "round trip changed {printed}");
    }
    let det = "box(det, N -> NP)";
    let verb = "dia(obj1, NP) -> dia(su, VNW) -> S";
    for (pronoun, expected) in [
        (
            "dia(relcl, dia(su, VNW) -> S) -> box(mod, NP -> NP)",
            Reading::SubjRel,
        ),
        (
            "dia(relcl, dia(obj1, VNW) -> S) -> box(mod, NP -> NP)",
            Reading::ObjRel,
        ),
    ] {
        let pron = parse_formula(pronoun).map_err(|e| e.to_string())?;
        let got = extract_reading(&pron).map_err(|e| e.to_string())?;
        ensure!(got == expected, "{pronoun} read as {got:?}");
        let sequent: Vec<Formula> = [det, "N", pronoun, det, "N", verb]
            .iter()
            .map(|t| parse_formula(t).unwrap())
            .collect();
        ensure!(
            count_check(&sequent, &Formula::atom("NP")),
            "count check fails for {expected:?}"
        );
    }
    Ok(format!(
        "{} formulas; readings and count checks hold",
        formulas.len()
    ))
}

fn linking_count(tags: &[Formula], goal: &Formula) -> Result<u64, String> {
    if !count_check(tags, goal) {
        return Ok(0);
    }
    enumerate_linkings(tags, goal)
        .map(|l| l.len() as u64)
        .map_err(|e| e.to_string())
}

fn oracle_equivalence(exp: &common::Experiment) -> Outcome {
    let mut cache: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    let goal = Formula::atom("NP");
    for item in &exp.items {
        for reading in Reading::ALL {
            let tags = if reading == item.expected {
                item.gold_supertags.clone()
            } else {
                relclause::clausegen::templates::gold_supertags(reading)
            };
            ensure!(tags.len() <= 12, "sentence too long");
            let key = tags
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" | ");
            if !cache.contains_key(&key) {
                let nets = linking_count(&tags, &goal)?;
                let oracle = common::natural_deduction_count(&tags, &goal);
                cache.insert(key.clone(), (nets, oracle));
            }
            let (nets, oracle) = cache[&key];
            ensure!(
                nets == oracle,
                "{}: {nets} linkings vs {oracle} proofs",
                item.target
            );
        }
    }
    let extended: Vec<Formula> = [
        "box(det, N -> NP)",
        "N",
        "dia(relcl, dia(su, VNW) -> S) -> box(mod, NP -> NP)",
        "box(det, N -> NP)",
        "N",
        "dia(obj1, NP) -> dia(su, VNW) -> S",
        "dia(obj1, NP) -> dia(su, NP) -> S",
        "box(det, N -> NP)",
        "N",
    ]
    .iter()
    .map(|t| parse_formula(t).unwrap())
    .collect();
    let s = Formula::atom("S");
    let (nets, oracle) = (
        linking_count(&extended, &s)?,
        common::natural_deduction_count(&extended, &s),
    );
    ensure!(
        nets == oracle,
        "9-token sentence: {nets} linkings vs {oracle} proofs"
    );
    let counts: BTreeSet<u64> = cache.values().map(|c| c.0).collect();
    Ok(format!(
        "{} items x 2 readings ({} distinct sequents, counts {:?}); 9-token sentence {} = {}",
        exp.items.len(),
        cache.len(),
        counts,
        nets,
        oracle
    ))
}

fn posterior_normalization(exp: &common::Experiment) -> Outcome {
    let counts = &exp.bundled.counts;
    let mut sums: BTreeMap<String, f64> = BTreeMap::new();
    for ((s, v, o), _) in counts.iter() {
        let p = counts.posterior(s, v, o).map_err(|e| e.to_string())?;
        *sums.entry(v.clone()).or_default() += p;
    }
    ensure!(sums.len() >= 50, "only {} verbs", sums.len());
    let worst = sums.values().map(|t| (t - 1.0).abs()).fold(0.0, f64::max);
    ensure!(worst <= 1e-12, "worst deviation {worst:e}");
    Ok(format!("{} verbs, max |sum - 1| = {worst:e}", sums.len()))
}

fn generation_consistency(exp: &common::Experiment) -> Outcome {
    let irreversible = exp
        .bundled
        .triples
        .iter()
        .filter(|t| !t.reversibility.is_reversible())
        .count();
    let reversible = exp.bundled.triples.len() - irreversible;
    let expected = 2 * irreversible + 4 * reversible;
    ensure!(
        exp.items.len() == expected,
        "{} items, expected {expected}",
        exp.items.len()
    );
    let irr_ovs = exp
        .items
        .iter()
        .filter(|i| {
            i.stratum == ReversibilityClass::Irreversible && i.prior_order == Some(PriorOrder::OVS)
        })
        .count();
    ensure!(irr_ovs == 0, "{irr_ovs} irreversible OVS items");
    for item in &exp.items {
        let from_tags =
            extract_reading(&item.gold_supertags[PRONOUN_INDEX]).map_err(|e| e.to_string())?;
        let from_labels =
            extract_reading_ud(&item.gold_labels, PRONOUN_INDEX).map_err(|e| e.to_string())?;
        ensure!(
            from_tags == item.expected && from_labels == item.expected,
            "{}: expected {:?}, supertags {:?}, labels {:?}",
            item.target,
            item.expected,
            from_tags,
            from_labels
        );
        agreement(exp, item)?;
    }
    Ok(format!(
        "{} items = 2*{irreversible} + 4*{reversible}; readings and agreement correct on all",
        exp.items.len()
    ))
}

fn agreement(exp: &common::Experiment, item: &TestItem) -> Result<(), String> {
    let gender = |lemma: &str| {
        exp.bundled
            .lexicon
            .get(lemma)
            .map(|e| e.gender)
            .ok_or(format!("no entry {lemma}"))
    };
    let forms: Vec<String> = item.target.split(' ').map(str::to_lowercase).collect();
    let (head, other) = match item.order {
        HeadOrder::SdieOV => (&item.triple.subject, &item.triple.object),
        HeadOrder::OdieSV => (&item.triple.object, &item.triple.subject),
    };
    let (hg, og) = (gender(head)?, gender(other)?);
    ensure!(
        forms[0] == hg.article() && forms[2] == hg.relative_pronoun() && forms[3] == og.article(),
        "agreement broken in `{}`",
        item.target
    );
    let prior: Vec<String> = item
        .prior
        .as_deref()
        .unwrap_or("")
        .split(' ')
        .map(str::to_lowercase)
        .collect();
    let (first, second) = match item.prior_order {
        Some(PriorOrder::SVO) => (&item.triple.subject, &item.triple.object),
        Some(PriorOrder::OVS) => (&item.triple.object, &item.triple.subject),
        None => return Err(format!("`{}` has no prior", item.target)),
    };
    ensure!(
        prior.len() == 5
            && prior[0] == gender(first)?.article()
            && prior[3] == gender(second)?.article(),
        "agreement broken in prior `{}`",
        item.prior.as_deref().unwrap_or("")
    );
    Ok(())
}

fn split_integrity(exp: &common::Experiment) -> Outcome {
    let verbs = |items: &[TestItem]| -> BTreeSet<String> {
        items.iter().map(|i| i.triple.verb.clone()).collect()
    };
    for seed in 0..20 {
        let a = split_by_verb(exp.items.clone(), SplitRatios::default(), seed)
            .map_err(|e| e.to_string())?;
        let b = split_by_verb(exp.items.clone(), SplitRatios::default(), seed)
            .map_err(|e| e.to_string())?;
        let [tr, dv, te] = a.parts().map(verbs);
        ensure!(
            tr.is_disjoint(&dv) && tr.is_disjoint(&te) && dv.is_disjoint(&te),
            "seed {seed}: verb sets overlap"
        );
        ensure!(
            a.parts().map(verbs) == b.parts().map(verbs),
            "seed {seed}: splits differ between runs"
        );
    }
    Ok("20 seeds: disjoint and reproducible".into())
}

fn no_context(
    exp: &common::Experiment,
    tagger: &LogLinearTagger,
) -> Result<ExperimentReport, String> {
    run_scenario(tagger, &exp.items, Scenario::NoContext).map_err(|e| e.to_string())
}

fn accuracy(report: &ExperimentReport, f: impl Fn(&GridKey) -> bool) -> Result<f64, String> {
    report
        .accuracy_where(f)
        .ok_or_else(|| "empty cell".to_string())
}

fn bias_reproduction(exp: &common::Experiment) -> Outcome {
    let mut lines = Vec::new();
    for regime in Regime::ALL {
        let report = no_context(exp, &exp.baseline.clone().with_regime(regime))?;
        for (key, cell) in &report.grid {
            let acc = cell.accuracy();
            let ok = match (key.stratum.is_reversible(), key.order) {
                (true, HeadOrder::SdieOV) => acc >= 0.95,
                (true, HeadOrder::OdieSV) => acc <= 0.05,
                (false, HeadOrder::SdieOV) => acc >= 0.95,
                (false, HeadOrder::OdieSV) => acc == 1.0,
            };
            ensure!(ok, "{regime} {} {}: {acc:.3}", key.stratum, key.order);
            lines.push(format!(
                "{}/{}={acc:.2}",
                key.stratum.short_name(),
                key.order
            ));
        }
    }
    Ok(lines.join(" "))
}

fn grounding_effect(exp: &common::Experiment) -> Outcome {
    let mut cells = 0;
    for regime in Regime::ALL {
        let grounding = exp.grounding.clone().with_regime(regime);
        let report =
            run_scenario(&grounding, &exp.items, Scenario::Grounded).map_err(|e| e.to_string())?;
        for (key, cell) in report
            .grid
            .iter()
            .filter(|(k, _)| k.stratum.is_reversible())
        {
            ensure!(
                cell.correct == cell.total,
                "{regime} {:?}: {}/{}",
                key,
                cell.correct,
                cell.total
            );
            cells += 1;
        }
        ensure!(cells > 0, "no reversible cells");
        let ours = no_context(exp, &grounding)?;
        let theirs = no_context(exp, &exp.baseline.clone().with_regime(regime))?;
        ensure!(
            ours.grid == theirs.grid,
            "{regime}: NoContext grid differs from the baseline"
        );
    }
    Ok(format!(
        "{cells} reversible cells at 1.0; NoContext grids equal the baseline"
    ))
}

fn bias_mitigation(exp: &common::Experiment) -> Outcome {
    let obj_rel = |k: &GridKey| k.expected_reading() == Reading::ObjRel;
    let test = &exp.split.test;
    let before =
        run_scenario(&exp.baseline, test, Scenario::Grounded).map_err(|e| e.to_string())?;
    let after =
        run_scenario(&exp.tuned, test, Scenario::FinetunedGrounded).map_err(|e| e.to_string())?;
    let (b, a) = (accuracy(&before, obj_rel)?, accuracy(&after, obj_rel)?);
    ensure!(a > b, "ObjRel accuracy {b:.3} -> {a:.3}");
    let heldout = read_trees(std::io::BufReader::new(
        std::fs::File::open(common::data_path("heldout.conll")).map_err(|e| e.to_string())?,
    ))
    .map_err(|e| e.to_string())?;
    let mut deltas = Vec::new();
    for regime in Regime::ALL {
        let check = regression_check(
            &exp.baseline.clone().with_regime(regime),
            &exp.tuned.clone().with_regime(regime),
            &heldout,
            DEFAULT_THRESHOLD,
        )
        .map_err(|e| e.to_string())?;
        deltas.push((regime, check.has_nonzero_delta()));
    }
    ensure!(
        deltas.iter().any(|d| d.1),
        "regression deltas all zero: {deltas:?}"
    );
    Ok(format!(
        "ObjRel accuracy {b:.3} -> {a:.3}; nonzero delta {deltas:?}"
    ))
}

fn invariances(exp: &common::Experiment) -> Outcome {
    let stochastic = exp
        .baseline
        .clone()
        .with_mode(DecisionMode::Stochastic)
        .with_seed(13);
    let taggers = [&exp.baseline, &exp.grounding, &exp.tuned, &stochastic];
    let mut checked = 0usize;
    for tagger in taggers {
        for regime in Regime::ALL {
            let tagger = tagger.clone().with_regime(regime);
            for (i, item) in exp.items.iter().enumerate() {
                for context in [false, true] {
                    let input = TaggerInput::from_item(item, context);
                    let plain = tagger.tag(&input).map_err(|e| e.to_string())?;
                    for (lo, hi) in [(5, 5), (80, 80), (5, 80)] {
                        let padded = tagger
                            .tag(&pad_shift(&input, lo, hi, i as u64))
                            .map_err(|e| e.to_string())?;
                        ensure!(
                            plain == padded,
                            "padding changed output on `{}`",
                            item.target
                        );
                        checked += 1;
                    }
                }
            }
        }
    }

    let mut permuted = exp.items.clone();
    let mut priors: Vec<Option<String>> = permuted.iter().map(|i| i.prior.clone()).collect();
    priors.shuffle(&mut ChaCha8Rng::seed_from_u64(99));
    for (item, prior) in permuted.iter_mut().zip(priors) {
        item.prior = prior;
    }
    let mut metric_sets: Vec<MetricSet> = Vec::new();
    for tagger in taggers {
        for regime in Regime::ALL {
            let tagger = tagger.clone().with_regime(regime);
            let a = run_scenario(&tagger, &exp.items, Scenario::NoContext)
                .map_err(|e| e.to_string())?;
            let b =
                run_scenario(&tagger, &permuted, Scenario::NoContext).map_err(|e| e.to_string())?;
            ensure!(
                a == b,
                "{regime}: NoContext changed under prior permutation"
            );
            for scenario in [Scenario::Grounded, Scenario::FinetunedGrounded] {
                let r = run_scenario(&tagger, &exp.items, scenario).map_err(|e| e.to_string())?;
                metric_sets.extend(r.metrics.values().copied());
            }
            metric_sets.extend(a.metrics.values().copied());
        }
    }
    let heldout = read_trees(std::io::BufReader::new(
        std::fs::File::open(common::data_path("heldout.conll")).map_err(|e| e.to_string())?,
    ))
    .map_err(|e| e.to_string())?;
    for regime in Regime::ALL {
        let check = regression_check(
            &exp.baseline.clone().with_regime(regime),
            &exp.tuned.clone().with_regime(regime),
            &heldout,
            DEFAULT_THRESHOLD,
        )
        .map_err(|e| e.to_string())?;
        metric_sets.push(check.before);
        metric_sets.push(check.after);
    }
    for m in &metric_sets {
        let le = |a: Option<f64>, b: Option<f64>| a.zip(b).is_none_or(|(a, b)| a <= b);
        ensure!(
            le(m.frame_accuracy, m.tagging_accuracy),
            "frame > tagging in {m:?}"
        );
        ensure!(le(m.las, m.uas), "las > uas in {m:?}");
    }
    Ok(format!(
        "{checked} padded comparisons; permutation invariant; {} metric sets ordered",
        metric_sets.len()
    ))
}

fn main() -> ExitCode {
    let exp = common::experiment(7);
    let criteria: [Criterion; 10] = [
        ("codec round trip", codec_round_trip),
        ("formula round trip and reading rules", formula_round_trip),
        ("proof-search oracle equivalence", oracle_equivalence),
        ("posterior normalization", posterior_normalization),
        ("generation consistency", generation_consistency),
        ("split integrity", split_integrity),
        ("bias reproduction", bias_reproduction),
        ("grounding effect", grounding_effect),
        ("bias mitigation", bias_mitigation),
        ("invariances", invariances),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check(&exp) {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
