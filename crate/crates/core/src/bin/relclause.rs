use std::error::Error;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use relclause::clausegen::{
    generate_items, read_items, split_by_verb, write_items, SplitRatios, TestItem,
};
use relclause::evalharness::{
    regression_check, render_metrics, render_report, run_scenario, Config, ExperimentReport,
    ReportFormat, Scenario, DEFAULT_THRESHOLD,
};
use relclause::models::{
    finetune, pad_shift, BiasProfile, DecisionMode, Encoder, FinetuneConfig, LogLinearTagger,
    ModelError, Regime, Tagger, TaggerInput, TaggerKind, TaggerOutput,
};
use relclause::selpref::{
    apply_annotations, classify_triples, extract_triples, read_triples, write_triples, Annotations,
    Lexicon, Stopwords, Thresholds, TripleCounts,
};
use relclause::udencoding::read_trees;

type Result<T> = std::result::Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(
    name = "relclause",
    version,
    about = "Relative-clause disambiguation experiments"
)]
struct Cli {
    /// Seed for splitting, finetuning, sampling and padding.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// `key = value` file supplying defaults for unset flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count subject-verb-object triples in a parsed corpus.
    ExtractTriples {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank triples, assign noun classes and reversibility.
    Classify {
        #[arg(long)]
        counts: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        annotations: Option<PathBuf>,
        /// Warn instead of failing on annotations for unknown triples.
        #[arg(long)]
        lenient: bool,
        #[arg(long)]
        strong_ratio: Option<f64>,
        #[arg(long)]
        posterior_cutoff: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build test items from classified triples.
    Generate {
        #[arg(long)]
        triples: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Split items into verb-disjoint train, dev and test files.
    Split {
        #[arg(long)]
        items: PathBuf,
        /// Proportions as `train,dev,test`.
        #[arg(long)]
        ratios: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a tagger, optionally finetuning it on training items.
    Train {
        #[arg(long)]
        tagger: Option<String>,
        /// Reading counts as `subj:obj`.
        #[arg(long)]
        profile: Option<String>,
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long)]
        learning_rate: Option<f64>,
        #[arg(long)]
        regime: Option<String>,
        #[arg(long)]
        stochastic: bool,
        #[arg(long)]
        train: Option<PathBuf>,
        /// Items the tagger will be evaluated on, checked for verb overlap.
        #[arg(long)]
        eval: Vec<PathBuf>,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        triples: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a tagger over items in one scenario.
    Evaluate {
        #[arg(long)]
        tagger: PathBuf,
        #[arg(long)]
        items: PathBuf,
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        triples: PathBuf,
        /// Evaluate in one regime only; both by default.
        #[arg(long)]
        regime: Option<String>,
        /// Prepend `min:max` padding tokens to every input.
        #[arg(long)]
        pad: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two taggers on a held-out treebank.
    Regress {
        #[arg(long)]
        before: PathBuf,
        #[arg(long)]
        after: PathBuf,
        #[arg(long)]
        heldout: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        triples: PathBuf,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one or more report files as a table.
    Report {
        #[arg(long, required = true)]
        report: Vec<PathBuf>,
        #[arg(long, default_value = "tsv")]
        format: String,
        /// Also print the metric summary.
        #[arg(long)]
        metrics: bool,
    },
}

struct Settings {
    config: Config,
    seed: Option<u64>,
}

impl Settings {
    fn seed(&self) -> Result<u64> {
        Ok(self.seed.or(self.config.get_parsed("seed")?).unwrap_or(0))
    }

    /// A flag value, else the config entry, else `default`.
    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.config.get_parsed(key)?.unwrap_or(default)),
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| format!("{}: {}", path.display(), e).into())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn load_encoder(lexicon: &Path, triples: &Path) -> Result<Arc<Encoder>> {
    let lexicon = Lexicon::load(lexicon)?;
    let triples = read_triples(open(triples)?)?;
    Ok(Arc::new(Encoder::new(lexicon, &triples)))
}

fn load_tagger(path: &Path, encoder: Arc<Encoder>) -> Result<LogLinearTagger> {
    Ok(LogLinearTagger::from_json(
        &fs::read_to_string(path)?,
        encoder,
    )?)
}

fn load_items(path: &Path) -> Result<Vec<TestItem>> {
    Ok(read_items(open(path)?)?)
}

fn parse_pad(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = text.split_once(':').ok_or("padding must look like 5:80")?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

/// Pads each input before handing it to the wrapped tagger.
struct Padded<'a> {
    inner: &'a LogLinearTagger,
    range: (usize, usize),
    seed: u64,
}

impl Tagger for Padded<'_> {
    fn regime(&self) -> Regime {
        self.inner.regime()
    }

    fn tag(&self, input: &TaggerInput) -> std::result::Result<TaggerOutput, ModelError> {
        self.inner
            .tag(&pad_shift(input, self.range.0, self.range.1, self.seed))
    }
}

fn run(cli: Cli) -> Result<()> {
    let settings = Settings {
        config: match &cli.config {
            Some(path) => Config::load(path)?,
            None => Config::default(),
        },
        seed: cli.seed,
    };
    match cli.command {
        Command::ExtractTriples {
            corpus,
            stopwords,
            out,
        } => {
            let stopwords = match stopwords {
                Some(path) => Stopwords::parse(&fs::read_to_string(path)?),
                None => Stopwords::dutch(),
            };
            let counts = extract_triples(open(&corpus)?, &stopwords)?;
            serde_json::to_writer_pretty(create(&out)?, &counts)?;
            log::info!(
                "{} distinct triples over {} verbs",
                counts.len(),
                counts.verbs().count()
            );
        }
        Command::Classify {
            counts,
            lexicon,
            annotations,
            lenient,
            strong_ratio,
            posterior_cutoff,
            out,
        } => {
            let counts: TripleCounts = serde_json::from_reader(open(&counts)?)?;
            let lexicon = Lexicon::load(lexicon)?;
            let defaults = Thresholds::default();
            let thresholds = Thresholds {
                strong_ratio: settings.pick(strong_ratio, "strong_ratio", defaults.strong_ratio)?,
                posterior_cutoff: settings.pick(
                    posterior_cutoff,
                    "posterior_cutoff",
                    defaults.posterior_cutoff,
                )?,
            };
            let mut triples = classify_triples(&counts, &lexicon, &thresholds);
            if let Some(path) = annotations {
                triples = apply_annotations(triples, &Annotations::load(path)?, lenient)?;
            }
            write_triples(create(&out)?, &triples)?;
            log::info!("{} triples written", triples.len());
        }
        Command::Generate {
            triples,
            lexicon,
            out,
        } => {
            let triples = read_triples(open(&triples)?)?;
            let items = generate_items(&triples, &Lexicon::load(lexicon)?)?;
            write_items(create(&out)?, &items)?;
            log::info!("{} items written", items.len());
        }
        Command::Split { items, ratios, out } => {
            let ratios: SplitRatios = settings
                .pick(ratios, "ratios", "0.21,0.35,0.44".to_owned())?
                .parse()?;
            let split = split_by_verb(load_items(&items)?, ratios, settings.seed()?)?;
            for (name, part) in ["train", "dev", "test"].iter().zip(split.parts()) {
                write_items(create(&out.join(format!("{name}.jsonl")))?, part)?;
                println!("{name}\t{}", part.len());
            }
        }
        Command::Train {
            tagger,
            profile,
            epochs,
            learning_rate,
            regime,
            stochastic,
            train,
            eval,
            lexicon,
            triples,
            out,
        } => {
            let encoder = load_encoder(&lexicon, &triples)?;
            let kind: TaggerKind = settings
                .pick(tagger, "tagger", "baseline".to_owned())?
                .parse()?;
            let profile: BiasProfile = settings
                .pick(profile, "profile", "306:32".to_owned())?
                .parse()?;
            let regime: Regime = settings.pick(regime, "regime", "npn".to_owned())?.parse()?;
            let seed = settings.seed()?;
            let base = match kind {
                TaggerKind::Baseline => LogLinearTagger::biased_baseline(profile, encoder),
                TaggerKind::Grounding => LogLinearTagger::grounding(profile, encoder),
            };
            let mode = if stochastic {
                DecisionMode::Stochastic
            } else {
                DecisionMode::Argmax
            };
            let mut tagger = base.with_regime(regime).with_mode(mode).with_seed(seed);
            if let Some(train) = train {
                let defaults = FinetuneConfig::default();
                let config = FinetuneConfig {
                    epochs: settings.pick(epochs, "epochs", defaults.epochs)?,
                    learning_rate: settings.pick(
                        learning_rate,
                        "learning_rate",
                        defaults.learning_rate,
                    )?,
                    seed,
                };
                let mut eval_items = Vec::new();
                for path in &eval {
                    eval_items.extend(load_items(path)?);
                }
                tagger = finetune(&tagger, &load_items(&train)?, &eval_items, &config)?;
            }
            let mut w = create(&out)?;
            writeln!(w, "{}", tagger.to_json()?)?;
        }
        Command::Evaluate {
            tagger,
            items,
            scenario,
            lexicon,
            triples,
            regime,
            pad,
            out,
        } => {
            let encoder = load_encoder(&lexicon, &triples)?;
            let tagger = load_tagger(&tagger, encoder)?;
            let items = load_items(&items)?;
            let scenario: Scenario = scenario.parse()?;
            let regimes = match regime {
                Some(r) => vec![r.parse::<Regime>()?],
                None => Regime::ALL.to_vec(),
            };
            let pad = match pad.or_else(|| settings.config.get("pad").map(str::to_owned)) {
                Some(text) => Some(parse_pad(&text)?),
                None => None,
            };
            let seed = settings.seed()?;
            let mut report = ExperimentReport::default();
            for regime in regimes {
                let t = tagger.clone().with_regime(regime);
                let part = match pad {
                    Some(range) => run_scenario(
                        &Padded {
                            inner: &t,
                            range,
                            seed,
                        },
                        &items,
                        scenario,
                    )?,
                    None => run_scenario(&t, &items, scenario)?,
                };
                report.merge(part);
            }
            let created = SystemTime::now().duration_since(UNIX_EPOCH)?.as_secs();
            report.metadata.insert("seed".into(), seed.to_string());
            report
                .metadata
                .insert("created_unix".into(), created.to_string());
            report.metadata.insert(
                format!("tagger.{}", scenario),
                serde_json::to_string(tagger.state())?,
            );
            serde_json::to_writer_pretty(create(&out)?, &report)?;
            print!("{}", render_report(&report, ReportFormat::Tsv));
        }
        Command::Regress {
            before,
            after,
            heldout,
            lexicon,
            triples,
            threshold,
            out,
        } => {
            let encoder = load_encoder(&lexicon, &triples)?;
            let before = load_tagger(&before, encoder.clone())?;
            let after = load_tagger(&after, encoder)?;
            let heldout = read_trees(open(&heldout)?)?;
            let threshold = settings.pick(threshold, "threshold", DEFAULT_THRESHOLD)?;
            let mut reports = Vec::new();
            for regime in Regime::ALL {
                let report = regression_check(
                    &before.clone().with_regime(regime),
                    &after.clone().with_regime(regime),
                    &heldout,
                    threshold,
                )?;
                println!("# {regime}\n{}", report.render());
                reports.push(report);
            }
            if let Some(out) = out {
                serde_json::to_writer_pretty(create(&out)?, &reports)?;
            }
        }
        Command::Report {
            report,
            format,
            metrics,
        } => {
            let format: ReportFormat = format.parse()?;
            let mut merged = ExperimentReport::default();
            for path in &report {
                merged.merge(serde_json::from_reader(open(path)?)?);
            }
            print!("{}", render_report(&merged, format));
            if metrics {
                println!();
                print!("{}", render_metrics(&merged, format));
            }
        }
    }
    Ok(())
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
