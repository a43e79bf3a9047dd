use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::metrics::{compute_metrics, Analysis, MetricSet};
use super::EvalError;
use crate::clausegen::templates::gold_supertags;
use crate::clausegen::{grounded_reading, HeadOrder, PriorOrder, TestItem};
use crate::models::{Regime, Tagger, TaggerInput};
use crate::selpref::ReversibilityClass;
use crate::typelogic::Reading;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// The prior sentence is hidden; the expected reading is the one the
    /// head order suggests.
    NoContext,
    Grounded,
    FinetunedGrounded,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [
        Scenario::NoContext,
        Scenario::Grounded,
        Scenario::FinetunedGrounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::NoContext => "no-context",
            Scenario::Grounded => "grounded",
            Scenario::FinetunedGrounded => "finetuned-grounded",
        }
    }

    pub fn uses_context(self) -> bool {
        self != Scenario::NoContext
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| EvalError::Usage(format!("unknown scenario `{}`", s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridKey {
    pub regime: Regime,
    pub scenario: Scenario,
    pub stratum: ReversibilityClass,
    pub order: HeadOrder,
    pub prior_order: Option<PriorOrder>,
}

impl GridKey {
    pub fn expected_reading(&self) -> Reading {
        match self.prior_order {
            Some(prior) => grounded_reading(self.order, prior),
            None => self.order.canonical_reading(),
        }
    }

    /// Irreversible triples are never presented with an OVS prior.
    pub fn is_implausible(&self) -> bool {
        self.stratum == ReversibilityClass::Irreversible
            && self.prior_order == Some(PriorOrder::OVS)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub correct: usize,
    pub total: usize,
}

impl Cell {
    pub fn accuracy(&self) -> f64 {
        self.correct as f64 / self.total as f64
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(into = "ReportFile", from = "ReportFile")]
pub struct ExperimentReport {
    pub grid: BTreeMap<GridKey, Cell>,
    pub metrics: BTreeMap<(Regime, Scenario), MetricSet>,
    pub metadata: BTreeMap<String, String>,
}

impl ExperimentReport {
    pub fn merge(&mut self, other: ExperimentReport) {
        for (key, cell) in other.grid {
            let entry = self.grid.entry(key).or_default();
            entry.correct += cell.correct;
            entry.total += cell.total;
        }
        self.metrics.extend(other.metrics);
        self.metadata.extend(other.metadata);
    }

    pub fn cell(&self, key: &GridKey) -> Option<&Cell> {
        self.grid.get(key)
    }

    /// Pooled accuracy over cells matching `filter`.
    pub fn accuracy_where(&self, filter: impl Fn(&GridKey) -> bool) -> Option<f64> {
        let (correct, total) = self
            .grid
            .iter()
            .filter(|(k, _)| filter(k))
            .fold((0, 0), |(c, t), (_, cell)| {
                (c + cell.correct, t + cell.total)
            });
        (total > 0).then(|| correct as f64 / total as f64)
    }
}

#[derive(Serialize, Deserialize)]
struct GridRow {
    #[serde(flatten)]
    key: GridKey,
    correct: usize,
    total: usize,
}

#[derive(Serialize, Deserialize)]
struct MetricRow {
    regime: Regime,
    scenario: Scenario,
    #[serde(flatten)]
    metrics: MetricSet,
}

#[derive(Serialize, Deserialize)]
struct ReportFile {
    grid: Vec<GridRow>,
    metrics: Vec<MetricRow>,
    metadata: BTreeMap<String, String>,
}

impl From<ExperimentReport> for ReportFile {
    fn from(r: ExperimentReport) -> Self {
        ReportFile {
            grid: r
                .grid
                .into_iter()
                .map(|(key, c)| GridRow {
                    key,
                    correct: c.correct,
                    total: c.total,
                })
                .collect(),
            metrics: r
                .metrics
                .into_iter()
                .map(|((regime, scenario), metrics)| MetricRow {
                    regime,
                    scenario,
                    metrics,
                })
                .collect(),
            metadata: r.metadata,
        }
    }
}

impl From<ReportFile> for ExperimentReport {
    fn from(f: ReportFile) -> Self {
        ExperimentReport {
            grid: f
                .grid
                .into_iter()
                .map(|row| {
                    let cell = Cell {
                        correct: row.correct,
                        total: row.total,
                    };
                    (row.key, cell)
                })
                .collect(),
            metrics: f
                .metrics
                .into_iter()
                .map(|m| ((m.regime, m.scenario), m.metrics))
                .collect(),
            metadata: f.metadata,
        }
    }
}

/// Runs `tagger` over `items` and aggregates accuracy per grid cell.
pub fn run_scenario(
    tagger: &dyn Tagger,
    items: &[TestItem],
    scenario: Scenario,
) -> Result<ExperimentReport, EvalError> {
    if items.is_empty() {
        return Err(EvalError::EmptyItemSet);
    }
    let regime = tagger.regime();
    let mut report = ExperimentReport::default();
    let mut gold = Vec::with_capacity(items.len());
    let mut predicted = Vec::with_capacity(items.len());
    for item in items {
        let key = GridKey {
            regime,
            scenario,
            stratum: item.stratum,
            order: item.order,
            prior_order: if scenario.uses_context() {
                item.prior_order
            } else {
                None
            },
        };
        let expected = key.expected_reading();
        let output = tagger.tag(&TaggerInput::from_item(item, scenario.uses_context()))?;

        let cell = report.grid.entry(key).or_default();
        cell.total += 1;
        if output.reading() == expected {
            cell.correct += 1;
        }

        let gold_analysis = match regime {
            Regime::Npn => Analysis::Supertags(gold_supertags(expected)),
            Regime::Ud => Analysis::Tree(item.gold_tree(expected)),
        };
        let tokens = item.gold_tree(expected).tokens().to_vec();
        predicted.push(Analysis::from_output(&output, &tokens)?);
        gold.push(gold_analysis);
    }
    report.metrics.insert(
        (regime, scenario),
        compute_metrics(&gold, &predicted, regime)?,
    );
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Tsv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(ReportFormat::Tsv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(EvalError::Usage(format!("unknown report format `{}`", s))),
        }
    }
}

const HEADER: [&str; 8] = [
    "regime", "scenario", "stratum", "order", "prior", "reading", "accuracy", "n",
];

fn push_row(out: &mut String, format: ReportFormat, cols: &[String]) {
    match format {
        ReportFormat::Tsv => {
            out.push_str(&cols.join("\t"));
            out.push('\n');
        }
        ReportFormat::Markdown => {
            out.push_str("| ");
            out.push_str(&cols.join(" | "));
            out.push_str(" |\n");
        }
    }
}

/// Renders the grid in long format, one row per cell.
///
/// Rows follow stratum, head order and prior order within each regime and
/// scenario. Implausible cells are listed with `N/A`.
pub fn render_report(report: &ExperimentReport, format: ReportFormat) -> String {
    let mut out = String::new();
    push_row(&mut out, format, &HEADER.map(String::from));
    if format == ReportFormat::Markdown {
        push_row(&mut out, format, &HEADER.map(|_| "---".to_owned()));
    }
    let mut blocks: Vec<(Regime, Scenario)> =
        report.grid.keys().map(|k| (k.regime, k.scenario)).collect();
    blocks.dedup();
    for (regime, scenario) in blocks {
        let priors: &[Option<PriorOrder>] = if scenario.uses_context() {
            &[Some(PriorOrder::SVO), Some(PriorOrder::OVS)]
        } else {
            &[None]
        };
        for stratum in ReversibilityClass::ALL {
            for order in HeadOrder::ALL {
                for &prior_order in priors {
                    let key = GridKey {
                        regime,
                        scenario,
                        stratum,
                        order,
                        prior_order,
                    };
                    let (accuracy, n) = match report.grid.get(&key) {
                        Some(cell) => (
                            format!("{:.2}", 100.0 * cell.accuracy()),
                            cell.total.to_string(),
                        ),
                        None if key.is_implausible() => ("N/A".to_owned(), "N/A".to_owned()),
                        None => continue,
                    };
                    let prior = prior_order.map_or_else(|| "-".to_owned(), |p| p.to_string());
                    push_row(
                        &mut out,
                        format,
                        &[
                            regime.to_string(),
                            scenario.to_string(),
                            stratum.to_string(),
                            order.to_string(),
                            prior,
                            key.expected_reading().to_string(),
                            accuracy,
                            n,
                        ],
                    );
                }
            }
        }
    }
    out
}

/// Renders the per-run metric sets, one row per regime and scenario.
pub fn render_metrics(report: &ExperimentReport, format: ReportFormat) -> String {
    let header = ["regime", "scenario", "tagging", "frame", "uas", "las"].map(String::from);
    let mut out = String::new();
    push_row(&mut out, format, &header);
    if format == ReportFormat::Markdown {
        push_row(&mut out, format, &header.clone().map(|_| "---".to_owned()));
    }
    for ((regime, scenario), m) in &report.metrics {
        let mut cols = vec![regime.to_string(), scenario.to_string()];
        cols.extend(
            m.named()
                .iter()
                .map(|(_, v)| v.map_or_else(|| "-".to_owned(), |v| format!("{:.2}", 100.0 * v))),
        );
        push_row(&mut out, format, &cols);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(stratum: ReversibilityClass, order: HeadOrder, prior: PriorOrder) -> GridKey {
        GridKey {
            regime: Regime::Npn,
            scenario: Scenario::Grounded,
            stratum,
            order,
            prior_order: Some(prior),
        }
    }

    fn table5_shaped() -> ExperimentReport {
        let mut report = ExperimentReport::default();
        for stratum in ReversibilityClass::ALL {
            for order in HeadOrder::ALL {
                for prior in [PriorOrder::SVO, PriorOrder::OVS] {
                    let k = key(stratum, order, prior);
                    if !k.is_implausible() {
                        report.grid.insert(
                            k,
                            Cell {
                                correct: 3,
                                total: 4,
                            },
                        );
                    }
                }
            }
        }
        report
    }

    #[test]
    fn empty_grid_is_header_only() {
        let text = render_report(&ExperimentReport::default(), ReportFormat::Tsv);
        assert_eq!(
            text,
            "regime\tscenario\tstratum\torder\tprior\treading\taccuracy\tn\n"
        );
    }

    #[test]
    fn implausible_cells_render_as_na() {
        let text = render_report(&table5_shaped(), ReportFormat::Tsv);
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), 12);
        let na: Vec<&&str> = rows.iter().filter(|r| r.contains("N/A")).collect();
        assert_eq!(na.len(), 2);
        assert!(na
            .iter()
            .all(|r| r.contains("irreversible") && r.contains("OVS")));
        assert!(rows[0].ends_with("subj-rel\t75.00\t4"));
        assert!(rows[0].starts_with("NPN\tgrounded\tirreversible\tS die O V\tSVO"));
    }

    #[test]
    fn markdown_and_determinism() {
        let report = table5_shaped();
        let a = render_report(&report, ReportFormat::Markdown);
        assert_eq!(a, render_report(&report, ReportFormat::Markdown));
        assert!(a.starts_with("| regime | scenario |"));
        assert_eq!(
            a.lines().nth(1).unwrap(),
            "| --- | --- | --- | --- | --- | --- | --- | --- |"
        );
    }

    #[test]
    fn json_round_trip() {
        let mut report = table5_shaped();
        report.metadata.insert("seed".into(), "7".into());
        report.metrics.insert(
            (Regime::Npn, Scenario::Grounded),
            MetricSet {
                tagging_accuracy: Some(0.5),
                frame_accuracy: Some(0.25),
                ..MetricSet::default()
            },
        );
        let text = serde_json::to_string(&report).unwrap();
        let back: ExperimentReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
