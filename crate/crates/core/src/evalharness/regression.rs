use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::metrics::{compute_metrics, Analysis, MetricSet};
use super::EvalError;
use crate::models::{Regime, Tagger, TaggerInput};
use crate::udencoding::DepTree;

/// Degradation (absolute, as a fraction) beyond which a metric is flagged.
pub const DEFAULT_THRESHOLD: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub regime: Regime,
    pub before: MetricSet,
    pub after: MetricSet,
    pub delta: MetricSet,
    pub threshold: f64,
    /// Metrics that dropped by more than the threshold.
    pub degraded: Vec<String>,
}

impl RegressionReport {
    pub fn has_nonzero_delta(&self) -> bool {
        self.delta
            .named()
            .iter()
            .any(|(_, d)| d.is_some_and(|d| d != 0.0))
    }

    pub fn render(&self) -> String {
        let mut out = String::from("metric\tbefore\tafter\tdelta\tflag\n");
        let rows = self
            .before
            .named()
            .into_iter()
            .zip(self.after.named())
            .zip(self.delta.named());
        for (((name, before), (_, after)), (_, delta)) in rows {
            let (Some(b), Some(a), Some(d)) = (before, after, delta) else {
                continue;
            };
            let flag = if self.degraded.iter().any(|m| m == name) {
                "DEGRADED"
            } else {
                "ok"
            };
            writeln!(
                out,
                "{}\t{:.2}\t{:.2}\t{:+.2}\t{}",
                name,
                100.0 * b,
                100.0 * a,
                100.0 * d,
                flag
            )
            .unwrap();
        }
        out
    }
}

fn evaluate_heldout(tagger: &dyn Tagger, heldout: &[DepTree]) -> Result<MetricSet, EvalError> {
    let regime = tagger.regime();
    let mut gold = Vec::with_capacity(heldout.len());
    let mut predicted = Vec::with_capacity(heldout.len());
    for (idx, tree) in heldout.iter().enumerate() {
        let forms: Vec<String> = tree.tokens().iter().map(|t| t.form.clone()).collect();
        let input = TaggerInput {
            prior: None,
            target: forms,
            context_enabled: false,
            pad_prefix: Vec::new(),
        };
        let output = tagger.tag(&input)?;
        predicted.push(Analysis::from_output(&output, tree.tokens())?);
        gold.push(match regime {
            Regime::Npn => Analysis::Supertags(
                tree.tokens()
                    .iter()
                    .map(|t| t.supertag.clone())
                    .collect::<Option<Vec<_>>>()
                    .ok_or(EvalError::MissingGoldSupertag(idx + 1))?,
            ),
            Regime::Ud => Analysis::Tree(tree.clone()),
        });
    }
    compute_metrics(&gold, &predicted, regime)
}

/// Compares two taggers on a held-out treebank and flags metrics that
/// dropped by more than `threshold`.
pub fn regression_check(
    before: &dyn Tagger,
    after: &dyn Tagger,
    heldout: &[DepTree],
    threshold: f64,
) -> Result<RegressionReport, EvalError> {
    if before.regime() != after.regime() {
        return Err(EvalError::RegimeMismatch);
    }
    let m_before = evaluate_heldout(before, heldout)?;
    let m_after = evaluate_heldout(after, heldout)?;
    let delta = m_after.minus(&m_before);
    let degraded = delta
        .named()
        .iter()
        .filter(|(_, d)| d.is_some_and(|d| d < -threshold))
        .map(|(name, _)| name.to_string())
        .collect();
    Ok(RegressionReport {
        regime: before.regime(),
        before: m_before,
        after: m_after,
        delta,
        threshold,
        degraded,
    })
}
