use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::models::{Regime, TaggerOutput};
use crate::typelogic::Formula;
use crate::udencoding::{attachment_counts, decode, DepTree, Token};

/// One sentence's analysis in either regime.
#[derive(Clone, Debug, PartialEq)]
pub enum Analysis {
    Supertags(Vec<Formula>),
    Tree(DepTree),
}

impl Analysis {
    fn len(&self) -> usize {
        match self {
            Analysis::Supertags(tags) => tags.len(),
            Analysis::Tree(tree) => tree.len(),
        }
    }

    /// Converts tagger output to an analysis. Dependency labels are decoded
    /// against `tokens`.
    pub fn from_output(output: &TaggerOutput, tokens: &[Token]) -> Result<Self, EvalError> {
        if let Some(tags) = output.supertags() {
            return Ok(Analysis::Supertags(tags.to_vec()));
        }
        let labels = output.labels().expect("output carries supertags or labels");
        Ok(Analysis::Tree(decode(labels, tokens)?.tree))
    }
}

/// Accuracy figures. Supertag metrics are set for the NPN regime, attachment
/// scores for UD.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricSet {
    pub tagging_accuracy: Option<f64>,
    pub frame_accuracy: Option<f64>,
    pub uas: Option<f64>,
    pub las: Option<f64>,
}

impl MetricSet {
    pub fn named(&self) -> [(&'static str, Option<f64>); 4] {
        [
            ("tagging", self.tagging_accuracy),
            ("frame", self.frame_accuracy),
            ("uas", self.uas),
            ("las", self.las),
        ]
    }

    /// Frame accuracy does not exceed tagging accuracy, nor LAS exceed UAS.
    pub fn is_consistent(&self) -> bool {
        let le = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(a), Some(b)) => a <= b + 1e-12,
            _ => true,
        };
        let in_range = self
            .named()
            .iter()
            .all(|(_, v)| v.is_none_or(|v| (0.0..=1.0).contains(&v)));
        in_range && le(self.frame_accuracy, self.tagging_accuracy) && le(self.las, self.uas)
    }

    /// `self - other` on the metrics both sets carry.
    pub fn minus(&self, other: &MetricSet) -> MetricSet {
        let d = |a: Option<f64>, b: Option<f64>| a.zip(b).map(|(a, b)| a - b);
        MetricSet {
            tagging_accuracy: d(self.tagging_accuracy, other.tagging_accuracy),
            frame_accuracy: d(self.frame_accuracy, other.frame_accuracy),
            uas: d(self.uas, other.uas),
            las: d(self.las, other.las),
        }
    }
}

pub fn compute_metrics(
    gold: &[Analysis],
    predicted: &[Analysis],
    regime: Regime,
) -> Result<MetricSet, EvalError> {
    if gold.len() != predicted.len() {
        return Err(EvalError::LengthMismatch {
            expected: gold.len(),
            found: predicted.len(),
        });
    }
    if gold.is_empty() {
        return Err(EvalError::EmptyItemSet);
    }
    let (mut tokens, mut first, mut second, mut whole) = (0usize, 0usize, 0usize, 0usize);
    for (g, p) in gold.iter().zip(predicted) {
        if g.len() != p.len() {
            return Err(EvalError::LengthMismatch {
                expected: g.len(),
                found: p.len(),
            });
        }
        tokens += g.len();
        match (regime, g, p) {
            (Regime::Npn, Analysis::Supertags(g), Analysis::Supertags(p)) => {
                let correct = g.iter().zip(p).filter(|(a, b)| a == b).count();
                first += correct;
                if correct == g.len() {
                    whole += 1;
                }
            }
            (Regime::Ud, Analysis::Tree(g), Analysis::Tree(p)) => {
                let (heads, labelled) = attachment_counts(g, p);
                first += heads;
                second += labelled;
            }
            _ => return Err(EvalError::RegimeMismatch),
        }
    }
    let frac = |n: usize, d: usize| Some(n as f64 / d as f64);
    Ok(match regime {
        Regime::Npn => MetricSet {
            tagging_accuracy: frac(first, tokens),
            frame_accuracy: frac(whole, gold.len()),
            ..MetricSet::default()
        },
        Regime::Ud => MetricSet {
            uas: frac(first, tokens),
            las: frac(second, tokens),
            ..MetricSet::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clausegen::templates::{gold_supertags, gold_tree};
    use crate::typelogic::Reading;

    fn tags(reading: Reading) -> Analysis {
        Analysis::Supertags(gold_supertags(reading))
    }

    #[test]
    fn perfect_predictions() {
        let gold = vec![tags(Reading::SubjRel), tags(Reading::ObjRel)];
        let m = compute_metrics(&gold, &gold, Regime::Npn).unwrap();
        assert_eq!(
            (m.tagging_accuracy, m.frame_accuracy),
            (Some(1.0), Some(1.0))
        );
        let forms = ["De", "man", "die", "de", "vrouw", "ziet"];
        let trees = vec![Analysis::Tree(gold_tree(Reading::SubjRel, &forms))];
        let m = compute_metrics(&trees, &trees, Regime::Ud).unwrap();
        assert_eq!((m.uas, m.las), (Some(1.0), Some(1.0)));
    }

    #[test]
    fn one_wrong_tag() {
        let m = compute_metrics(
            &[tags(Reading::SubjRel)],
            &[tags(Reading::ObjRel)],
            Regime::Npn,
        )
        .unwrap();
        assert!((m.tagging_accuracy.unwrap() - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(m.frame_accuracy, Some(0.0));
        assert!(m.is_consistent());
    }

    #[test]
    fn half_the_frames() {
        let gold = vec![tags(Reading::SubjRel), tags(Reading::SubjRel)];
        let pred = vec![tags(Reading::SubjRel), tags(Reading::ObjRel)];
        assert_eq!(
            compute_metrics(&gold, &pred, Regime::Npn)
                .unwrap()
                .frame_accuracy,
            Some(0.5)
        );
    }

    #[test]
    fn misaligned_inputs() {
        assert!(matches!(
            compute_metrics(&[tags(Reading::SubjRel)], &[], Regime::Npn),
            Err(EvalError::LengthMismatch { .. })
        ));
        let short = Analysis::Supertags(gold_supertags(Reading::SubjRel)[..5].to_vec());
        assert!(matches!(
            compute_metrics(&[tags(Reading::SubjRel)], &[short], Regime::Npn),
            Err(EvalError::LengthMismatch {
                expected: 6,
                found: 5
            })
        ));
        assert!(matches!(
            compute_metrics(
                &[tags(Reading::SubjRel)],
                &[tags(Reading::SubjRel)],
                Regime::Ud
            ),
            Err(EvalError::RegimeMismatch)
        ));
    }

    #[test]
    fn attachment_scores_for_swapped_reading() {
        let forms = ["De", "man", "die", "de", "vrouw", "ziet"];
        let gold = vec![Analysis::Tree(gold_tree(Reading::SubjRel, &forms))];
        let pred = vec![Analysis::Tree(gold_tree(Reading::ObjRel, &forms))];
        let m = compute_metrics(&gold, &pred, Regime::Ud).unwrap();
        assert_eq!(m.uas, Some(1.0));
        assert!((m.las.unwrap() - 4.0 / 6.0).abs() < 1e-12);
    }
}
