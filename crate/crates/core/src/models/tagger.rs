use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::encoder::{Encoder, Features};
use super::{ModelError, Regime, TaggerInput, TaggerOutput};
use crate::clausegen::HeadOrder;
use crate::selpref::ReversibilityClass;
use crate::typelogic::Reading;

/// Largest absolute value any decision weight may take.
pub const WEIGHT_CAP: f64 = 10.0;

/// A tagger maps a target phrase, and optionally its prior sentence, to an
/// analysis. External taggers plug in by implementing this trait.
pub trait Tagger: Send + Sync {
    fn regime(&self) -> Regime;
    fn tag(&self, input: &TaggerInput) -> Result<TaggerOutput, ModelError>;
}

/// How often each reading was seen in training data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiasProfile {
    pub subj_rel_count: u64,
    pub obj_rel_count: u64,
}

impl BiasProfile {
    pub fn new(subj_rel_count: u64, obj_rel_count: u64) -> Result<Self, ModelError> {
        if subj_rel_count == 0 && obj_rel_count == 0 {
            return Err(ModelError::Config(
                "bias profile needs a positive count".to_owned(),
            ));
        }
        Ok(BiasProfile {
            subj_rel_count,
            obj_rel_count,
        })
    }

    /// Log-odds of the object-relative reading, clamped to the weight cap.
    pub fn log_odds(&self) -> f64 {
        let (s, o) = (self.subj_rel_count as f64, self.obj_rel_count as f64);
        (o / s).ln().clamp(-WEIGHT_CAP, WEIGHT_CAP)
    }
}

impl Default for BiasProfile {
    fn default() -> Self {
        BiasProfile {
            subj_rel_count: 306,
            obj_rel_count: 32,
        }
    }
}

impl fmt::Display for BiasProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.subj_rel_count, self.obj_rel_count)
    }
}

impl FromStr for BiasProfile {
    type Err = ModelError;

    /// Parses `subj:obj`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::Config(format!("bias profile must look like 306:32, got `{}`", s));
        let (subj, obj) = s.split_once(':').ok_or_else(bad)?;
        BiasProfile::new(
            subj.trim().parse().map_err(|_| bad())?,
            obj.trim().parse().map_err(|_| bad())?,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionMode {
    Argmax,
    /// Sample the reading from the logistic of the score. Each input gets its
    /// own stream derived from the tagger seed and the target tokens.
    Stochastic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaggerKind {
    Baseline,
    Grounding,
}

impl FromStr for TaggerKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "baseline" => Ok(TaggerKind::Baseline),
            "grounding" => Ok(TaggerKind::Grounding),
            _ => Err(ModelError::Config(format!("unknown tagger `{}`", s))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellWeight {
    pub stratum: ReversibilityClass,
    pub order: HeadOrder,
    pub weight: f64,
}

/// Decision-layer weights. A positive score selects the object-relative
/// reading.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    pub bias: f64,
    pub prior_subject: f64,
    pub prior_object: f64,
    pub cells: Vec<CellWeight>,
}

impl Weights {
    fn new(bias: f64) -> Self {
        let cells = ReversibilityClass::ALL
            .into_iter()
            .flat_map(|stratum| {
                HeadOrder::ALL.into_iter().map(move |order| CellWeight {
                    stratum,
                    order,
                    weight: 0.0,
                })
            })
            .collect();
        Weights {
            bias,
            prior_subject: 0.0,
            prior_object: 0.0,
            cells,
        }
    }

    fn cell_mut(&mut self, cell: (ReversibilityClass, HeadOrder)) -> Option<&mut f64> {
        self.cells
            .iter_mut()
            .find(|c| (c.stratum, c.order) == cell)
            .map(|c| &mut c.weight)
    }

    pub fn score(&self, features: &Features) -> f64 {
        let mut score = self.bias;
        if features.prior_subject {
            score += self.prior_subject;
        }
        if features.prior_object {
            score += self.prior_object;
        }
        if let Some(cell) = features.cell {
            score += self
                .cells
                .iter()
                .find(|c| (c.stratum, c.order) == cell)
                .map_or(0.0, |c| c.weight);
        }
        score
    }

    /// Adds `step` to every active weight, keeping each within the cap.
    pub(crate) fn update(&mut self, features: &Features, step: f64) {
        let bump = |w: &mut f64| *w = (*w + step).clamp(-WEIGHT_CAP, WEIGHT_CAP);
        bump(&mut self.bias);
        if features.prior_subject {
            bump(&mut self.prior_subject);
        }
        if features.prior_object {
            bump(&mut self.prior_object);
        }
        if let Some(w) = features.cell.and_then(|cell| self.cell_mut(cell)) {
            bump(w);
        }
    }
}

/// Serialized form of a [`LogLinearTagger`]. The encoder is rebuilt from
/// the lexicon and triple files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaggerState {
    pub kind: TaggerKind,
    pub regime: Regime,
    pub profile: BiasProfile,
    pub mode: DecisionMode,
    pub weights: Weights,
    pub seed: u64,
    pub finetune_epochs: usize,
}

/// A log-linear decision layer over frozen encoder features.
#[derive(Clone, Debug)]
pub struct LogLinearTagger {
    state: TaggerState,
    encoder: Arc<Encoder>,
}

impl LogLinearTagger {
    /// A tagger that only knows the training-data skew. Its prior-sentence
    /// weights are zero, so it ignores the prior.
    pub fn biased_baseline(profile: BiasProfile, encoder: Arc<Encoder>) -> Self {
        LogLinearTagger {
            state: TaggerState {
                kind: TaggerKind::Baseline,
                regime: Regime::Npn,
                profile,
                mode: DecisionMode::Argmax,
                weights: Weights::new(profile.log_odds()),
                seed: 0,
                finetune_epochs: 0,
            },
            encoder,
        }
    }

    /// A tagger that reads the head noun's role off the prior sentence and
    /// otherwise behaves like the baseline.
    pub fn grounding(profile: BiasProfile, encoder: Arc<Encoder>) -> Self {
        let mut tagger = Self::biased_baseline(profile, encoder);
        tagger.state.kind = TaggerKind::Grounding;
        tagger.state.weights.prior_subject = -WEIGHT_CAP;
        tagger.state.weights.prior_object = WEIGHT_CAP;
        tagger
    }

    pub fn from_state(state: TaggerState, encoder: Arc<Encoder>) -> Self {
        LogLinearTagger { state, encoder }
    }

    pub fn from_json(text: &str, encoder: Arc<Encoder>) -> Result<Self, ModelError> {
        Ok(Self::from_state(serde_json::from_str(text)?, encoder))
    }

    pub fn to_json(&self) -> Result<String, ModelError> {
        Ok(serde_json::to_string_pretty(&self.state)?)
    }

    pub fn with_regime(mut self, regime: Regime) -> Self {
        self.state.regime = regime;
        self
    }

    pub fn with_mode(mut self, mode: DecisionMode) -> Self {
        self.state.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.state.seed = seed;
        self
    }

    pub fn state(&self) -> &TaggerState {
        &self.state
    }

    pub(crate) fn state_mut(&mut self) -> &mut TaggerState {
        &mut self.state
    }

    pub fn weights(&self) -> &Weights {
        &self.state.weights
    }

    pub fn encoder(&self) -> &Arc<Encoder> {
        &self.encoder
    }

    pub fn features(&self, input: &TaggerInput) -> Result<Features, ModelError> {
        self.encoder.features(input)
    }

    /// The argmax decision for already computed features.
    pub(crate) fn decide_argmax(&self, features: &Features) -> Reading {
        if features.lexically_blocked() || self.state.weights.score(features) > 0.0 {
            Reading::ObjRel
        } else {
            Reading::SubjRel
        }
    }

    pub fn predict(&self, input: &TaggerInput) -> Result<Reading, ModelError> {
        let features = self.features(input)?;
        if features.lexically_blocked() {
            return Ok(Reading::ObjRel);
        }
        let score = self.state.weights.score(&features);
        Ok(match self.state.mode {
            DecisionMode::Argmax => self.decide_argmax(&features),
            // Scores at the cap are treated as certain.
            DecisionMode::Stochastic if score.abs() >= WEIGHT_CAP => self.decide_argmax(&features),
            DecisionMode::Stochastic => {
                let p_obj = 1.0 / (1.0 + (-score).exp());
                let mut rng = ChaCha8Rng::seed_from_u64(self.state.seed ^ fnv1a(&input.target));
                if rng.random::<f64>() < p_obj {
                    Reading::ObjRel
                } else {
                    Reading::SubjRel
                }
            }
        })
    }
}

impl Tagger for LogLinearTagger {
    fn regime(&self) -> Regime {
        self.state.regime
    }

    fn tag(&self, input: &TaggerInput) -> Result<TaggerOutput, ModelError> {
        Ok(TaggerOutput::for_reading(
            self.state.regime,
            self.predict(input)?,
        ))
    }
}

fn fnv1a(tokens: &[String]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in tokens.join(" ").bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}
