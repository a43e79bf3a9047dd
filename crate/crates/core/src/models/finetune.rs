use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{LogLinearTagger, ModelError, TaggerInput};
use crate::clausegen::TestItem;
use crate::typelogic::Reading;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinetuneConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
}

impl Default for FinetuneConfig {
    fn default() -> Self {
        FinetuneConfig {
            epochs: 5,
            learning_rate: 2.0,
            seed: 0,
        }
    }
}

/// Fails if any verb occurs in both item sets.
pub fn check_leakage(train: &[TestItem], eval: &[TestItem]) -> Result<(), ModelError> {
    let train_verbs: BTreeSet<&str> = train.iter().map(TestItem::verb).collect();
    let shared: BTreeSet<&str> = eval
        .iter()
        .map(TestItem::verb)
        .filter(|v| train_verbs.contains(v))
        .collect();
    if shared.is_empty() {
        Ok(())
    } else {
        Err(ModelError::Leakage(
            shared.into_iter().map(str::to_owned).collect(),
        ))
    }
}

/// Perceptron updates of the decision weights on grounded training items.
///
/// Items are visited in a freshly shuffled order each epoch. Only the
/// decision layer changes; encoder features stay as they are.
pub fn finetune(
    tagger: &LogLinearTagger,
    train_items: &[TestItem],
    eval_items: &[TestItem],
    config: &FinetuneConfig,
) -> Result<LogLinearTagger, ModelError> {
    check_leakage(train_items, eval_items)?;
    let mut tuned = tagger.clone();
    let examples = train_items
        .iter()
        .map(|item| {
            Ok((
                tuned.features(&TaggerInput::from_item(item, true))?,
                item.expected,
            ))
        })
        .collect::<Result<Vec<_>, ModelError>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..examples.len()).collect();
    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        let mut mistakes = 0usize;
        for &i in &order {
            let (features, expected) = &examples[i];
            if tuned.decide_argmax(features) == *expected {
                continue;
            }
            mistakes += 1;
            let direction = match expected {
                Reading::ObjRel => 1.0,
                Reading::SubjRel => -1.0,
            };
            tuned
                .state_mut()
                .weights
                .update(features, direction * config.learning_rate);
        }
        log::debug!("finetune epoch {}: {} mistakes", epoch + 1, mistakes);
    }
    tuned.state_mut().finetune_epochs += config.epochs;
    Ok(tuned)
}
