use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::item::TestItem;
use super::ClauseGenError;

/// Train/dev/test proportions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitRatios {
    pub train: f64,
    pub dev: f64,
    pub test: f64,
}

impl SplitRatios {
    pub fn new(train: f64, dev: f64, test: f64) -> Result<Self, ClauseGenError> {
        let ratios = SplitRatios { train, dev, test };
        let parts = ratios.as_array();
        if parts.iter().any(|r| !r.is_finite() || *r <= 0.0)
            || (parts.iter().sum::<f64>() - 1.0).abs() > 1e-6
        {
            return Err(ClauseGenError::InvalidRatios(format!(
                "{} {} {}",
                train, dev, test
            )));
        }
        Ok(ratios)
    }

    fn as_array(&self) -> [f64; 3] {
        [self.train, self.dev, self.test]
    }
}

impl Default for SplitRatios {
    fn default() -> Self {
        SplitRatios {
            train: 0.21,
            dev: 0.35,
            test: 0.44,
        }
    }
}

impl std::str::FromStr for SplitRatios {
    type Err = ClauseGenError;

    /// Parses `train,dev,test`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ClauseGenError::InvalidRatios(s.to_owned()))?;
        match parts[..] {
            [train, dev, test] => SplitRatios::new(train, dev, test),
            _ => Err(ClauseGenError::InvalidRatios(s.to_owned())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train: Vec<TestItem>,
    pub dev: Vec<TestItem>,
    pub test: Vec<TestItem>,
    pub seed: u64,
}

impl SplitSpec {
    pub fn parts(&self) -> [&[TestItem]; 3] {
        [&self.train, &self.dev, &self.test]
    }
}

/// Partitions items so that every verb lands in exactly one split.
///
/// Verbs are visited in a seeded random order and assigned greedily until
/// each split's cumulative item share is reached. Every split receives at
/// least one verb.
pub fn split_by_verb(
    items: Vec<TestItem>,
    ratios: SplitRatios,
    seed: u64,
) -> Result<SplitSpec, ClauseGenError> {
    let mut by_verb: BTreeMap<String, Vec<TestItem>> = BTreeMap::new();
    for item in items {
        by_verb
            .entry(item.triple.verb.clone())
            .or_default()
            .push(item);
    }
    if by_verb.len() < 3 {
        return Err(ClauseGenError::TooFewVerbs(by_verb.len()));
    }
    let total: usize = by_verb.values().map(Vec::len).sum();
    let mut groups: Vec<Vec<TestItem>> = by_verb.into_values().collect();
    groups.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let shares = ratios.as_array();
    let mut cumulative_target = [0.0; 3];
    let mut acc = 0.0;
    for (k, share) in shares.iter().enumerate() {
        acc += share * total as f64;
        cumulative_target[k] = acc;
    }

    let mut splits: [Vec<TestItem>; 3] = Default::default();
    let mut assigned = 0usize;
    let mut k = 0usize;
    let n = groups.len();
    for (i, group) in groups.into_iter().enumerate() {
        let remaining = n - i;
        if k < 2
            && !splits[k].is_empty()
            && (assigned as f64 >= cumulative_target[k] || remaining == 2 - k)
        {
            k += 1;
        }
        assigned += group.len();
        splits[k].extend(group);
    }
    let [train, dev, test] = splits;
    Ok(SplitSpec {
        train,
        dev,
        test,
        seed,
    })
}
