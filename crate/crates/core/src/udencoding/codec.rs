//! Relative part-of-speech encoding of dependency trees.
//!
//! Every token gets a label `(i, p, d)`: its head is the `|i|`-th token
//! tagged `p` to the right (`i > 0`) or left (`i < 0`), attached with
//! relation `d`. The root token is labelled `(-1, ROOT, root)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DepTree, PosTag, Token, UdError};
use crate::typelogic::Reading;

/// Relation given to tokens re-attached by the repair step.
pub const REPAIR_RELATION: &str = "dep";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelPosLabel {
    pub offset: i32,
    pub head_pos: PosTag,
    pub deprel: String,
}

impl RelPosLabel {
    pub fn new(offset: i32, head_pos: impl Into<PosTag>, deprel: impl Into<String>) -> Self {
        RelPosLabel {
            offset,
            head_pos: head_pos.into(),
            deprel: deprel.into(),
        }
    }

    pub fn root() -> Self {
        RelPosLabel::new(-1, PosTag::root(), "root")
    }

    pub fn is_root_marker(&self) -> bool {
        self.offset == -1 && self.head_pos.is_root()
    }
}

impl fmt::Display for RelPosLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:+},{},{})", self.offset, self.head_pos, self.deprel)
    }
}

pub fn encode(tree: &DepTree) -> Vec<RelPosLabel> {
    let tokens = tree.tokens();
    tree.heads()
        .iter()
        .zip(tree.deprels())
        .enumerate()
        .map(|(k, (&head, deprel))| {
            if head == 0 {
                return RelPosLabel::new(-1, PosTag::root(), deprel.clone());
            }
            let h = head - 1;
            let pos = &tokens[h].pos;
            let offset = if h > k {
                tokens[k + 1..=h].iter().filter(|t| &t.pos == pos).count() as i32
            } else {
                -(tokens[h..k].iter().filter(|t| &t.pos == pos).count() as i32)
            };
            RelPosLabel::new(offset, pos.clone(), deprel.clone())
        })
        .collect()
}

/// Resolves a label to a 0-based head index, `None` if no such token exists.
fn resolve(k: usize, label: &RelPosLabel, tokens: &[Token]) -> Option<usize> {
    if label.head_pos.is_root() || label.offset == 0 {
        return None;
    }
    let wanted = label.offset.unsigned_abs() as usize;
    let matches = |j: &usize| tokens[*j].pos == label.head_pos;
    if label.offset > 0 {
        (k + 1..tokens.len()).filter(matches).nth(wanted - 1)
    } else {
        (0..k).rev().filter(matches).nth(wanted - 1)
    }
}

/// A decoded tree with the tokens whose attachment was repaired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub tree: DepTree,
    pub repaired: Vec<bool>,
}

impl Decoded {
    pub fn repair_count(&self) -> usize {
        self.repaired.iter().filter(|&&r| r).count()
    }
}

/// Inverts [`encode`], repairing labels that do not yield a tree.
///
/// Unresolvable labels attach to the root token with relation `dep`. The
/// first root marker wins and later ones are re-attached to it; without any
/// root marker the first token becomes the root. Remaining cycles are
/// broken by re-attaching their lowest token to the root.
pub fn decode(labels: &[RelPosLabel], tokens: &[Token]) -> Result<Decoded, UdError> {
    if labels.is_empty() || tokens.is_empty() {
        return Err(UdError::EmptyInput);
    }
    if labels.len() != tokens.len() {
        return Err(UdError::LengthMismatch {
            expected: tokens.len(),
            found: labels.len(),
        });
    }
    let n = tokens.len();
    let mut repaired = vec![false; n];
    let mut deprels: Vec<String> = labels.iter().map(|l| l.deprel.clone()).collect();
    let mut heads: Vec<Option<usize>> = vec![None; n];

    let root = match labels.iter().position(RelPosLabel::is_root_marker) {
        Some(r) => r,
        None => {
            repaired[0] = true;
            deprels[0] = "root".to_owned();
            0
        }
    };
    for (k, label) in labels.iter().enumerate() {
        if k == root {
            continue;
        }
        match resolve(k, label, tokens) {
            Some(h) if !label.is_root_marker() => heads[k] = Some(h + 1),
            _ => {
                heads[k] = Some(root + 1);
                deprels[k] = REPAIR_RELATION.to_owned();
                repaired[k] = true;
            }
        }
    }
    heads[root] = Some(0);
    let mut heads: Vec<usize> = heads.into_iter().map(|h| h.expect("assigned")).collect();

    while let Some(cycle_start) = (0..n).find(|&k| !reaches_root(&heads, k)) {
        let cycle = cycle_from(&heads, cycle_start);
        let lowest = *cycle.iter().min().expect("nonempty cycle");
        heads[lowest] = root + 1;
        deprels[lowest] = REPAIR_RELATION.to_owned();
        repaired[lowest] = true;
    }

    let tree = DepTree::new(tokens.to_vec(), heads, deprels)?;
    Ok(Decoded { tree, repaired })
}

fn reaches_root(heads: &[usize], mut k: usize) -> bool {
    for _ in 0..=heads.len() {
        match heads[k] {
            0 => return true,
            h => k = h - 1,
        }
    }
    false
}

/// The cycle reached by following heads from `start`.
fn cycle_from(heads: &[usize], start: usize) -> Vec<usize> {
    let mut k = start;
    // After n steps we are guaranteed to be on the cycle.
    for _ in 0..heads.len() {
        k = heads[k] - 1;
    }
    let mut cycle = vec![k];
    let mut j = heads[k] - 1;
    while j != k {
        cycle.push(j);
        j = heads[j] - 1;
    }
    cycle
}

/// Reads the interpretation off the relative pronoun's label.
pub fn extract_reading_ud(
    labels: &[RelPosLabel],
    pronoun_index: usize,
) -> Result<Reading, UdError> {
    let label = labels.get(pronoun_index).ok_or(UdError::IndexOutOfRange {
        index: pronoun_index,
        len: labels.len(),
    })?;
    match label.deprel.as_str() {
        "nsubj" => Ok(Reading::SubjRel),
        "obj" => Ok(Reading::ObjRel),
        other => Err(UdError::UnknownPronounRelation(other.to_owned())),
    }
}
