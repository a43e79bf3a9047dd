use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::templates;
use super::ClauseGenError;
use crate::selpref::{ReversibilityClass, SvoTriple};
use crate::typelogic::{Formula, Reading};
use crate::udencoding::{DepTree, RelPosLabel};

/// Which argument of the triple heads the relative clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HeadOrder {
    /// Subject as head noun: `S die O V`.
    SdieOV,
    /// Object as head noun: `O die S V`.
    OdieSV,
}

impl HeadOrder {
    pub const ALL: [HeadOrder; 2] = [HeadOrder::SdieOV, HeadOrder::OdieSV];

    /// The reading lexical preference alone suggests.
    pub fn canonical_reading(self) -> Reading {
        match self {
            HeadOrder::SdieOV => Reading::SubjRel,
            HeadOrder::OdieSV => Reading::ObjRel,
        }
    }
}

impl fmt::Display for HeadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeadOrder::SdieOV => "S die O V",
            HeadOrder::OdieSV => "O die S V",
        })
    }
}

/// Argument order of the prior sentence relative to the triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PriorOrder {
    SVO,
    OVS,
}

impl fmt::Display for PriorOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PriorOrder::SVO => "SVO",
            PriorOrder::OVS => "OVS",
        })
    }
}

/// The reading a prior sentence forces on a target phrase.
pub fn grounded_reading(order: HeadOrder, prior: PriorOrder) -> Reading {
    match prior {
        PriorOrder::SVO => order.canonical_reading(),
        PriorOrder::OVS => order.canonical_reading().other(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestItem {
    pub prior: Option<String>,
    pub target: String,
    pub expected: Reading,
    pub stratum: ReversibilityClass,
    pub order: HeadOrder,
    pub prior_order: Option<PriorOrder>,
    pub triple: SvoTriple,
    pub gold_supertags: Vec<Formula>,
    pub gold_labels: Vec<RelPosLabel>,
}

impl TestItem {
    pub fn target_forms(&self) -> Vec<&str> {
        self.target.split_whitespace().collect()
    }

    /// Gold tree of the target under `reading`.
    pub fn gold_tree(&self, reading: Reading) -> DepTree {
        templates::gold_tree(reading, &self.target_forms())
    }

    pub fn verb(&self) -> &str {
        &self.triple.verb
    }
}

pub fn write_items<W: Write>(mut writer: W, items: &[TestItem]) -> Result<(), ClauseGenError> {
    for item in items {
        serde_json::to_writer(&mut writer, item)?;
        writeln!(writer)?;
    }
    Ok(())
}

pub fn read_items<R: BufRead>(reader: R) -> Result<Vec<TestItem>, ClauseGenError> {
    let mut items = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let item = serde_json::from_str(&line).map_err(|e| ClauseGenError::Schema {
            line: idx + 1,
            message: e.to_string(),
        })?;
        items.push(item);
    }
    Ok(items)
}
