use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Formula, TypeLogicError};

/// Interpretation of a relative clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Reading {
    /// The head noun is the subject of the embedded verb.
    SubjRel,
    /// The head noun is the object of the embedded verb.
    ObjRel,
}

impl Reading {
    pub const ALL: [Reading; 2] = [Reading::SubjRel, Reading::ObjRel];

    pub fn other(self) -> Reading {
        match self {
            Reading::SubjRel => Reading::ObjRel,
            Reading::ObjRel => Reading::SubjRel,
        }
    }

    /// The gap role of the relative pronoun's supertag.
    pub fn gap_role(self) -> &'static str {
        match self {
            Reading::SubjRel => "su",
            Reading::ObjRel => "obj1",
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::SubjRel => "subj-rel",
            Reading::ObjRel => "obj-rel",
        })
    }
}

impl FromStr for Reading {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "subj-rel" | "SubjRel" => Ok(Reading::SubjRel),
            "obj-rel" | "ObjRel" => Ok(Reading::ObjRel),
            other => Err(format!("unknown reading {:?}", other)),
        }
    }
}

/// Reads the interpretation off the relative pronoun's supertag.
///
/// The pronoun type is `dia(relcl, dia(g, VNW) -> S) -> box(mod, NP -> NP)`;
/// the gap role `g` decides the reading.
pub fn extract_reading(pronoun_supertag: &Formula) -> Result<Reading, TypeLogicError> {
    let not_pronoun = || TypeLogicError::NotARelativePronounType(pronoun_supertag.to_string());

    let Formula::Implication(clause, modifier) = pronoun_supertag else {
        return Err(not_pronoun());
    };
    let Formula::Diamond(relcl, body) = clause.as_ref() else {
        return Err(not_pronoun());
    };
    let Formula::Implication(gap, sentence) = body.as_ref() else {
        return Err(not_pronoun());
    };
    let Formula::Diamond(gap_role, gap_type) = gap.as_ref() else {
        return Err(not_pronoun());
    };
    let Formula::Box(mod_role, np_to_np) = modifier.as_ref() else {
        return Err(not_pronoun());
    };
    let shape_ok = relcl.label() == "relcl"
        && is_atom(gap_type, "VNW")
        && is_atom(sentence, "S")
        && mod_role.label() == "mod"
        && matches!(np_to_np.as_ref(), Formula::Implication(a, b) if is_atom(a, "NP") && is_atom(b, "NP"));
    if !shape_ok {
        return Err(not_pronoun());
    }
    match gap_role.label() {
        "su" => Ok(Reading::SubjRel),
        "obj1" => Ok(Reading::ObjRel),
        other => Err(TypeLogicError::UnknownGapRole(other.to_owned())),
    }
}

fn is_atom(formula: &Formula, name: &str) -> bool {
    matches!(formula, Formula::Atomic(a) if a.name() == name)
}
