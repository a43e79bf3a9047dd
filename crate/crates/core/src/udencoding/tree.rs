use std::fmt;

use serde::{Deserialize, Serialize};

use super::UdError;
use crate::typelogic::Formula;

/// Coarse part-of-speech tag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PosTag(String);

impl PosTag {
    pub const ROOT: &'static str = "ROOT";

    pub fn new(tag: impl Into<String>) -> Self {
        PosTag(tag.into())
    }

    /// The sentinel tag of the artificial root.
    pub fn root() -> Self {
        PosTag(Self::ROOT.to_owned())
    }

    pub fn is_root(&self) -> bool {
        self.0 == Self::ROOT
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PosTag {
    fn from(s: &str) -> Self {
        PosTag::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub form: String,
    pub pos: PosTag,
    /// Lemma column; the lowercased form stands in when absent.
    pub lemma: Option<String>,
    /// Gold supertag column, present in held-out evaluation corpora.
    pub supertag: Option<Formula>,
}

impl Token {
    pub fn new(form: impl Into<String>, pos: impl Into<PosTag>) -> Self {
        Token {
            form: form.into(),
            pos: pos.into(),
            lemma: None,
            supertag: None,
        }
    }

    pub fn with_lemma(mut self, lemma: impl Into<String>) -> Self {
        self.lemma = Some(lemma.into());
        self
    }

    pub fn with_supertag(mut self, supertag: Formula) -> Self {
        self.supertag = Some(supertag);
        self
    }

    pub fn lemma(&self) -> String {
        self.lemma
            .clone()
            .unwrap_or_else(|| self.form.to_lowercase())
    }
}

/// A dependency tree. Heads are 1-based token positions, 0 is the artificial root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepTree {
    tokens: Vec<Token>,
    heads: Vec<usize>,
    deprels: Vec<String>,
}

impl DepTree {
    pub fn new(
        tokens: Vec<Token>,
        heads: Vec<usize>,
        deprels: Vec<String>,
    ) -> Result<Self, UdError> {
        let n = tokens.len();
        if n == 0 {
            return Err(UdError::EmptyInput);
        }
        if heads.len() != n || deprels.len() != n {
            return Err(UdError::LengthMismatch {
                expected: n,
                found: heads.len().min(deprels.len()),
            });
        }
        if let Some(pos) = heads.iter().position(|&h| h > n) {
            return Err(UdError::InvalidTree(format!(
                "head of token {} out of range",
                pos + 1
            )));
        }
        let roots = heads.iter().filter(|&&h| h == 0).count();
        if roots != 1 {
            return Err(UdError::InvalidTree(format!("{} root tokens", roots)));
        }
        let tree = DepTree {
            tokens,
            heads,
            deprels,
        };
        if let Some(k) = (0..n).find(|&k| !tree.reaches_root(k)) {
            return Err(UdError::InvalidTree(format!(
                "token {} is on a cycle",
                k + 1
            )));
        }
        Ok(tree)
    }

    fn reaches_root(&self, mut k: usize) -> bool {
        for _ in 0..=self.heads.len() {
            match self.heads[k] {
                0 => return true,
                h => k = h - 1,
            }
        }
        false
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    pub fn deprels(&self) -> &[String] {
        &self.deprels
    }

    pub fn pos_tags(&self) -> Vec<PosTag> {
        self.tokens.iter().map(|t| t.pos.clone()).collect()
    }

    /// 0-based index of the root token.
    pub fn root(&self) -> usize {
        self.heads
            .iter()
            .position(|&h| h == 0)
            .expect("validated tree")
    }

    /// 0-based indices of the dependents of token `k` (0-based).
    pub fn dependents(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.heads
            .iter()
            .enumerate()
            .filter(move |&(_, &h)| h == k + 1)
            .map(|(d, _)| d)
    }
}
