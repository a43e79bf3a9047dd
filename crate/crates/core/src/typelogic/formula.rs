use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TypeLogicError;

/// An atomic type such as `N`, `NP`, `S` or the gap type `VNW`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Dependency role carried by a unary modality (`det`, `su`, `obj1`, ...).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DepRole(String);

impl DepRole {
    pub fn new(label: impl Into<String>) -> Self {
        DepRole(label.into())
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for DepRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A multimodal type-logical formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atomic(Atom),
    /// `argument -> result`: consumes an `argument` to produce a `result`.
    Implication(Box<Formula>, Box<Formula>),
    /// Complement marking assigned by a head.
    Diamond(DepRole, Box<Formula>),
    /// Adjunct projection of a role.
    Box(DepRole, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atomic(Atom::new(name))
    }

    pub fn implies(argument: Formula, result: Formula) -> Self {
        Formula::Implication(Box::new(argument), Box::new(result))
    }

    pub fn diamond(role: impl Into<String>, body: Formula) -> Self {
        Formula::Diamond(DepRole::new(role), Box::new(body))
    }

    pub fn boxed(role: impl Into<String>, body: Formula) -> Self {
        Formula::Box(DepRole::new(role), Box::new(body))
    }

    /// Height of the formula tree; an atom has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atomic(_) => 1,
            Formula::Implication(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Diamond(_, body) | Formula::Box(_, body) => 1 + body.depth(),
        }
    }

    /// Parses without checking identifiers against an inventory.
    pub fn parse_unchecked(text: &str) -> Result<Formula, TypeLogicError> {
        Parser::new(text, None).parse()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atomic(atom) => write!(f, "{}", atom),
            Formula::Implication(arg, res) => {
                if matches!(**arg, Formula::Implication(..)) {
                    write!(f, "({}) -> {}", arg, res)
                } else {
                    write!(f, "{} -> {}", arg, res)
                }
            }
            Formula::Diamond(role, body) => write!(f, "dia({}, {})", role, body),
            Formula::Box(role, body) => write!(f, "box({}, {})", role, body),
        }
    }
}

impl FromStr for Formula {
    type Err = TypeLogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse_unchecked(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Formula::parse_unchecked(&text).map_err(serde::de::Error::custom)
    }
}

/// The closed atom and role inventories of a grammar.
///
/// The file format has an `[atoms]` and a `[roles]` section, one
/// identifier per line. Blank lines and `#` comments are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrammarConfig {
    atoms: BTreeSet<String>,
    roles: BTreeSet<String>,
}

const DEFAULT_GRAMMAR: &str = include_str!("../../data/grammar.cfg");

impl Default for GrammarConfig {
    fn default() -> Self {
        GrammarConfig::from_str(DEFAULT_GRAMMAR).expect("bundled grammar config is valid")
    }
}

impl GrammarConfig {
    pub fn new<A, R>(atoms: A, roles: R) -> Result<Self, TypeLogicError>
    where
        A: IntoIterator,
        A::Item: Into<String>,
        R: IntoIterator,
        R::Item: Into<String>,
    {
        let config = GrammarConfig {
            atoms: atoms.into_iter().map(Into::into).collect(),
            roles: roles.into_iter().map(Into::into).collect(),
        };
        for required in ["su", "obj1"] {
            if !config.roles.contains(required) {
                return Err(TypeLogicError::MissingRequiredRole(required.to_owned()));
            }
        }
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TypeLogicError> {
        let text = fs::read_to_string(path)?;
        text.parse()
    }

    pub fn has_atom(&self, name: &str) -> bool {
        self.atoms.contains(name)
    }

    pub fn has_role(&self, label: &str) -> bool {
        self.roles.contains(label)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(String::as_str)
    }

    pub fn roles(&self) -> impl Iterator<Item = &str> {
        self.roles.iter().map(String::as_str)
    }

    /// Parses formula notation, validating identifiers against this inventory.
    pub fn parse_formula(&self, text: &str) -> Result<Formula, TypeLogicError> {
        Parser::new(text, Some(self)).parse()
    }
}

impl FromStr for GrammarConfig {
    type Err = TypeLogicError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        enum Section {
            None,
            Atoms,
            Roles,
        }
        let mut section = Section::None;
        let mut atoms = Vec::new();
        let mut roles = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line {
                "[atoms]" => section = Section::Atoms,
                "[roles]" => section = Section::Roles,
                _ => {
                    if !is_identifier(line) {
                        return Err(TypeLogicError::Config {
                            line: idx + 1,
                            message: format!("not an identifier: {:?}", line),
                        });
                    }
                    match section {
                        Section::Atoms => atoms.push(line.to_owned()),
                        Section::Roles => roles.push(line.to_owned()),
                        Section::None => {
                            return Err(TypeLogicError::Config {
                                line: idx + 1,
                                message: "entry outside of [atoms]/[roles]".to_owned(),
                            })
                        }
                    }
                }
            }
        }
        GrammarConfig::new(atoms, roles)
    }
}

/// Parses formula notation against the default inventory.
pub fn parse_formula(text: &str) -> Result<Formula, TypeLogicError> {
    GrammarConfig::default().parse_formula(text)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == ':'
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_ident_char)
}

// Recursive descent over:
//   formula := unary ("->" formula)?
//   unary   := "dia" "(" ident "," formula ")" | "box" "(" ident "," formula ")"
//            | "(" formula ")" | ident
struct Parser<'a> {
    text: &'a str,
    pos: usize,
    inventory: Option<&'a GrammarConfig>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, inventory: Option<&'a GrammarConfig>) -> Self {
        Parser {
            text,
            pos: 0,
            inventory,
        }
    }

    fn parse(mut self) -> Result<Formula, TypeLogicError> {
        let formula = self.formula()?;
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.syntax("trailing input"));
        }
        Ok(formula)
    }

    fn syntax(&self, message: &str) -> TypeLogicError {
        TypeLogicError::Syntax {
            position: self.pos,
            message: message.to_owned(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), TypeLogicError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", token)))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), TypeLogicError> {
        self.skip_ws();
        let start = self.pos;
        let len: usize = self
            .rest()
            .chars()
            .take_while(|&c| is_ident_char(c))
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return Err(self.syntax("expected identifier"));
        }
        self.pos += len;
        Ok((start, &self.text[start..self.pos]))
    }

    fn formula(&mut self) -> Result<Formula, TypeLogicError> {
        let argument = self.unary()?;
        if self.eat("->") {
            let result = self.formula()?;
            Ok(Formula::implies(argument, result))
        } else {
            Ok(argument)
        }
    }

    fn unary(&mut self) -> Result<Formula, TypeLogicError> {
        if self.eat("(") {
            let inner = self.formula()?;
            self.expect(")")?;
            return Ok(inner);
        }
        let (start, name) = self.ident()?;
        let modal = matches!(name, "dia" | "box");
        if modal && self.eat("(") {
            let (role_pos, role) = self.ident()?;
            if let Some(inv) = self.inventory {
                if !inv.has_role(role) {
                    return Err(TypeLogicError::UnknownRole {
                        role: role.to_owned(),
                        position: role_pos,
                    });
                }
            }
            self.expect(",")?;
            let body = self.formula()?;
            self.expect(")")?;
            return Ok(if name == "dia" {
                Formula::diamond(role, body)
            } else {
                Formula::boxed(role, body)
            });
        }
        if let Some(inv) = self.inventory {
            if !inv.has_atom(name) {
                return Err(TypeLogicError::UnknownAtom {
                    atom: name.to_owned(),
                    position: start,
                });
            }
        }
        Ok(Formula::atom(name))
    }
}
