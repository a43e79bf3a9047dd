//! Polarity unfolding and axiom-link search over the implicational skeleton.
//!
//! A sequent `A1, ..., An |- C` is unfolded with every `Ai` negative and the
//! goal `C` positive. Axiom links pair a positive with a negative occurrence
//! of the same atom. A linking is a proof net when every switching of the
//! induced proof structure is acyclic and connected (Danos-Regnier).
//! Implications at negative polarity are tensor links, at positive polarity
//! par links. Modalities are unary nodes and carry no switching.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Atom, Formula, TypeLogicError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedAtom {
    pub atom: Atom,
    pub polarity: Polarity,
    /// Position of the originating formula; the goal comes after all supertags.
    pub source_index: usize,
    pub occurrence_id: usize,
}

/// Lists the atomic occurrences of `formula` left to right.
///
/// Occurrence ids are numbered from zero; use [`Sequent`] for ids that are
/// unique across a whole sequent.
pub fn unfold(formula: &Formula, polarity: Polarity, source_index: usize) -> Vec<PolarizedAtom> {
    let mut out = Vec::new();
    unfold_into(formula, polarity, source_index, &mut out);
    out
}

fn unfold_into(
    formula: &Formula,
    polarity: Polarity,
    source_index: usize,
    out: &mut Vec<PolarizedAtom>,
) {
    match formula {
        Formula::Atomic(atom) => {
            let occurrence_id = out.len();
            out.push(PolarizedAtom {
                atom: atom.clone(),
                polarity,
                source_index,
                occurrence_id,
            });
        }
        Formula::Implication(arg, res) => {
            unfold_into(arg, polarity.flip(), source_index, out);
            unfold_into(res, polarity, source_index, out);
        }
        Formula::Diamond(_, body) | Formula::Box(_, body) => {
            unfold_into(body, polarity, source_index, out)
        }
    }
}

/// One axiom link between a positive and a negative occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Link {
    pub positive: usize,
    pub negative: usize,
}

/// A set of axiom links, kept sorted by positive occurrence id.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AxiomLinking {
    links: Vec<Link>,
}

impl AxiomLinking {
    pub fn new(mut links: Vec<Link>) -> Self {
        links.sort();
        AxiomLinking { links }
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// The negative occurrence linked to `positive`, if any.
    pub fn partner_of_positive(&self, positive: usize) -> Option<usize> {
        self.links
            .binary_search_by_key(&positive, |l| l.positive)
            .ok()
            .map(|i| self.links[i].negative)
    }
}

impl fmt::Display for AxiomLinking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .links
            .iter()
            .map(|l| format!("{}-{}", l.positive, l.negative))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug)]
enum NodeKind {
    Atom,
    Unary,
    Tensor,
    Par,
}

#[derive(Clone, Debug)]
struct ProofStructure {
    kinds: Vec<NodeKind>,
    /// Node of each atomic occurrence, indexed by occurrence id.
    atom_nodes: Vec<usize>,
    /// Edges present in every switching.
    fixed_edges: Vec<(usize, usize)>,
    /// For each par node, its two premise edges.
    par_edges: Vec<[(usize, usize); 2]>,
}

impl ProofStructure {
    fn build(supertags: &[Formula], goal: &Formula) -> Self {
        let mut s = ProofStructure {
            kinds: Vec::new(),
            atom_nodes: Vec::new(),
            fixed_edges: Vec::new(),
            par_edges: Vec::new(),
        };
        for tag in supertags {
            s.add(tag, Polarity::Negative);
        }
        s.add(goal, Polarity::Positive);
        s
    }

    fn add(&mut self, formula: &Formula, polarity: Polarity) -> usize {
        let node = self.kinds.len();
        match formula {
            Formula::Atomic(_) => {
                self.kinds.push(NodeKind::Atom);
                self.atom_nodes.push(node);
            }
            Formula::Diamond(_, body) | Formula::Box(_, body) => {
                self.kinds.push(NodeKind::Unary);
                let child = self.add(body, polarity);
                self.fixed_edges.push((node, child));
            }
            Formula::Implication(arg, res) => {
                let par = polarity == Polarity::Positive;
                self.kinds
                    .push(if par { NodeKind::Par } else { NodeKind::Tensor });
                let left = self.add(arg, polarity.flip());
                let right = self.add(res, polarity);
                if par {
                    self.par_edges.push([(node, left), (node, right)]);
                } else {
                    self.fixed_edges.push((node, left));
                    self.fixed_edges.push((node, right));
                }
            }
        }
        node
    }

    fn node_count(&self) -> usize {
        self.kinds.len()
    }

    /// Danos-Regnier: every switching graph is a tree.
    fn is_correct(&self, linking: &AxiomLinking) -> bool {
        let axiom_edges: Vec<(usize, usize)> = linking
            .links()
            .iter()
            .map(|l| (self.atom_nodes[l.positive], self.atom_nodes[l.negative]))
            .collect();
        let edge_count = self.fixed_edges.len() + self.par_edges.len() + axiom_edges.len();
        if edge_count + 1 != self.node_count() {
            return false;
        }
        // With n - 1 edges, an acyclic switching graph is also connected.
        let switchings = 1u64 << self.par_edges.len();
        (0..switchings).all(|mask| {
            let mut uf = UnionFind::new(self.node_count());
            let selected = self
                .par_edges
                .iter()
                .enumerate()
                .map(|(i, pair)| pair[((mask >> i) & 1) as usize]);
            self.fixed_edges
                .iter()
                .copied()
                .chain(selected)
                .chain(axiom_edges.iter().copied())
                .all(|(a, b)| uf.union(a, b))
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// A sequent of supertags deriving a goal type.
#[derive(Clone, Debug)]
pub struct Sequent {
    supertags: Vec<Formula>,
    goal: Formula,
    atoms: Vec<PolarizedAtom>,
    structure: ProofStructure,
}

impl Sequent {
    pub fn new(supertags: Vec<Formula>, goal: Formula) -> Self {
        let mut atoms = Vec::new();
        for (idx, tag) in supertags.iter().enumerate() {
            unfold_into(tag, Polarity::Negative, idx, &mut atoms);
        }
        unfold_into(&goal, Polarity::Positive, supertags.len(), &mut atoms);
        let structure = ProofStructure::build(&supertags, &goal);
        Sequent {
            supertags,
            goal,
            atoms,
            structure,
        }
    }

    pub fn supertags(&self) -> &[Formula] {
        &self.supertags
    }

    pub fn goal(&self) -> &Formula {
        &self.goal
    }

    /// All atomic occurrences, numbered across the sequent.
    pub fn atoms(&self) -> &[PolarizedAtom] {
        &self.atoms
    }

    pub fn count_check(&self) -> bool {
        let mut balance: BTreeMap<&Atom, i64> = BTreeMap::new();
        for occ in &self.atoms {
            *balance.entry(&occ.atom).or_default() += match occ.polarity {
                Polarity::Positive => 1,
                Polarity::Negative => -1,
            };
        }
        balance.values().all(|&b| b == 0)
    }

    /// True when `linking` is a perfect, atom-respecting matching.
    pub fn is_matching(&self, linking: &AxiomLinking) -> bool {
        let mut seen = vec![false; self.atoms.len()];
        for link in linking.links() {
            let (Some(pos), Some(neg)) =
                (self.atoms.get(link.positive), self.atoms.get(link.negative))
            else {
                return false;
            };
            if pos.polarity != Polarity::Positive
                || neg.polarity != Polarity::Negative
                || pos.atom != neg.atom
                || seen[link.positive]
                || seen[link.negative]
            {
                return false;
            }
            seen[link.positive] = true;
            seen[link.negative] = true;
        }
        seen.iter().all(|&s| s)
    }

    pub fn validate_linking(&self, linking: &AxiomLinking) -> bool {
        self.is_matching(linking) && self.structure.is_correct(linking)
    }

    /// Every valid linking, in lexicographic order of (positive, negative) pairs.
    pub fn enumerate_linkings(&self) -> Result<Vec<AxiomLinking>, TypeLogicError> {
        if !self.count_check() {
            return Err(TypeLogicError::CountMismatch);
        }
        let positives: Vec<usize> = self
            .atoms
            .iter()
            .filter(|a| a.polarity == Polarity::Positive)
            .map(|a| a.occurrence_id)
            .collect();
        let mut used = vec![false; self.atoms.len()];
        let mut current = Vec::with_capacity(positives.len());
        let mut found = Vec::new();
        self.search(&positives, &mut used, &mut current, &mut found);
        Ok(found)
    }

    fn search(
        &self,
        positives: &[usize],
        used: &mut [bool],
        current: &mut Vec<Link>,
        found: &mut Vec<AxiomLinking>,
    ) {
        let Some((&pos, rest)) = positives.split_first() else {
            let linking = AxiomLinking::new(current.clone());
            if self.structure.is_correct(&linking) {
                found.push(linking);
            }
            return;
        };
        let atom = &self.atoms[pos].atom;
        for neg in &self.atoms {
            if neg.polarity == Polarity::Negative && !used[neg.occurrence_id] && &neg.atom == atom {
                used[neg.occurrence_id] = true;
                current.push(Link {
                    positive: pos,
                    negative: neg.occurrence_id,
                });
                self.search(rest, used, current, found);
                current.pop();
                used[neg.occurrence_id] = false;
            }
        }
    }
}

pub fn count_check(supertags: &[Formula], goal: &Formula) -> bool {
    Sequent::new(supertags.to_vec(), goal.clone()).count_check()
}

pub fn enumerate_linkings(
    supertags: &[Formula],
    goal: &Formula,
) -> Result<Vec<AxiomLinking>, TypeLogicError> {
    Sequent::new(supertags.to_vec(), goal.clone()).enumerate_linkings()
}

pub fn validate_linking(linking: &AxiomLinking, sequent: &Sequent) -> bool {
    sequent.validate_linking(linking)
}
