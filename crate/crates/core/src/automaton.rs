// SPDX-License-Identifier: Apache-2.0

//! Deterministic automata whose accepted words form a tree on ℕ.
//!
//! Every state accepts, so the language `{σ : a run on σ exists}` is
//! prefix-closed and contains `⟨⟩` whenever a root exists. The automaton with
//! no root denotes the empty set of sequences; it arises from pruning a
//! well-founded tree.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::AutomatonError;
use crate::lasso::Lasso;
use crate::seq::Label;

pub type StateId = usize;

#[derive(Clone, Debug)]
pub struct TreeAutomaton {
    names: Vec<String>,
    edges: Vec<BTreeMap<Label, StateId>>,
    root: Option<StateId>,
}

/// Incremental construction; [`Builder::finish`] drops unreachable states.
#[derive(Debug, Default)]
pub struct Builder {
    names: Vec<String>,
    index: BTreeMap<String, StateId>,
    edges: Vec<BTreeMap<Label, StateId>>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the state named `name`, creating it if needed.
    pub fn state(&mut self, name: impl Into<String>) -> StateId {
        let name = name.into();
        if let Some(&id) = self.index.get(&name) {
            return id;
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.edges.push(BTreeMap::new());
        id
    }

    pub fn edge(&mut self, from: StateId, label: Label, to: StateId) -> Result<(), AutomatonError> {
        match self.edges[from].get(&label) {
            Some(&existing) if existing != to => Err(AutomatonError::Nondeterministic {
                state: self.names[from].clone(),
                label,
            }),
            _ => {
                self.edges[from].insert(label, to);
                Ok(())
            }
        }
    }

    pub fn finish(self, root: Option<StateId>) -> TreeAutomaton {
        let raw = TreeAutomaton {
            names: self.names,
            edges: self.edges,
            root,
        };
        let keep = vec![true; raw.names.len()];
        raw.restrict(&keep)
    }
}

impl TreeAutomaton {
    /// The automaton accepting no sequence at all.
    pub fn empty() -> Self {
        TreeAutomaton {
            names: Vec::new(),
            edges: Vec::new(),
            root: None,
        }
    }

    /// Strict constructor for external input: rejects duplicate names,
    /// unknown endpoints, nondeterminism and unreachable states.
    pub fn from_parts(
        states: &[String],
        root: Option<&str>,
        edges: &[(String, Label, String)],
    ) -> Result<Self, AutomatonError> {
        let mut index = BTreeMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(AutomatonError::DuplicateState(s.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| AutomatonError::UnknownState(s.into()))
        };
        let root = match root {
            Some(r) => Some(lookup(r)?),
            None if states.is_empty() => None,
            None => return Err(AutomatonError::MissingRoot),
        };
        let mut table = vec![BTreeMap::new(); states.len()];
        for (from, label, to) in edges {
            let f = lookup(from)?;
            let t = lookup(to)?;
            if table[f].insert(*label, t).is_some() {
                return Err(AutomatonError::Nondeterministic {
                    state: from.clone(),
                    label: *label,
                });
            }
        }
        let aut = TreeAutomaton {
            names: states.to_vec(),
            edges: table,
            root,
        };
        let reach = aut.reachable();
        if let Some(i) = reach.iter().position(|r| !r) {
            return Err(AutomatonError::Unreachable(aut.names[i].clone()));
        }
        Ok(aut)
    }

    pub fn root(&self) -> Option<StateId> {
        self.root
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(BTreeMap::len).sum()
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self, s: StateId) -> &BTreeMap<Label, StateId> {
        &self.edges[s]
    }

    pub fn step(&self, s: StateId, label: Label) -> Option<StateId> {
        self.edges[s].get(&label).copied()
    }

    /// All edges as `(from, label, to)` in state-then-label order.
    pub fn edge_list(&self) -> impl Iterator<Item = (StateId, Label, StateId)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(s, m)| m.iter().map(move |(&l, &t)| (s, l, t)))
    }

    pub fn run_from(&self, s: StateId, word: &[Label]) -> Option<StateId> {
        word.iter().try_fold(s, |q, &l| self.step(q, l))
    }

    /// State reached by reading `word` from the root.
    pub fn run(&self, word: &[Label]) -> Option<StateId> {
        self.run_from(self.root?, word)
    }

    /// `σ ∈ T`.
    pub fn member(&self, word: &[Label]) -> bool {
        self.run(word).is_some()
    }

    /// `T_σ` re-rooted: the automaton for `{τ : σ⌢τ ∈ T}`.
    pub fn subtree(&self, sigma: &[Label]) -> Result<TreeAutomaton, AutomatonError> {
        let s = self.run(sigma).ok_or(AutomatonError::NotInTree)?;
        Ok(self.rerooted(s))
    }

    pub fn rerooted(&self, s: StateId) -> TreeAutomaton {
        let raw = TreeAutomaton {
            names: self.names.clone(),
            edges: self.edges.clone(),
            root: Some(s),
        };
        raw.restrict(&vec![true; self.names.len()])
    }

    pub fn is_binary(&self) -> bool {
        self.edges.iter().all(|m| m.keys().all(|&l| l <= 1))
    }

    pub fn max_label(&self) -> Option<Label> {
        self.edges.iter().filter_map(|m| m.keys().next_back().copied()).max()
    }

    /// Whether every finite prefix of `p` is accepted, i.e. `p ∈ [T]`.
    pub fn accepts_lasso(&self, p: &Lasso) -> bool {
        let Some(start) = self.run(p.prefix()) else {
            return false;
        };
        let mut seen = BTreeSet::new();
        let mut s = start;
        while seen.insert(s) {
            match self.run_from(s, p.cycle()) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.names.len()];
        if let Some(r) = self.root {
            let mut queue = VecDeque::from([r]);
            seen[r] = true;
            while let Some(s) = queue.pop_front() {
                for &t in self.edges[s].values() {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    /// Keeps only the states marked in `keep` (and edges between them) that
    /// stay reachable from the root; state names are preserved and ids are
    /// renumbered in breadth-first order.
    pub fn restrict(&self, keep: &[bool]) -> TreeAutomaton {
        let Some(root) = self.root.filter(|&r| keep[r]) else {
            return TreeAutomaton::empty();
        };
        let mut new_id: BTreeMap<StateId, StateId> = BTreeMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([root]);
        new_id.insert(root, 0);
        order.push(root);
        while let Some(s) = queue.pop_front() {
            for &t in self.edges[s].values() {
                if keep[t] && !new_id.contains_key(&t) {
                    new_id.insert(t, order.len());
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let names = order.iter().map(|&s| self.names[s].clone()).collect();
        let edges = order
            .iter()
            .map(|&s| {
                self.edges[s]
                    .iter()
                    .filter_map(|(&l, t)| new_id.get(t).map(|&nt| (l, nt)))
                    .collect()
            })
            .collect();
        TreeAutomaton {
            names,
            edges,
            root: Some(0),
        }
    }

    /// Copies every state into `b` under `prefix` + name and returns the id
    /// map; used by the tree constructors.
    pub(crate) fn copy_into(&self, b: &mut Builder, prefix: &str) -> Vec<StateId> {
        let ids: Vec<StateId> = self
            .names
            .iter()
            .map(|n| {
                let mut s = String::from(prefix);
                s.push_str(n);
                b.state(s)
            })
            .collect();
        for (s, l, t) in self.edge_list() {
            b.edge(ids[s], l, ids[t]).expect("copy of a deterministic automaton");
        }
        ids
    }
}

/// Language equality, decided on the product of the two automata: reachable
/// state pairs must offer identical label sets.
pub fn tree_equal(a: &TreeAutomaton, b: &TreeAutomaton) -> bool {
    product_check(a, b, |x, y| x.len() == y.len() && x.keys().eq(y.keys()))
}

/// Language inclusion `L(a) ⊆ L(b)`.
pub fn tree_included(a: &TreeAutomaton, b: &TreeAutomaton) -> bool {
    match (a.root, b.root) {
        (None, _) => true,
        (Some(_), None) => false,
        _ => product_check(a, b, |x, y| x.keys().all(|l| y.contains_key(l))),
    }
}

fn product_check(
    a: &TreeAutomaton,
    b: &TreeAutomaton,
    compatible: impl Fn(&BTreeMap<Label, StateId>, &BTreeMap<Label, StateId>) -> bool,
) -> bool {
    let (ra, rb) = match (a.root, b.root) {
        (None, None) => return true,
        (Some(x), Some(y)) => (x, y),
        _ => return false,
    };
    let mut seen = BTreeSet::from([(ra, rb)]);
    let mut queue = VecDeque::from([(ra, rb)]);
    while let Some((p, q)) = queue.pop_front() {
        let (ep, eq) = (&a.edges[p], &b.edges[q]);
        if !compatible(ep, eq) {
            return false;
        }
        for (l, &pt) in ep {
            if let Some(&qt) = eq.get(l) {
                if seen.insert((pt, qt)) {
                    queue.push_back((pt, qt));
                }
            }
        }
    }
    true
}
