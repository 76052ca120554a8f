// SPDX-License-Identifier: Apache-2.0

//! Nondeterministic tree descriptions and their subset construction. Every
//! state accepts, so the determinised automaton accepts a word iff some run
//! on it exists.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::automaton::{Builder, StateId, TreeAutomaton};
use crate::seq::Label;

#[derive(Debug, Default)]
pub(crate) struct Nfa {
    names: Vec<String>,
    edges: Vec<BTreeMap<Label, BTreeSet<usize>>>,
}

impl Nfa {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.edges.push(BTreeMap::new());
        self.names.len() - 1
    }

    pub fn edge(&mut self, from: usize, label: Label, to: usize) {
        self.edges[from].entry(label).or_default().insert(to);
    }

    /// Copies a deterministic automaton in and returns the id map.
    pub fn embed(&mut self, aut: &TreeAutomaton, prefix: &str) -> Vec<usize> {
        let ids: Vec<usize> = aut
            .names()
            .iter()
            .map(|n| {
                let mut s = String::from(prefix);
                s.push_str(n);
                self.state(s)
            })
            .collect();
        for (s, l, t) in aut.edge_list() {
            self.edge(ids[s], l, ids[t]);
        }
        ids
    }

    /// Adds the out-edges of `src` to `dst`, as if `dst` could silently
    /// continue from `src`.
    pub fn merge_edges(&mut self, dst: usize, src: usize) {
        let extra = self.edges[src].clone();
        for (l, ts) in extra {
            self.edges[dst].entry(l).or_default().extend(ts);
        }
    }

    pub fn determinize(&self, start: usize) -> TreeAutomaton {
        let mut b = Builder::new();
        let mut ids: BTreeMap<BTreeSet<usize>, StateId> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let name = |set: &BTreeSet<usize>| {
            let mut s = String::from("{");
            for (i, &q) in set.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&self.names[q]);
            }
            s.push('}');
            s
        };
        let first = BTreeSet::from([start]);
        let root = b.state(name(&first));
        ids.insert(first.clone(), root);
        queue.push_back(first);
        while let Some(set) = queue.pop_front() {
            let from = ids[&set];
            let mut succ: BTreeMap<Label, BTreeSet<usize>> = BTreeMap::new();
            for &q in &set {
                for (&l, ts) in &self.edges[q] {
                    succ.entry(l).or_default().extend(ts);
                }
            }
            for (l, target) in succ {
                let to = match ids.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = b.state(name(&target));
                        ids.insert(target.clone(), id);
                        queue.push_back(target);
                        id
                    }
                };
                b.edge(from, l, to).expect("one target set per label");
            }
        }
        b.finish(Some(root))
    }
}
