// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use cbtree::oracle::Budget;
use cbtree::{Builder, Label, Lasso, TreeAutomaton};
use proptest::prelude::*;

/// Automata with up to `max_states` states and labels `≤ max_label`.
/// Conflicting edges are dropped, keeping the first.
pub fn automaton(max_states: usize, max_label: Label) -> impl Strategy<Value = TreeAutomaton> {
    (1..=max_states).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..=max_label, 0..n), 0..=3 * n).prop_map(move |edges| {
            let mut b = Builder::new();
            let ids: Vec<_> = (0..n).map(|i| b.state(format!("q{i}"))).collect();
            for (f, l, t) in edges {
                let _ = b.edge(ids[f], l, ids[t]);
            }
            b.finish(Some(ids[0]))
        })
    })
}

pub fn lasso(max_len: usize, max_digit: Label) -> impl Strategy<Value = Lasso> {
    (
        proptest::collection::vec(0..=max_digit, 0..=max_len),
        proptest::collection::vec(0..=max_digit, 1..=max_len),
    )
        .prop_map(|(p, c)| Lasso::new(&p, &c).unwrap())
}

/// Budget suited to brute-forcing `t`: every label plus one dead sibling.
pub fn budget(t: &TreeAutomaton) -> Budget {
    Budget {
        width: t.max_label().map_or(1, |m| m + 2),
        horizon: t.state_count().max(1),
    }
}

/// All sequences of length `len` over digits `< width`.
pub fn all_words(len: usize, width: Label) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..width).map(move |d| {
                    let mut v = w.clone();
                    v.push(d);
                    v
                })
            })
            .collect();
    }
    out
}

/// A language-equal automaton with every state doubled, for checking that
/// constructions depend only on the tree and not on its presentation.
pub fn unroll(t: &TreeAutomaton) -> TreeAutomaton {
    let mut b = Builder::new();
    let n = t.state_count();
    let ids: Vec<_> = (0..2 * n).map(|i| b.state(format!("{}~{}", t.name(i % n), i / n))).collect();
    for s in 0..n {
        for (&l, &u) in t.edges(s) {
            b.edge(ids[s], l, ids[n + u]).unwrap();
            b.edge(ids[n + s], l, ids[u]).unwrap();
        }
    }
    b.finish(t.root().map(|r| ids[r]))
}
