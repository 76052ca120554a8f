// SPDX-License-Identifier: Apache-2.0

//! Seeded generators for test harnesses: random automata, lassos,
//! single-path trees, adversarial perfect subtrees and messy listings.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::body_cardinality;
use crate::automaton::{Builder, TreeAutomaton};
use crate::cb::{perfect_kernel, StreamEntry};
use crate::lasso::Lasso;
use crate::seq::Label;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A trimmed automaton with at most `max_states` states and labels
/// `≤ max_label`; each (state, label) slot carries an edge with probability
/// `density`.
pub fn random_automaton(rng: &mut TestRng, max_states: usize, max_label: Label, density: f64) -> TreeAutomaton {
    let n = rng.gen_range(1..=max_states);
    let mut b = Builder::new();
    let ids: Vec<_> = (0..n).map(|i| b.state(format!("q{i}"))).collect();
    for &s in &ids {
        for l in 0..=max_label {
            if rng.gen_bool(density) {
                let t = ids[rng.gen_range(0..n)];
                b.edge(s, l, t).unwrap();
            }
        }
    }
    b.finish(Some(ids[0]))
}

pub fn random_lasso(rng: &mut TestRng, max_prefix: usize, max_cycle: usize, max_digit: Label) -> Lasso {
    let p: Vec<Label> = (0..rng.gen_range(0..=max_prefix))
        .map(|_| rng.gen_range(0..=max_digit))
        .collect();
    let c: Vec<Label> = (0..rng.gen_range(1..=max_cycle))
        .map(|_| rng.gen_range(0..=max_digit))
        .collect();
    Lasso::new(&p, &c).unwrap()
}

/// A tree whose body is exactly `{p}`, with finite dead branches hanging off
/// the path.
pub fn single_path_tree(rng: &mut TestRng, p: &Lasso, max_label: Label) -> TreeAutomaton {
    let mut b = Builder::new();
    let digits: Vec<Label> = p.prefix().iter().chain(p.cycle().iter()).copied().collect();
    let ids: Vec<_> = (0..digits.len()).map(|i| b.state(format!("p{i}"))).collect();
    for (i, &d) in digits.iter().enumerate() {
        let next = if i + 1 < digits.len() {
            ids[i + 1]
        } else {
            ids[p.prefix().len()]
        };
        b.edge(ids[i], d, next).unwrap();
        if rng.gen_bool(0.4) {
            let l = rng.gen_range(0..=max_label + 1);
            if l != d {
                let dead = b.state(format!("d{i}"));
                b.edge(ids[i], l, dead).unwrap();
                if rng.gen_bool(0.5) {
                    let deeper = b.state(format!("e{i}"));
                    b.edge(dead, 0, deeper).unwrap();
                }
            }
        }
    }
    b.finish(Some(ids[0]))
}

/// Kernel of a random sub-automaton of `t` (each edge dropped with
/// probability `drop`), retried until nonempty.
pub fn adversarial_perfect_subtree(
    rng: &mut TestRng,
    t: &TreeAutomaton,
    drop: f64,
    tries: usize,
) -> Option<TreeAutomaton> {
    let root = t.root()?;
    for _ in 0..tries {
        let mut b = Builder::new();
        let ids: Vec<_> = t.names().iter().map(|n| b.state(n.clone())).collect();
        for (s, l, d) in t.edge_list() {
            if !rng.gen_bool(drop) {
                b.edge(ids[s], l, ids[d]).unwrap();
            }
        }
        let k = perfect_kernel(&b.finish(Some(ids[root])));
        if !k.is_empty() {
            debug_assert_eq!(body_cardinality(&k), crate::CardinalityClass::Continuum);
            return Some(k);
        }
    }
    None
}

/// The flagged entries of `entries`, each repeated up to three times, mixed
/// with placeholders and shuffled.
pub fn messy_listing(rng: &mut TestRng, entries: &[StreamEntry]) -> Vec<StreamEntry> {
    let mut out = Vec::new();
    for e in entries.iter().filter(|e| e.flag) {
        for _ in 0..rng.gen_range(1..=3) {
            out.push(e.clone());
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        out.push(StreamEntry::placeholder());
    }
    out.shuffle(rng);
    out
}
