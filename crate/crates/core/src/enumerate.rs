// SPDX-License-Identifier: Apache-2.0

//! Canonical enumeration of the eventually periodic paths of a countable
//! region of an automaton.
//!
//! Every path whose run eventually stays among countable states is a lasso
//! `u·c^ω` whose cycle `c` is the primitive root of a rotation of the label
//! word of some simple cycle. Nodes `u` are visited in code order; each node
//! emits the paths whose normal-form prefix is exactly `u`, in code order of
//! the cycle. The order on emitted lassos is therefore the canonical one.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::analysis::{self, classify_states, CardinalityClass};
use crate::automaton::{StateId, TreeAutomaton};
use crate::error::AnalysisError;
use crate::lasso::Lasso;
use crate::seq::{self, ByCode, FinSeq, Label};

/// Lazy canonical enumeration of the paths whose eventual cycle lies in a
/// forward-closed region of countable live states.
#[derive(Clone, Debug)]
pub struct PointEnumerator<'a> {
    aut: &'a TreeAutomaton,
    region: Vec<bool>,
    /// States that can reach the region.
    relevant: Vec<bool>,
    /// Candidate primitive cycles, sorted by code.
    cycles: Vec<FinSeq>,
    frontier: BinaryHeap<Reverse<(ByCode, StateId)>>,
    ready: Vec<Lasso>,
    remaining: Option<u128>,
}

impl<'a> PointEnumerator<'a> {
    /// `region` must be closed under live successors and contain only
    /// states of countable class; `total` is the number of paths to emit
    /// (`None` for infinitely many).
    pub(crate) fn new(aut: &'a TreeAutomaton, region: Vec<bool>, total: Option<u128>) -> Self {
        let n = aut.state_count();
        let g = analysis::sccs(aut, &region);
        let mut words: BTreeSet<ByCode> = BTreeSet::new();
        for (c, comp) in g.comps.iter().enumerate() {
            if !g.nontrivial(c) {
                continue;
            }
            debug_assert!(!g.heavy(c), "region must be countable");
            let start = comp[0];
            let mut labels = Vec::new();
            let mut s = start;
            loop {
                let (&l, &t) = aut
                    .edges(s)
                    .iter()
                    .find(|(_, &t)| region[t] && g.comp_of[t] == c)
                    .expect("simple cycle");
                labels.push(l);
                s = t;
                if s == start {
                    break;
                }
            }
            for r in 0..labels.len() {
                let mut rot = labels.clone();
                rot.rotate_left(r);
                let p = seq::primitive_root_len(&rot);
                let w = FinSeq::new(rot[..p].to_vec());
                words.insert(ByCode(w));
            }
        }

        let mut relevant = region.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for s in 0..n {
                if !relevant[s] && aut.edges(s).values().any(|&t| relevant[t]) {
                    relevant[s] = true;
                    changed = true;
                }
            }
        }

        let mut frontier = BinaryHeap::new();
        if total != Some(0) {
            if let Some(r) = aut.root().filter(|&r| relevant[r]) {
                frontier.push(Reverse((ByCode(FinSeq::empty()), r)));
            }
        }
        PointEnumerator {
            aut,
            region,
            relevant,
            cycles: words.into_iter().map(|w| w.0).collect(),
            frontier,
            ready: Vec::new(),
            remaining: total,
        }
    }

    /// Whether the run from `s` over `c^ω` exists and loops inside the region.
    fn loops_in_region(&self, s: StateId, c: &[Label]) -> bool {
        let mut seen = Vec::new();
        let mut cur = s;
        loop {
            if seen.contains(&cur) {
                return self.region[cur];
            }
            seen.push(cur);
            match self.aut.run_from(cur, c) {
                Some(t) => cur = t,
                None => return false,
            }
        }
    }
}

impl Iterator for PointEnumerator<'_> {
    type Item = Lasso;

    fn next(&mut self) -> Option<Lasso> {
        if self.remaining == Some(0) {
            return None;
        }
        while self.ready.is_empty() {
            let Reverse((ByCode(u), s)) = self.frontier.pop()?;
            for (&l, &t) in self.aut.edges(s) {
                if self.relevant[t] {
                    self.frontier.push(Reverse((ByCode(u.child(l)), t)));
                }
            }
            for c in &self.cycles {
                if u.last() == c.last() {
                    continue;
                }
                if self.loops_in_region(s, c) {
                    self.ready.push(Lasso::from_normal(u.clone(), c.clone()));
                }
            }
            self.ready.reverse();
        }
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        self.ready.pop()
    }
}

/// Canonical enumeration of `[T]` for countable bodies.
pub fn path_enumerator(aut: &TreeAutomaton) -> Result<PointEnumerator<'_>, AnalysisError> {
    let class = classify_states(aut);
    let body = aut.root().map_or(CardinalityClass::Empty, |r| class[r]);
    if body == CardinalityClass::Continuum {
        return Err(AnalysisError::Uncountable);
    }
    let live = class.iter().map(|&c| c != CardinalityClass::Empty).collect();
    Ok(PointEnumerator::new(aut, live, body.finite_count()))
}

/// The first `k` paths of `[T]` in canonical order.
pub fn enumerate_paths(aut: &TreeAutomaton, k: usize) -> Result<Vec<Lasso>, AnalysisError> {
    Ok(path_enumerator(aut)?.take(k).collect())
}
