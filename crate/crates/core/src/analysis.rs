// SPDX-License-Identifier: Apache-2.0

//! Structural analysis of bodies: strongly connected components, liveness,
//! pruning and exact cardinality classes.
//!
//! The class of a state is the cardinality of the set of infinite walks that
//! start there. Over the SCC DAG it satisfies: a component with more internal
//! edges than states carries two distinct returning walks, hence continuum
//! many paths; a simple cycle adds its own path to countably many exit paths;
//! a trivial component just sums its successors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use crate::automaton::{StateId, TreeAutomaton};
use crate::lasso::Lasso;
use crate::seq::Label;

/// Cardinality of a body. The derived order is the cardinal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardinalityClass {
    Empty,
    /// Exact path count, always ≥ 1.
    Finite(u128),
    CountablyInfinite,
    Continuum,
}

impl CardinalityClass {
    pub fn from_count(n: u128) -> Self {
        if n == 0 {
            CardinalityClass::Empty
        } else {
            CardinalityClass::Finite(n)
        }
    }

    pub fn is_countable(self) -> bool {
        self != CardinalityClass::Continuum
    }

    /// Number of elements when finite (0 for empty).
    pub fn finite_count(self) -> Option<u128> {
        match self {
            CardinalityClass::Empty => Some(0),
            CardinalityClass::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// Cardinal product with a count of walks (`None` for infinitely many).
    pub fn times(self, walks: Option<u128>) -> Self {
        match (self, walks) {
            (CardinalityClass::Empty, _) | (_, Some(0)) => CardinalityClass::Empty,
            (CardinalityClass::Continuum, _) => CardinalityClass::Continuum,
            (CardinalityClass::Finite(a), Some(b)) => {
                CardinalityClass::Finite(a.checked_mul(b).expect("path count overflow"))
            }
            _ => CardinalityClass::CountablyInfinite,
        }
    }
}

impl Add for CardinalityClass {
    type Output = CardinalityClass;

    fn add(self, rhs: Self) -> Self {
        use CardinalityClass::*;
        match (self, rhs) {
            (Empty, x) | (x, Empty) => x,
            (Continuum, _) | (_, Continuum) => Continuum,
            (Finite(a), Finite(b)) => Finite(a.checked_add(b).expect("path count overflow")),
            _ => CountablyInfinite,
        }
    }
}

impl core::iter::Sum for CardinalityClass {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(CardinalityClass::Empty, Add::add)
    }
}

impl fmt::Display for CardinalityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalityClass::Empty => f.write_str("∅"),
            CardinalityClass::Finite(n) => write!(f, "{n}"),
            CardinalityClass::CountablyInfinite => f.write_str("ℵ₀"),
            CardinalityClass::Continuum => f.write_str("2^ℵ₀"),
        }
    }
}

/// Strongly connected components, emitted sinks first (every edge between
/// components goes from a later component to an earlier one).
pub(crate) struct Sccs {
    pub comps: Vec<Vec<StateId>>,
    pub comp_of: Vec<usize>,
    /// Number of edges with both ends inside the component.
    pub internal: Vec<usize>,
}

impl Sccs {
    pub fn nontrivial(&self, c: usize) -> bool {
        self.internal[c] > 0
    }

    /// A component with two distinct returning walks.
    pub fn heavy(&self, c: usize) -> bool {
        self.internal[c] > self.comps[c].len()
    }
}

/// Iterative Tarjan over the subgraph induced by `mask`.
pub(crate) fn sccs(aut: &TreeAutomaton, mask: &[bool]) -> Sccs {
    const UNSEEN: usize = usize::MAX;
    let n = aut.state_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp_of = vec![UNSEEN; n];
    let mut comps: Vec<Vec<StateId>> = Vec::new();
    let mut next = 0;
    let succ = |s: StateId| -> Vec<StateId> {
        aut.edges(s).values().copied().filter(|&t| mask[t]).collect()
    };

    for start in 0..n {
        if !mask[start] || index[start] != UNSEEN {
            continue;
        }
        let mut frames = vec![(start, succ(start), 0usize)];
        index[start] = next;
        low[start] = next;
        next += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if let Some(&w) = frame.1.get(frame.2) {
                frame.2 += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, succ(w), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(parent) = frames.last() {
                low[parent.0] = low[parent.0].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp_of[w] = comps.len();
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }

    let internal = comps
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            comp.iter()
                .flat_map(|&s| aut.edges(s).values())
                .filter(|&&t| mask[t] && comp_of[t] == c)
                .count()
        })
        .collect();
    Sccs {
        comps,
        comp_of,
        internal,
    }
}

/// Class of the set of infinite walks from each state.
pub fn classify_states(aut: &TreeAutomaton) -> Vec<CardinalityClass> {
    let all = vec![true; aut.state_count()];
    let g = sccs(aut, &all);
    let mut class = vec![CardinalityClass::Empty; aut.state_count()];
    for (c, comp) in g.comps.iter().enumerate() {
        let value = if g.heavy(c) {
            CardinalityClass::Continuum
        } else {
            let exits: CardinalityClass = comp
                .iter()
                .flat_map(|&s| aut.edges(s).values())
                .filter(|&&t| g.comp_of[t] != c)
                .map(|&t| class[t])
                .sum();
            match (g.nontrivial(c), exits) {
                (false, x) => x,
                (true, CardinalityClass::Empty) => CardinalityClass::Finite(1),
                (true, CardinalityClass::Continuum) => CardinalityClass::Continuum,
                (true, _) => CardinalityClass::CountablyInfinite,
            }
        };
        for &s in comp {
            class[s] = value;
        }
    }
    class
}

/// `|[T]|`.
pub fn body_cardinality(aut: &TreeAutomaton) -> CardinalityClass {
    match aut.root() {
        Some(r) => classify_states(aut)[r],
        None => CardinalityClass::Empty,
    }
}

/// States from which an infinite walk starts.
pub fn live_states(aut: &TreeAutomaton) -> Vec<bool> {
    classify_states(aut)
        .into_iter()
        .map(|c| c != CardinalityClass::Empty)
        .collect()
}

/// The largest pruned subtree: nodes that extend to a path.
pub fn prune(aut: &TreeAutomaton) -> TreeAutomaton {
    aut.restrict(&live_states(aut))
}

pub fn is_wellfounded(aut: &TreeAutomaton) -> bool {
    body_cardinality(aut) == CardinalityClass::Empty
}

/// The unique path from a state of class `Finite(1)`.
pub(crate) fn unique_path_from(
    aut: &TreeAutomaton,
    class: &[CardinalityClass],
    start: StateId,
) -> Lasso {
    debug_assert_eq!(class[start], CardinalityClass::Finite(1));
    let mut labels: Vec<Label> = Vec::new();
    let mut visited: Vec<StateId> = Vec::new();
    let mut s = start;
    loop {
        if let Some(pos) = visited.iter().position(|&v| v == s) {
            return Lasso::new(&labels[..pos], &labels[pos..]).expect("cycle is nonempty");
        }
        visited.push(s);
        let (&l, &t) = aut
            .edges(s)
            .iter()
            .find(|(_, &t)| class[t] != CardinalityClass::Empty)
            .expect("a state with one path has a live successor");
        labels.push(l);
        s = t;
    }
}

/// The unique path of a body with exactly one element.
pub fn unique_path(aut: &TreeAutomaton) -> Option<Lasso> {
    let class = classify_states(aut);
    let r = aut.root()?;
    (class[r] == CardinalityClass::Finite(1)).then(|| unique_path_from(aut, &class, r))
}

/// Number of walks from the root to each state that stay inside `mask`;
/// `None` means infinitely many (some nontrivial component on the way).
pub(crate) fn walk_counts(aut: &TreeAutomaton, mask: &[bool]) -> Vec<Option<u128>> {
    let mut count = vec![Some(0u128); aut.state_count()];
    let Some(r) = aut.root().filter(|&r| mask[r]) else {
        return count;
    };
    let g = sccs(aut, mask);
    count[r] = Some(1);
    // Sources come last in Tarjan order.
    for c in (0..g.comps.len()).rev() {
        let entered = g.comps[c].iter().any(|&s| count[s] != Some(0));
        if g.nontrivial(c) && entered {
            for &s in &g.comps[c] {
                count[s] = None;
            }
        }
        for &s in &g.comps[c] {
            let w = count[s];
            if w == Some(0) {
                continue;
            }
            for &t in aut.edges(s).values() {
                if mask[t] && g.comp_of[t] != c {
                    count[t] = match (count[t], w) {
                        (Some(a), Some(b)) => Some(a.checked_add(b).expect("walk count overflow")),
                        _ => None,
                    };
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use CardinalityClass::*;

    #[test]
    fn corpus_classes() {
        assert_eq!(body_cardinality(&corpus::full_binary()), Continuum);
        assert_eq!(body_cardinality(&corpus::zpath()), Finite(1));
        assert_eq!(body_cardinality(&corpus::comb()), CountablyInfinite);
        assert_eq!(body_cardinality(&corpus::chain(3)), Empty);
        assert_eq!(body_cardinality(&TreeAutomaton::empty()), Empty);
        assert_eq!(body_cardinality(&corpus::two_point()), Finite(2));
    }

    #[test]
    fn prune_examples() {
        assert!(prune(&corpus::chain(1)).is_empty());
        let z = corpus::zpath();
        assert!(crate::tree_equal(&prune(&z), &z));
        let comb = corpus::comb();
        assert!(crate::tree_equal(&prune(&corpus::comb_with_dead_branch()), &comb));
    }

    #[test]
    fn cardinal_arithmetic() {
        assert_eq!(Finite(2) + Empty, Finite(2));
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(Finite(2) + CountablyInfinite, CountablyInfinite);
        assert_eq!(CountablyInfinite + Continuum, Continuum);
        assert!(Empty < Finite(1) && Finite(7) < CountablyInfinite);
    }

    #[test]
    fn unique_paths() {
        assert_eq!(unique_path(&corpus::zpath()), Some(Lasso::zeros()));
        assert_eq!(unique_path(&corpus::comb()), None);
    }

    #[test]
    fn walks_through_cycles_are_infinite() {
        let comb = corpus::comb();
        let all = vec![true; comb.state_count()];
        let w = walk_counts(&comb, &all);
        assert!(w.iter().all(Option::is_none));
        let chain = corpus::chain(2);
        let w = walk_counts(&chain, &vec![true; chain.state_count()]);
        assert!(w.iter().all(|c| *c == Some(1)));
    }
}
