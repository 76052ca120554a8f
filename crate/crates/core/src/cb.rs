// SPDX-License-Identifier: Apache-2.0

//! Cantor-Bendixson machinery on regular trees.
//!
//! After pruning, `|[T_σ]|` depends only on the state reached by `σ`, so the
//! derivative and the perfect kernel are restrictions to sets of states: the
//! derivative keeps states with at least two paths, the kernel keeps states
//! with continuum many.

use alloc::vec::Vec;

use crate::analysis::{classify_states, walk_counts, CardinalityClass};
use crate::automaton::{tree_equal, TreeAutomaton};
use crate::enumerate::PointEnumerator;
use crate::error::AnalysisError;
use crate::lasso::Lasso;

/// `T'`: removes the isolated points of `[T]`.
pub fn derivative(aut: &TreeAutomaton) -> TreeAutomaton {
    let class = classify_states(aut);
    let keep: Vec<bool> = class.iter().map(|&c| c >= CardinalityClass::Finite(2)).collect();
    crate::analysis::prune(&aut.restrict(&keep))
}

/// States whose subtree has continuum many paths.
pub(crate) fn kernel_mask(class: &[CardinalityClass]) -> Vec<bool> {
    class.iter().map(|&c| c == CardinalityClass::Continuum).collect()
}

/// The automaton of the largest perfect subtree.
pub fn perfect_kernel(aut: &TreeAutomaton) -> TreeAutomaton {
    aut.restrict(&kernel_mask(&classify_states(aut)))
}

/// Least `r` with `D^r(T) = D^{r+1}(T)`, iterating on bodies.
pub fn cb_rank(aut: &TreeAutomaton) -> usize {
    derivative_chain(aut).len() - 1
}

/// `[prune(T), D(T), D²(T), …]` up to and including the first fixed point.
pub fn derivative_chain(aut: &TreeAutomaton) -> Vec<TreeAutomaton> {
    let mut chain = alloc::vec![crate::analysis::prune(aut)];
    loop {
        let next = derivative(chain.last().unwrap());
        if tree_equal(&next, chain.last().unwrap()) {
            return chain;
        }
        chain.push(next);
    }
}

/// Cardinality of `[T] ∖ [PK(T)]`; never `Continuum`.
pub fn scattered_class(aut: &TreeAutomaton) -> CardinalityClass {
    let class = classify_states(aut);
    scattered_class_with(aut, &class)
}

fn scattered_class_with(aut: &TreeAutomaton, class: &[CardinalityClass]) -> CardinalityClass {
    let Some(r) = aut.root() else {
        return CardinalityClass::Empty;
    };
    if class[r] != CardinalityClass::Continuum {
        return class[r];
    }
    // A scattered point leaves the kernel along exactly one edge, after a
    // unique walk inside it.
    let kernel = kernel_mask(class);
    let walks = walk_counts(aut, &kernel);
    aut.edge_list()
        .filter(|&(q, _, t)| kernel[q] && !kernel[t])
        .map(|(q, _, t)| class[t].times(walks[q]))
        .sum()
}

/// The `ScCount` code: 0 for infinitely many scattered points, `n + 1` for
/// exactly `n`.
pub fn scattered_count(aut: &TreeAutomaton) -> u128 {
    count_code(scattered_class(aut))
}

fn count_code(c: CardinalityClass) -> u128 {
    match c.finite_count() {
        Some(n) => n + 1,
        None => 0,
    }
}

/// One record of a listing: `flag = true` marks a genuine element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamEntry {
    pub flag: bool,
    pub point: Lasso,
}

impl StreamEntry {
    pub fn point(p: Lasso) -> Self {
        StreamEntry { flag: true, point: p }
    }

    pub fn placeholder() -> Self {
        StreamEntry {
            flag: false,
            point: Lasso::zeros(),
        }
    }
}

/// Infinite listing of a countable region: its points in canonical order,
/// then placeholders. Backed by the automaton and the region's states.
#[derive(Clone, Debug)]
pub struct ScatteredStream<'a> {
    points: PointEnumerator<'a>,
    exhausted: bool,
}

impl Iterator for ScatteredStream<'_> {
    type Item = StreamEntry;

    fn next(&mut self) -> Option<StreamEntry> {
        if !self.exhausted {
            match self.points.next() {
                Some(p) => return Some(StreamEntry::point(p)),
                None => self.exhausted = true,
            }
        }
        Some(StreamEntry::placeholder())
    }
}

/// Listing of the scattered part `[T] ∖ [PK(T)]`.
pub fn scattered_stream(aut: &TreeAutomaton) -> ScatteredStream<'_> {
    let class = classify_states(aut);
    let count = scattered_class_with(aut, &class);
    let region = class
        .iter()
        .map(|&c| c != CardinalityClass::Empty && c != CardinalityClass::Continuum)
        .collect();
    ScatteredStream {
        points: PointEnumerator::new(aut, region, count.finite_count()),
        exhausted: false,
    }
}

pub fn scattered_list(aut: &TreeAutomaton, k: usize) -> Vec<StreamEntry> {
    scattered_stream(aut).take(k).collect()
}

#[derive(Clone, Debug)]
pub struct CbReport {
    pub kernel: TreeAutomaton,
    pub rank: usize,
    pub scattered: CardinalityClass,
    pub sccount_code: u128,
}

/// Kernel, rank and scattered count with the first `k` scattered entries.
pub fn cb_full(aut: &TreeAutomaton, k: usize) -> (CbReport, Vec<StreamEntry>) {
    let scattered = scattered_class(aut);
    let report = CbReport {
        kernel: perfect_kernel(aut),
        rank: cb_rank(aut),
        scattered,
        sccount_code: count_code(scattered),
    };
    (report, scattered_list(aut, k))
}

/// The `List` output for a countable body: the tag (0 for infinite, `n + 1`
/// for `n` elements) and the first `k` entries.
pub fn list_countable(
    aut: &TreeAutomaton,
    k: usize,
) -> Result<(u128, Vec<StreamEntry>), AnalysisError> {
    let points = crate::enumerate::path_enumerator(aut)?;
    let body = crate::analysis::body_cardinality(aut);
    let stream = ScatteredStream {
        points,
        exhausted: false,
    };
    Ok((count_code(body), stream.take(k).collect()))
}

/// Injective listing from a tagged listing with repetitions: first
/// occurrences of flagged points, cut at `n − 1` elements when `n > 0`.
pub fn dedup_list(tag: u128, entries: &[StreamEntry]) -> Vec<Lasso> {
    let mut out: Vec<Lasso> = Vec::new();
    for e in entries.iter().filter(|e| e.flag) {
        if tag > 0 && out.len() as u128 >= tag - 1 {
            break;
        }
        if !out.contains(&e.point) {
            out.push(e.point.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinators::binary_disjoint_union;
    use crate::corpus;

    #[test]
    fn derivative_examples() {
        let full = corpus::full_binary();
        assert!(tree_equal(&derivative(&full), &full));
        assert!(derivative(&corpus::zpath()).is_empty());
        assert!(tree_equal(&derivative(&corpus::comb()), &corpus::zpath()));
    }

    #[test]
    fn kernel_examples() {
        assert!(perfect_kernel(&corpus::comb()).is_empty());
        let u = binary_disjoint_union(&[corpus::zpath(), corpus::full_binary()]);
        let k = perfect_kernel(&u);
        assert!(k.member(&[0, 1, 0, 1, 1]));
        assert!(!k.member(&[1]));
        assert!(!k.member(&[0, 0, 0]));
    }

    #[test]
    fn ranks_and_counts() {
        assert_eq!(cb_rank(&corpus::full_binary()), 0);
        assert_eq!(cb_rank(&corpus::zpath()), 1);
        assert_eq!(cb_rank(&corpus::comb()), 2);
        assert_eq!(cb_rank(&corpus::double_comb()), 3);
        assert_eq!(cb_rank(&TreeAutomaton::empty()), 0);
        assert_eq!(scattered_count(&corpus::full_binary()), 1);
        assert_eq!(scattered_count(&corpus::zpath()), 2);
        assert_eq!(scattered_count(&corpus::comb()), 0);
        let u = binary_disjoint_union(&[corpus::zpath(), corpus::full_binary()]);
        assert_eq!(scattered_count(&u), 3);
        let c = crate::combinators::binary_disjoint_union_const(&corpus::full_binary());
        assert_eq!(scattered_count(&c), 1);
    }

    #[test]
    fn scattered_listing() {
        let full = scattered_list(&corpus::full_binary(), 5);
        assert!(full.iter().all(|e| *e == StreamEntry::placeholder()));
        let u = binary_disjoint_union(&[corpus::zpath(), corpus::full_binary()]);
        let pts: Vec<_> = scattered_list(&u, 4)
            .into_iter()
            .filter(|e| e.flag)
            .map(|e| e.point)
            .collect();
        assert_eq!(
            pts,
            alloc::vec![Lasso::zeros(), Lasso::new(&[1], &[0]).unwrap()]
        );
    }

    #[test]
    fn lists_and_dedup() {
        let (tag, entries) = list_countable(&TreeAutomaton::empty(), 3).unwrap();
        assert_eq!(tag, 1);
        assert!(entries.iter().all(|e| !e.flag));
        let (tag, entries) = list_countable(&corpus::zpath(), 3).unwrap();
        assert_eq!(tag, 2);
        assert!(entries[0].flag && !entries[1].flag);
        let z = StreamEntry::point(Lasso::zeros());
        let dup = [z.clone(), z, StreamEntry::placeholder()];
        assert_eq!(dedup_list(2, &dup), alloc::vec![Lasso::zeros()]);
    }
}
