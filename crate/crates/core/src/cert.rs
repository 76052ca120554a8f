// SPDX-License-Identifier: Apache-2.0

//! One-step and global certificates of Cantor-Bendixson derivative steps for
//! countable regular bodies, and a clause-by-clause verifier.
//!
//! A one-step certificate lists, in increasing code order, the ⊑-minimal
//! sequences above which the body has at most one point. Minimality makes the
//! listed sequences pairwise incomparable, and every sequence extending none
//! of them has at least two points above it.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::analysis::{body_cardinality, classify_states, unique_path_from, CardinalityClass};
use crate::automaton::{tree_equal, TreeAutomaton};
use crate::cb::{derivative, derivative_chain};
use crate::error::AnalysisError;
use crate::lasso::Lasso;
use crate::oracle::{self, Budget, Count};
use crate::seq::{ByCode, FinSeq, Label};

/// Which labels below a live node are inspected for dead children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelBudget {
    /// Every label; the listing is then infinite whenever a branching node
    /// exists, since almost all of its children are dead.
    Unbounded,
    /// Labels strictly below the bound.
    Below(Label),
}

impl LabelBudget {
    /// Two past the largest label of the tree: every live child plus one
    /// dead sibling per node.
    pub fn default_for(aut: &TreeAutomaton) -> Self {
        LabelBudget::Below(aut.max_label().map_or(1, |m| m + 2))
    }

    fn admits(self, l: Label) -> bool {
        match self {
            LabelBudget::Unbounded => true,
            LabelBudget::Below(b) => l < b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertEntry {
    pub sigma: FinSeq,
    pub flag: bool,
    pub point: Lasso,
}

#[derive(Clone, Debug)]
pub struct OneStepCert {
    pub entries: Vec<CertEntry>,
    /// Automaton of the residue `{p ∈ [T] : no σ_i ⊑ p}`.
    pub residue: TreeAutomaton,
    /// The first flagged sequence, computed even past the requested prefix.
    pub first_witness: FinSeq,
    pub label_budget: LabelBudget,
    /// True when `entries` lists every entry admitted by the budget.
    pub complete: bool,
}

/// The certificate's entries as a lazy stream in code order.
struct EntryStream<'a> {
    aut: &'a TreeAutomaton,
    class: Vec<CardinalityClass>,
    budget: LabelBudget,
    heap: BinaryHeap<Reverse<ByCode>>,
}

impl Iterator for EntryStream<'_> {
    type Item = CertEntry;

    fn next(&mut self) -> Option<CertEntry> {
        loop {
            let Reverse(ByCode(sigma)) = self.heap.pop()?;
            // Children of a node are generated one sibling at a time.
            if let Some((&last, parent)) = sigma.split_last() {
                if self.budget.admits(last + 1) {
                    let sib = FinSeq::from(parent).child(last + 1);
                    self.heap.push(Reverse(ByCode(sib)));
                }
            }
            let class = self.aut.run(&sigma).map_or(CardinalityClass::Empty, |s| self.class[s]);
            match class {
                CardinalityClass::Empty => {
                    return Some(CertEntry {
                        sigma,
                        flag: false,
                        point: Lasso::zeros(),
                    })
                }
                CardinalityClass::Finite(1) => {
                    let s = self.aut.run(&sigma).expect("live node");
                    let tail = unique_path_from(self.aut, &self.class, s);
                    let point = Lasso::new(&sigma.concat(tail.prefix()), tail.cycle())
                        .expect("nonempty cycle");
                    return Some(CertEntry {
                        sigma,
                        flag: true,
                        point,
                    });
                }
                _ => {
                    if self.budget.admits(0) {
                        self.heap.push(Reverse(ByCode(sigma.child(0))));
                    }
                }
            }
        }
    }
}

fn check_countable(aut: &TreeAutomaton) -> Result<(), AnalysisError> {
    match body_cardinality(aut) {
        CardinalityClass::Empty => Err(AnalysisError::EmptyBody),
        CardinalityClass::Continuum => Err(AnalysisError::Uncountable),
        _ => Ok(()),
    }
}

/// The first `k` entries of the one-step certificate of `[T]`.
pub fn one_step_cert(
    aut: &TreeAutomaton,
    k: usize,
    budget: LabelBudget,
) -> Result<OneStepCert, AnalysisError> {
    check_countable(aut)?;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(ByCode(FinSeq::empty())));
    let mut stream = EntryStream {
        aut,
        class: classify_states(aut),
        budget,
        heap,
    };
    let mut entries: Vec<CertEntry> = Vec::new();
    let mut first_witness = None;
    let mut complete = false;
    while entries.len() < k || first_witness.is_none() {
        let Some(e) = stream.next() else {
            complete = true;
            break;
        };
        if e.flag && first_witness.is_none() {
            first_witness = Some(e.sigma.clone());
        }
        if entries.len() < k {
            entries.push(e);
        }
    }
    if !complete && stream.heap.is_empty() {
        complete = true;
    }
    Ok(OneStepCert {
        entries,
        residue: derivative(aut),
        first_witness: first_witness.expect("countable nonempty bodies have isolated points"),
        label_budget: budget,
        complete,
    })
}

#[derive(Clone, Debug)]
pub struct GlobalCert {
    /// Levels indexed by increasing code of their first witness.
    pub levels: Vec<OneStepCert>,
    /// `order[i]` is the derivative depth certified by `levels[i]`.
    pub order: Vec<usize>,
}

impl GlobalCert {
    /// Levels in derivative order.
    pub fn by_depth(&self) -> Vec<&OneStepCert> {
        let mut v: Vec<_> = self.order.iter().zip(&self.levels).collect();
        v.sort_by_key(|(d, _)| **d);
        v.into_iter().map(|(_, l)| l).collect()
    }
}

/// One-step certificates along the whole derivative chain.
pub fn global_cert(
    aut: &TreeAutomaton,
    k: usize,
    budget: LabelBudget,
) -> Result<GlobalCert, AnalysisError> {
    check_countable(aut)?;
    let chain = derivative_chain(aut);
    let mut levels: Vec<(usize, OneStepCert)> = chain
        .iter()
        .take_while(|t| !t.is_empty())
        .enumerate()
        .map(|(d, t)| Ok((d, one_step_cert(t, k, budget)?)))
        .collect::<Result<_, AnalysisError>>()?;
    levels.sort_by(|a, b| a.1.first_witness.cmp_code(&b.1.first_witness));
    let (order, levels) = levels.into_iter().unzip();
    Ok(GlobalCert { levels, order })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    Incomparable,
    CodeOrder,
    NoWitness,
    FlagOneMembership,
    FlagZeroEmpty,
    Uniqueness,
    Coverage,
    Residue,
    LevelChaining,
    WitnessOrder,
    GlobalCoverage,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Incomparable => "incomparable",
            Clause::CodeOrder => "code-order",
            Clause::NoWitness => "witness",
            Clause::FlagOneMembership => "flag1-membership",
            Clause::FlagZeroEmpty => "flag0-empty",
            Clause::Uniqueness => "uniqueness",
            Clause::Coverage => "coverage",
            Clause::Residue => "residue",
            Clause::LevelChaining => "level-chaining",
            Clause::WitnessOrder => "witness-order",
            Clause::GlobalCoverage => "global-coverage",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    /// Level index for global certificates.
    pub level: Option<usize>,
    pub detail: String,
}

/// Checks a one-step certificate for `[T]` up to sequences of length `depth`.
///
/// Uniqueness and coverage are judged by the black-box oracle; the remaining
/// clauses are exact. Coverage is only claimed up to the last listed code
/// unless the certificate is complete.
pub fn verify_one_step(aut: &TreeAutomaton, cert: &OneStepCert, depth: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |clause, detail: String| {
        out.push(Violation {
            clause,
            level: None,
            detail,
        })
    };
    let es = &cert.entries;
    for (i, a) in es.iter().enumerate() {
        for b in &es[i + 1..] {
            if !a.sigma.incomparable(&b.sigma) {
                bad(Clause::Incomparable, format!("{} and {}", a.sigma, b.sigma));
            }
        }
    }
    for w in es.windows(2) {
        if w[0].sigma.cmp_code(&w[1].sigma).is_ge() {
            bad(Clause::CodeOrder, format!("{} before {}", w[0].sigma, w[1].sigma));
        }
    }
    if !es.iter().any(|e| e.flag) {
        bad(Clause::NoWitness, String::from("no flagged entry"));
    }

    let h = aut.state_count();
    let width = aut.max_label().map_or(1, |m| m + 2);
    let budget = Budget { width, horizon: h };
    for e in es {
        if e.flag {
            if !(aut.accepts_lasso(&e.point) && e.point.has_prefix(&e.sigma)) {
                bad(Clause::FlagOneMembership, format!("{} at {}", e.point, e.sigma));
            }
            let n = oracle::count_extensions(aut, &e.sigma, h, budget, 2);
            if n != Count::Exact(1) {
                bad(Clause::Uniqueness, format!("{} has {n} extensions", e.sigma));
            }
        } else {
            let empty = aut
                .subtree(&e.sigma)
                .map_or(true, |t| body_cardinality(&t) == CardinalityClass::Empty);
            if !empty || e.point != Lasso::zeros() {
                bad(Clause::FlagZeroEmpty, format!("{}", e.sigma));
            }
        }
    }

    let frontier = es.last().map(|e| &e.sigma);
    let cov_width = match cert.label_budget {
        LabelBudget::Below(b) => b.min(width),
        LabelBudget::Unbounded => width,
    };
    let mut level: Vec<FinSeq> = alloc::vec![FinSeq::empty()];
    for _ in 0..=depth {
        let mut next = Vec::new();
        for sigma in level {
            if es.iter().any(|e| e.sigma.is_prefix_of(&sigma)) {
                continue;
            }
            let in_scope = cert.complete || frontier.is_some_and(|f| sigma.cmp_code(f).is_le());
            if in_scope {
                let n = oracle::count_extensions(aut, &sigma, h, budget, 2);
                if n != Count::AtLeast(2) {
                    bad(Clause::Coverage, format!("{} has {n} extensions", sigma));
                }
            }
            if aut.member(&sigma) {
                next.extend((0..cov_width).map(|l| sigma.child(l)));
            }
        }
        level = next;
    }

    if !tree_equal(&cert.residue, &derivative(aut)) {
        bad(Clause::Residue, String::from("residue differs from the derivative"));
    }
    let residue = crate::analysis::prune(&cert.residue);
    for e in es {
        if residue.member(&e.sigma) {
            bad(Clause::Residue, format!("residue continues above {}", e.sigma));
        }
    }
    out
}

/// Checks every level against the tree it certifies, the chaining of
/// residues, the witness-code ordering and final emptiness.
pub fn verify_global(aut: &TreeAutomaton, cert: &GlobalCert, depth: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = cert.levels.len();
    let mut sorted = cert.order.clone();
    sorted.sort_unstable();
    if cert.order.len() != n || sorted != (0..n).collect::<Vec<_>>() {
        out.push(Violation {
            clause: Clause::LevelChaining,
            level: None,
            detail: String::from("level depths are not a permutation"),
        });
        return out;
    }
    let mut index_of = alloc::vec![0; n];
    for (i, &d) in cert.order.iter().enumerate() {
        index_of[d] = i;
    }
    let mut current = crate::analysis::prune(aut);
    for (d, &i) in index_of.iter().enumerate() {
        let level = &cert.levels[i];
        for mut v in verify_one_step(&current, level, depth) {
            v.level = Some(i);
            out.push(v);
        }
        if d + 1 < n && level.residue.is_empty() {
            out.push(Violation {
                clause: Clause::LevelChaining,
                level: Some(i),
                detail: String::from("residue empty before the last level"),
            });
        }
        current = level.residue.clone();
    }
    if !current.is_empty() {
        out.push(Violation {
            clause: Clause::GlobalCoverage,
            level: None,
            detail: String::from("final residue is nonempty"),
        });
    }
    for w in cert.levels.windows(2) {
        if w[0].first_witness.cmp_code(&w[1].first_witness).is_ge() {
            out.push(Violation {
                clause: Clause::WitnessOrder,
                level: None,
                detail: format!("{} before {}", w[0].first_witness, w[1].first_witness),
            });
        }
    }
    for (i, l) in cert.levels.iter().enumerate() {
        let first = l.entries.iter().find(|e| e.flag).map(|e| &e.sigma);
        if first.is_some_and(|s| *s != l.first_witness) {
            out.push(Violation {
                clause: Clause::WitnessOrder,
                level: Some(i),
                detail: String::from("stored first witness disagrees with the entries"),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn seq(v: &[Label]) -> FinSeq {
        FinSeq::from(v)
    }

    #[test]
    fn comb_entries_in_code_order() {
        let comb = corpus::comb();
        let c = one_step_cert(&comb, 3, LabelBudget::default_for(&comb)).unwrap();
        let sig: Vec<_> = c.entries.iter().map(|e| e.sigma.clone()).collect();
        assert_eq!(sig, alloc::vec![seq(&[1]), seq(&[0, 1]), seq(&[2])]);
        assert_eq!(c.entries[0].point, Lasso::constant(1));
        assert_eq!(c.entries[1].point, Lasso::new(&[0], &[1]).unwrap());
        assert!(!c.entries[2].flag);
        assert!(!c.complete);
        assert!(verify_one_step(&comb, &c, 8).is_empty());
    }

    #[test]
    fn single_path_has_root_entry() {
        let z = corpus::zpath();
        let c = one_step_cert(&z, 4, LabelBudget::default_for(&z)).unwrap();
        assert_eq!(c.entries.len(), 1);
        assert!(c.entries[0].sigma.is_empty() && c.complete);
        assert!(c.residue.is_empty());
    }

    #[test]
    fn rejects_bad_bodies() {
        let full = corpus::full_binary();
        assert_eq!(
            one_step_cert(&full, 1, LabelBudget::Unbounded).unwrap_err(),
            AnalysisError::Uncountable
        );
        assert_eq!(
            one_step_cert(&corpus::chain(2), 1, LabelBudget::Unbounded).unwrap_err(),
            AnalysisError::EmptyBody
        );
    }

    #[test]
    fn global_comb_orders_levels_by_witness() {
        let comb = corpus::comb();
        let g = global_cert(&comb, 4, LabelBudget::default_for(&comb)).unwrap();
        assert_eq!(g.order, alloc::vec![1, 0]);
        assert!(g.levels[0].first_witness.is_empty());
        assert_eq!(g.levels[1].first_witness, seq(&[1]));
        assert!(verify_global(&comb, &g, 8).is_empty());
    }
}
