// SPDX-License-Identifier: Apache-2.0

//! Brute-force ground truth over black-box membership functions.
//!
//! Nothing here reads automaton structure. A tree is seen only through
//! [`Membership`], explored with labels below a width bound, and a node counts
//! as extendible when it has a member extension `horizon` steps longer. For a
//! tree recognised by an automaton with `n` states, horizon `n` makes
//! extendibility coincide with lying on a path, and any node with two paths
//! above it splits within `n` steps.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::automaton::TreeAutomaton;
use crate::lasso::Lasso;
use crate::seq::{FinSeq, Label};

pub trait Membership {
    fn member(&self, sigma: &[Label]) -> bool;
}

impl Membership for TreeAutomaton {
    fn member(&self, sigma: &[Label]) -> bool {
        TreeAutomaton::member(self, sigma)
    }
}

impl<M: Membership + ?Sized> Membership for &M {
    fn member(&self, sigma: &[Label]) -> bool {
        (**self).member(sigma)
    }
}

impl<M: Membership + ?Sized> Membership for Box<M> {
    fn member(&self, sigma: &[Label]) -> bool {
        (**self).member(sigma)
    }
}

/// A membership test given by a closure.
pub struct FnMembership<F>(pub F);

impl<F: Fn(&[Label]) -> bool> Membership for FnMembership<F> {
    fn member(&self, sigma: &[Label]) -> bool {
        (self.0)(sigma)
    }
}

/// Exploration bounds: labels `< width`, extendibility by `horizon` steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub width: Label,
    pub horizon: usize,
}

impl Budget {
    /// Default width 6; horizon is the state count of the tree under test.
    pub fn for_states(states: usize) -> Self {
        Budget {
            width: 6,
            horizon: states,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exact(n) => write!(f, "{n}"),
            Count::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

/// Whether `sigma` has a member extension `steps` longer.
pub fn extendible<M: Membership + ?Sized>(m: &M, sigma: &[Label], steps: usize, width: Label) -> bool {
    let mut buf = sigma.to_vec();
    extendible_in(m, &mut buf, steps, width)
}

fn extendible_in<M: Membership + ?Sized>(m: &M, buf: &mut Vec<Label>, steps: usize, width: Label) -> bool {
    if !m.member(buf) {
        return false;
    }
    if steps == 0 {
        return true;
    }
    for l in 0..width {
        buf.push(l);
        let ok = extendible_in(m, buf, steps - 1, width);
        buf.pop();
        if ok {
            return true;
        }
    }
    false
}

/// Visits, in lexicographic order, the extendible extensions of `sigma` that
/// are `len` longer, stopping after `cap` of them.
fn walk_extensions<M: Membership + ?Sized>(
    m: &M,
    sigma: &[Label],
    len: usize,
    budget: Budget,
    cap: usize,
    visit: &mut dyn FnMut(&[Label]),
) -> Count {
    fn go<M: Membership + ?Sized>(
        m: &M,
        buf: &mut Vec<Label>,
        left: usize,
        budget: Budget,
        cap: usize,
        found: &mut usize,
        visit: &mut dyn FnMut(&[Label]),
    ) {
        if *found >= cap || !m.member(buf) {
            return;
        }
        if left == 0 {
            if extendible_in(m, buf, budget.horizon, budget.width) {
                *found += 1;
                visit(buf);
            }
            return;
        }
        for l in 0..budget.width {
            buf.push(l);
            go(m, buf, left - 1, budget, cap, found, visit);
            buf.pop();
            if *found >= cap {
                return;
            }
        }
    }
    let mut buf = sigma.to_vec();
    let mut found = 0;
    go(m, &mut buf, len, budget, cap, &mut found, visit);
    if found >= cap {
        Count::AtLeast(cap)
    } else {
        Count::Exact(found)
    }
}

/// Number of extendible extensions of `sigma` of length `|sigma| + len`,
/// capped.
pub fn count_extensions<M: Membership + ?Sized>(
    m: &M,
    sigma: &[Label],
    len: usize,
    budget: Budget,
    cap: usize,
) -> Count {
    walk_extensions(m, sigma, len, budget, cap, &mut |_| {})
}

/// Extendible nodes of length `d`, in lexicographic order.
pub fn extendible_prefixes<M: Membership + ?Sized>(m: &M, d: usize, budget: Budget) -> Vec<FinSeq> {
    let mut out = Vec::new();
    walk_extensions(m, &[], d, budget, usize::MAX, &mut |s| out.push(FinSeq::from(s)));
    out
}

/// Number of extendible nodes of length `d`, capped.
pub fn count_paths_capped<M: Membership + ?Sized>(m: &M, d: usize, budget: Budget, cap: usize) -> Count {
    count_extensions(m, &[], d, budget, cap)
}

/// A minimal node with a single extendible continuation. `point` is the
/// forced continuation folded into a lasso, or `None` when no period fits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isolated {
    pub sigma: FinSeq,
    pub point: Option<Lasso>,
}

/// Smallest lasso `f[..i]·f[i..i+j]^ω` with `i, j ≤ bound` consistent with
/// the whole of `f`.
fn fold(f: &[Label], bound: usize) -> Option<(usize, usize)> {
    for total in 1..=2 * bound {
        for j in 1..=total.min(bound) {
            let i = total - j;
            if i > bound || i + j > f.len() {
                continue;
            }
            if (i..f.len() - j).all(|k| f[k] == f[k + j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Minimal nodes of length `≤ d` above which exactly one extendible
/// continuation exists, sorted by code.
pub fn isolated_at_depth<M: Membership + ?Sized>(m: &M, d: usize, budget: Budget) -> Vec<Isolated> {
    let h = budget.horizon.max(1);
    let mut out = Vec::new();
    let mut level: Vec<Vec<Label>> = vec![Vec::new()];
    for depth in 0..=d {
        let mut next = Vec::new();
        for sigma in level {
            if !extendible(m, &sigma, h, budget.width) {
                continue;
            }
            let mut forced = Vec::new();
            let n = walk_extensions(m, &sigma, 3 * h, budget, 2, &mut |s| forced = s.to_vec());
            if n == Count::Exact(1) {
                let f = &forced[sigma.len()..];
                let point = fold(f, h).map(|(i, j)| {
                    let mut prefix = sigma.clone();
                    prefix.extend_from_slice(&f[..i]);
                    Lasso::new(&prefix, &f[i..i + j]).expect("nonempty period")
                });
                out.push(Isolated {
                    sigma: FinSeq::new(sigma),
                    point,
                });
            } else if depth < d {
                for l in 0..budget.width {
                    let mut c = sigma.clone();
                    c.push(l);
                    next.push(c);
                }
            }
        }
        level = next;
    }
    out.sort_by(|a, b| a.sigma.cmp_code(&b.sigma));
    out
}

/// Membership in the derived tree: nodes with at least two extendible
/// continuations. Answers are memoised.
pub struct Derived<'a> {
    base: Box<dyn Membership + 'a>,
    budget: Budget,
    memo: RefCell<BTreeMap<Vec<Label>, bool>>,
}

impl<'a> Derived<'a> {
    pub fn new(base: Box<dyn Membership + 'a>, budget: Budget) -> Self {
        Derived {
            base,
            budget,
            memo: RefCell::new(BTreeMap::new()),
        }
    }
}

impl Membership for Derived<'_> {
    fn member(&self, sigma: &[Label]) -> bool {
        if let Some(&b) = self.memo.borrow().get(sigma) {
            return b;
        }
        let h = self.budget.horizon.max(1);
        let b = count_extensions(&*self.base, sigma, h, self.budget, 2) == Count::AtLeast(2);
        self.memo.borrow_mut().insert(sigma.to_vec(), b);
        b
    }
}

/// Points removed by iterating the derivative until the body is empty or
/// perfect, each found through an isolating node of length `≤ d`. Also
/// returns the number of rounds that removed something and whether any fold
/// was inconclusive.
pub fn isolated_closure<'a, M: Membership + 'a>(m: M, d: usize, budget: Budget) -> ClosureReport {
    let h = budget.horizon.max(1);
    let mut current: Box<dyn Membership + 'a> = Box::new(m);
    let mut report = ClosureReport::default();
    for _ in 0..=h {
        if !extendible(&*current, &[], h, budget.width) {
            break;
        }
        let found = isolated_at_depth(&*current, d, budget);
        if found.is_empty() {
            break;
        }
        report.rounds += 1;
        for i in found {
            match i.point {
                Some(p) => {
                    if !report.points.contains(&p) {
                        report.points.push(p);
                    }
                }
                None => report.inconclusive = true,
            }
        }
        current = Box::new(Derived::new(current, budget));
    }
    report.points.sort();
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureReport {
    /// Sorted canonically.
    pub points: Vec<Lasso>,
    pub rounds: usize,
    pub inconclusive: bool,
}
