// SPDX-License-Identifier: Apache-2.0

//! Small named trees used as fixtures throughout the library and its tests.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Builder, TreeAutomaton};
use crate::combinators;
use crate::seq::Label;

/// `2^{<ℕ}`.
pub fn full_binary() -> TreeAutomaton {
    full(2)
}

/// `{0,…,k−1}^{<ℕ}`.
pub fn full(k: Label) -> TreeAutomaton {
    let mut b = Builder::new();
    let t = b.state("t");
    for l in 0..k {
        b.edge(t, l, t).unwrap();
    }
    b.finish(Some(t))
}

/// `{0^n}`, body `{0^ω}`.
pub fn zpath() -> TreeAutomaton {
    constant_path(0)
}

/// `{n^m : m ∈ ℕ}`, body `{n^ω}`.
pub fn constant_path(n: Label) -> TreeAutomaton {
    let mut b = Builder::new();
    let z = b.state("z");
    b.edge(z, n, z).unwrap();
    b.finish(Some(z))
}

/// `{0^n} ∪ {0^n 1^m}`: isolated points `0^n 1^ω` accumulating at `0^ω`.
pub fn comb() -> TreeAutomaton {
    let mut b = Builder::new();
    let r = b.state("r");
    let c = b.state("c");
    b.edge(r, 0, r).unwrap();
    b.edge(r, 1, c).unwrap();
    b.edge(c, 1, c).unwrap();
    b.finish(Some(r))
}

/// [`comb`] with a dead chain hanging off the tooth.
pub fn comb_with_dead_branch() -> TreeAutomaton {
    let mut b = Builder::new();
    let r = b.state("r");
    let c = b.state("c");
    let d1 = b.state("d1");
    let d2 = b.state("d2");
    b.edge(r, 0, r).unwrap();
    b.edge(r, 1, c).unwrap();
    b.edge(c, 1, c).unwrap();
    b.edge(c, 0, d1).unwrap();
    b.edge(d1, 0, d2).unwrap();
    b.finish(Some(r))
}

/// A comb whose teeth are combs: Cantor-Bendixson rank 3.
pub fn double_comb() -> TreeAutomaton {
    let mut b = Builder::new();
    let s = b.state("s");
    let r = b.state("r");
    let c = b.state("c");
    b.edge(s, 0, s).unwrap();
    b.edge(s, 1, r).unwrap();
    b.edge(r, 0, r).unwrap();
    b.edge(r, 1, c).unwrap();
    b.edge(c, 1, c).unwrap();
    b.finish(Some(s))
}

/// `{0^k : k ≤ n}`: well-founded, `n` edges.
pub fn chain(n: usize) -> TreeAutomaton {
    let mut b = Builder::new();
    let ids: Vec<_> = (0..=n).map(|i| b.state(format!("c{i}"))).collect();
    for w in ids.windows(2) {
        b.edge(w[0], 0, w[1]).unwrap();
    }
    b.finish(Some(ids[0]))
}

/// Finite well-founded tree with branching.
pub fn wf_branching() -> TreeAutomaton {
    let mut b = Builder::new();
    let r = b.state("r");
    let a = b.state("a");
    let c = b.state("b");
    let d = b.state("d");
    b.edge(r, 0, a).unwrap();
    b.edge(r, 2, c).unwrap();
    b.edge(a, 1, d).unwrap();
    b.edge(a, 3, d).unwrap();
    b.finish(Some(r))
}

/// Body `{0^ω, 1^ω}`.
pub fn two_point() -> TreeAutomaton {
    let mut b = Builder::new();
    let r = b.state("r");
    let a = b.state("a");
    let c = b.state("b");
    b.edge(r, 0, a).unwrap();
    b.edge(r, 1, c).unwrap();
    b.edge(a, 0, a).unwrap();
    b.edge(c, 1, c).unwrap();
    b.finish(Some(r))
}

/// Body `{0^ω, 1·0^ω, 1·1·2^ω}` over labels up to 2.
pub fn three_point() -> TreeAutomaton {
    let mut b = Builder::new();
    let r = b.state("r");
    let z = b.state("z");
    let o = b.state("o");
    let t = b.state("t");
    b.edge(r, 0, z).unwrap();
    b.edge(z, 0, z).unwrap();
    b.edge(r, 1, o).unwrap();
    b.edge(o, 0, z).unwrap();
    b.edge(o, 1, t).unwrap();
    b.edge(t, 2, t).unwrap();
    b.finish(Some(r))
}

/// Binary words without two consecutive zeros: perfect, and every zero-run
/// is bounded so the inverse translation has finite label support.
pub fn golden() -> TreeAutomaton {
    let mut b = Builder::new();
    let a = b.state("a");
    let z = b.state("z");
    b.edge(a, 1, a).unwrap();
    b.edge(a, 0, z).unwrap();
    b.edge(z, 1, a).unwrap();
    b.finish(Some(a))
}

/// Every tree of the standard corpus, paired with a short name. Covers all
/// four cardinality classes, perfect and scattered bodies, ranks up to 3 and
/// labels beyond the binary alphabet.
pub fn standard() -> Vec<(String, TreeAutomaton)> {
    let z3 = constant_path(3);
    let mut zpath3_dead = Builder::new();
    let r = zpath3_dead.state("r");
    let d = zpath3_dead.state("d");
    zpath3_dead.edge(r, 3, r).unwrap();
    zpath3_dead.edge(r, 1, d).unwrap();
    let zpath3_dead = zpath3_dead.finish(Some(r));

    let entries: Vec<(&str, TreeAutomaton)> = vec![
        ("empty", TreeAutomaton::empty()),
        ("chain", chain(3)),
        ("wf_branching", wf_branching()),
        ("zpath", zpath()),
        ("zpath3", z3.clone()),
        ("zpath3_dead", zpath3_dead),
        ("comb", comb()),
        ("comb_dead", comb_with_dead_branch()),
        ("double_comb", double_comb()),
        ("two_point", two_point()),
        ("three_point", three_point()),
        ("full2", full_binary()),
        ("full3", full(3)),
        ("golden", golden()),
        (
            "union2_zpath_full2",
            combinators::binary_disjoint_union(&[zpath(), full_binary()]),
        ),
        (
            "union_comb_full2",
            combinators::disjoint_union(&[comb(), full_binary()]).unwrap(),
        ),
        ("explode_zpath3", combinators::explode(&z3)),
    ];
    entries
        .into_iter()
        .map(|(n, t)| (String::from(n), t))
        .collect()
}
