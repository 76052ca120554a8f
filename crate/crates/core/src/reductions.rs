// SPDX-License-Identifier: Apache-2.0

//! Forward instance maps and backward decoders for reductions between
//! problems on trees, each run end to end against ground truth.
//!
//! A reduction is a pair: the forward map builds an instance of the target
//! problem, a solution of that instance is supplied, and the decoder turns the
//! solution back into an answer for the original instance. Every unbounded
//! search is replaced by a stated bound so a failure is reported rather than
//! divergent.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::analysis::{body_cardinality, is_wellfounded, prune, unique_path, CardinalityClass};
use crate::automaton::{tree_equal, tree_included, Builder, StateId, TreeAutomaton};
use crate::cb::{derivative, perfect_kernel, scattered_count, scattered_list, list_countable, StreamEntry};
use crate::combinators::{
    binary_disjoint_union_const, disjoint_union, explode, translate_tree_to_baire, translate_tree_to_binary,
};
use crate::corpus;
use crate::error::AnalysisError;
use crate::lasso::Lasso;
use crate::nfa::Nfa;
use crate::seq::{FinSeq, Label};

/// An answer of one of the problems involved.
#[derive(Clone, Debug)]
pub enum Answer {
    Flag(bool),
    Bits(Vec<bool>),
    Digits(FinSeq),
    /// Compared by language equality.
    Trees(Vec<TreeAutomaton>),
    /// Decoding failed within its bound.
    Failed(String),
}

impl Answer {
    pub fn agrees(&self, other: &Answer) -> bool {
        match (self, other) {
            (Answer::Flag(a), Answer::Flag(b)) => a == b,
            (Answer::Bits(a), Answer::Bits(b)) => a == b,
            (Answer::Digits(a), Answer::Digits(b)) => a == b,
            (Answer::Trees(a), Answer::Trees(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| tree_equal(x, y))
            }
            _ => false,
        }
    }
}

pub(crate) fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Flag(b) => write!(f, "{b}"),
            Answer::Bits(b) => f.write_str(&bit_string(b)),
            Answer::Digits(d) => write!(f, "{d}"),
            Answer::Trees(ts) => {
                f.write_str("[")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", t.state_count())?;
                }
                f.write_str("]")
            }
            Answer::Failed(why) => write!(f, "failed({why})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub name: &'static str,
    pub instance: String,
    pub artifacts: Vec<(String, TreeAutomaton)>,
    pub decoded: Answer,
    pub truth: Answer,
    pub agrees: bool,
    /// One-line human summary without the verdict.
    pub summary: String,
}

impl ReductionReport {
    fn new(
        name: &'static str,
        instance: String,
        artifacts: Vec<(String, TreeAutomaton)>,
        decoded: Answer,
        truth: Answer,
        summary: String,
    ) -> Self {
        let agrees = decoded.agrees(&truth);
        ReductionReport {
            name,
            instance,
            artifacts,
            decoded,
            truth,
            agrees,
            summary,
        }
    }
}

fn describe(t: &TreeAutomaton) -> String {
    format!(
        "states={} edges={} body={}",
        t.state_count(),
        t.edge_count(),
        body_cardinality(t)
    )
}

/// Whether `[p]` is nonempty and perfect, given a pruned automaton.
fn is_perfect_nonempty(p: &TreeAutomaton) -> bool {
    !p.is_empty() && tree_equal(&derivative(p), p)
}

/// Perfect subsets through the binary translation: the kernel of `τ_C(T)`
/// translated back is a perfect subtree of `T`.
pub fn r1_ptt_binary(t: &TreeAutomaton) -> Result<ReductionReport, AnalysisError> {
    if body_cardinality(t) != CardinalityClass::Continuum {
        return Err(AnalysisError::Countable);
    }
    let forward = translate_tree_to_binary(t);
    let solution = perfect_kernel(&forward);
    let back = prune(&translate_tree_to_baire(&solution)?);
    let perfect = is_perfect_nonempty(&back);
    let included = tree_included(&back, t);
    let summary = format!("perfect={perfect} included={included} states={}", back.state_count());
    Ok(ReductionReport::new(
        "r1",
        describe(t),
        vec![
            (String::from("forward"), forward),
            (String::from("solution"), solution),
            (String::from("backward"), back),
        ],
        Answer::Flag(perfect && included),
        Answer::Flag(true),
        summary,
    ))
}

/// The forward instance of the digit-extraction reduction.
pub fn r2_forward(t: &TreeAutomaton) -> TreeAutomaton {
    translate_tree_to_binary(&explode(t))
}

/// Reads the first `m` digits of the unique path of `T` off any perfect
/// subtree `P` of `τ_C(ẽ(T))`.
///
/// Every path of `P` is `τ_C(p₀ * x)`, so blocks alternate between a digit of
/// `p₀` (`0^{p₀(i)} 1`) and a bit of `x` (`1` or `01`). The decoder tracks the
/// set of `P`-states reachable after the first `i` digit/bit block pairs and
/// finds the next digit as the unique zero-run length after which a one is
/// live and a further zero is not.
pub fn r2_decode(p: &TreeAutomaton, m: usize, bound: usize) -> Answer {
    let live = crate::analysis::live_states(p);
    let step = |s: StateId, l: Label| p.step(s, l).filter(|&t| live[t]);
    let Some(root) = p.root() else {
        return Answer::Failed(String::from("empty solution"));
    };
    let mut frontier: BTreeSet<StateId> = BTreeSet::from([root]);
    let mut digits = Vec::with_capacity(m);
    for i in 0..m {
        let mut zeros = frontier.clone();
        let mut digit = None;
        for n in 0..=bound {
            let ones: BTreeSet<StateId> = zeros.iter().filter_map(|&s| step(s, 1)).collect();
            let more: BTreeSet<StateId> = zeros.iter().filter_map(|&s| step(s, 0)).collect();
            if !ones.is_empty() {
                if !more.is_empty() {
                    return Answer::Failed(format!("digit {i} is ambiguous at {n}"));
                }
                digit = Some((n as Label, ones));
                break;
            }
            if more.is_empty() {
                return Answer::Failed(format!("digit {i}: no live continuation"));
            }
            zeros = more;
        }
        let Some((d, after)) = digit else {
            return Answer::Failed(format!("digit {i} not found within {bound}"));
        };
        digits.push(d);
        frontier = after
            .iter()
            .flat_map(|&s| [step(s, 1), step(s, 0).and_then(|z| step(z, 1))])
            .flatten()
            .collect();
    }
    Answer::Digits(FinSeq::new(digits))
}

/// Search bound of the decoder: `|states(P)|·(max label + 2)`.
pub fn r2_bound(p: &TreeAutomaton, t: &TreeAutomaton) -> usize {
    p.state_count() * (t.max_label().unwrap_or(0) as usize + 2)
}

/// Digit extraction with the kernel as the supplied perfect subtree.
pub fn r2_ucbaire_pst(t: &TreeAutomaton, m: usize) -> Result<ReductionReport, AnalysisError> {
    let forward = r2_forward(t);
    let kernel = perfect_kernel(&forward);
    r2_with_solution(t, m, &forward, kernel)
}

/// Digit extraction from an arbitrary supplied perfect subtree of the forward
/// instance.
pub fn r2_with_solution(
    t: &TreeAutomaton,
    m: usize,
    forward: &TreeAutomaton,
    solution: TreeAutomaton,
) -> Result<ReductionReport, AnalysisError> {
    let p0 = unique_path(t).ok_or(AnalysisError::NotUniquePath)?;
    let bound = r2_bound(&solution, t);
    let decoded = r2_decode(&solution, m, bound);
    let truth = Answer::Digits(p0.take(m));
    let summary = format!("digits={decoded} bound={bound}");
    Ok(ReductionReport::new(
        "r2",
        describe(t),
        vec![
            (String::from("forward"), forward.clone()),
            (String::from("solution"), solution),
        ],
        decoded,
        truth,
        summary,
    ))
}

/// `{0^n} ⊔ T`: its body is a single point iff `T` is well-founded.
pub fn ub_encoding(t: &TreeAutomaton) -> TreeAutomaton {
    disjoint_union(&[corpus::zpath(), t.clone()]).expect("two trees")
}

/// Both well-foundedness encodings: explosion (countable iff well-founded)
/// and `{0^n} ⊔ T` (one path iff well-founded).
pub fn r3_wf_encodings(t: &TreeAutomaton) -> ReductionReport {
    let e = explode(t);
    let u = ub_encoding(t);
    let ce = body_cardinality(&e);
    let cu = body_cardinality(&u);
    let wf = is_wellfounded(t);
    let decoded = vec![ce.is_countable(), cu == CardinalityClass::Finite(1)];
    let summary = format!("explode={ce} union={cu} wf={wf}");
    ReductionReport::new(
        "r3",
        describe(t),
        vec![(String::from("explode"), e), (String::from("union"), u)],
        Answer::Bits(decoded),
        Answer::Bits(vec![wf, wf]),
        summary,
    )
}

/// `{j^n τ : j < 2^m, τ ∈ ẽ(T)}`: `2^m` isolated points when `T` is
/// well-founded, none otherwise.
pub fn powered_explosion(t: &TreeAutomaton, m: usize) -> TreeAutomaton {
    let e = explode(t);
    let mut nfa = Nfa::new();
    let start = nfa.state("start");
    let ids = nfa.embed(&e, "e.");
    if let Some(r) = e.root() {
        nfa.merge_edges(start, ids[r]);
    }
    for j in 0..(1u64 << m) {
        let pre = nfa.state(format!("j{j}"));
        nfa.edge(start, j, pre);
        nfa.edge(pre, j, pre);
        if let Some(r) = e.root() {
            nfa.merge_edges(pre, ids[r]);
        }
    }
    nfa.determinize(start)
}

/// Well-foundedness of up to six trees from one scattered count: the count
/// of `⊔_m S^m` is `1 + Σ_{T^m well-founded} 2^m`.
pub fn r4_wfstar_sccount(ts: &[TreeAutomaton]) -> Result<ReductionReport, AnalysisError> {
    if ts.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    if ts.len() > 6 {
        return Err(AnalysisError::TooManyTrees(ts.len()));
    }
    let parts: Vec<TreeAutomaton> = ts.iter().enumerate().map(|(m, t)| powered_explosion(t, m)).collect();
    let u = disjoint_union(&parts)?;
    let k = scattered_count(&u);
    let truth: Vec<bool> = ts.iter().map(is_wellfounded).collect();
    let decoded = match k.checked_sub(1) {
        Some(v) if v < 1 << ts.len() => Answer::Bits((0..ts.len()).map(|m| v >> m & 1 == 1).collect()),
        _ => Answer::Failed(format!("k={k} out of range")),
    };
    let summary = format!("k={k} bits={decoded}");
    Ok(ReductionReport::new(
        "r4",
        format!("{} trees", ts.len()),
        vec![(String::from("union"), u)],
        decoded,
        Answer::Bits(truth),
        summary,
    ))
}

/// Well-foundedness from the kernel of `τ_C(ẽ(T))`: empty iff well-founded.
pub fn r5_wfs_pk(t: &TreeAutomaton) -> ReductionReport {
    let forward = translate_tree_to_binary(&explode(t));
    let kernel = perfect_kernel(&forward);
    let empty = kernel.is_empty();
    let summary = format!("kernel_states={} wf={empty}", kernel.state_count());
    ReductionReport::new(
        "r5",
        describe(t),
        vec![(String::from("forward"), forward), (String::from("kernel"), kernel)],
        Answer::Flag(empty),
        Answer::Flag(is_wellfounded(t)),
        summary,
    )
}

/// `LPO(p) = 1` iff `p = 0^ω`.
pub fn lpo(p: &Lasso) -> bool {
    *p == Lasso::zeros()
}

/// The closed set `{i^ω : i ∈ a}`.
pub fn index_set_tree(a: &[usize]) -> TreeAutomaton {
    let mut b = Builder::new();
    let r = b.state("r");
    for &i in a {
        let s = b.state(format!("i{i}"));
        b.edge(r, i as Label, s).unwrap();
        b.edge(s, i as Label, s).unwrap();
    }
    b.finish(Some(r))
}

/// Answers `LPO(p_i)` from a listing of `A = {i : p_i = 0^ω}` by dovetailing:
/// at stage `s` look at digit `s` of `p_i` and at entry `s` of the listing.
/// Returns `None` for an input still undecided after `stages`.
pub fn lpo_from_listing(ps: &[Lasso], listing: &[StreamEntry], stages: usize) -> Vec<Option<bool>> {
    ps.iter()
        .enumerate()
        .map(|(i, p)| {
            (0..stages).find_map(|s| {
                if p.digit(s) != 0 {
                    return Some(false);
                }
                let e = listing.get(s)?;
                (e.flag && e.point == Lasso::constant(i as Label)).then_some(true)
            })
        })
        .collect()
}

/// The listing of `A` built from LPO answers: entry `i` is `(b_i, i^ω)` when
/// `b_i = 1` and a placeholder otherwise; the tag is `|A| + 1`.
pub fn listing_from_lpo(answers: &[bool]) -> (u128, Vec<StreamEntry>) {
    let entries = answers
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if b {
                StreamEntry::point(Lasso::constant(i as Label))
            } else {
                StreamEntry::placeholder()
            }
        })
        .collect();
    let count = answers.iter().filter(|&&b| b).count() as u128;
    (count + 1, entries)
}

/// Parallel LPO against listing finite sets, in both directions, using the
/// canonical listing of `A`.
pub fn r6_lpo_list(ps: &[Lasso]) -> Result<ReductionReport, AnalysisError> {
    if ps.len() > 8 {
        return Err(AnalysisError::TooManyTrees(ps.len()));
    }
    let truth: Vec<bool> = ps.iter().map(lpo).collect();
    let a: Vec<usize> = (0..ps.len()).filter(|&i| truth[i]).collect();
    let (tag, listing) = list_countable(&index_set_tree(&a), ps.len() + 1)?;
    r6_with_listing(ps, tag, &listing)
}

/// As [`r6_lpo_list`] with a supplied listing of `A`.
pub fn r6_with_listing(
    ps: &[Lasso],
    tag: u128,
    listing: &[StreamEntry],
) -> Result<ReductionReport, AnalysisError> {
    let truth: Vec<bool> = ps.iter().map(lpo).collect();
    let a: Vec<usize> = (0..ps.len()).filter(|&i| truth[i]).collect();
    let stages = listing.len().max(ps.iter().map(Lasso::period_horizon).max().unwrap_or(0));
    let answers = lpo_from_listing(ps, listing, stages);
    let (btag, built) = listing_from_lpo(&truth);
    let rebuilt: Vec<Lasso> = crate::cb::dedup_list(btag, &built);
    let listed_ok = tag == a.len() as u128 + 1
        && rebuilt == a.iter().map(|&i| Lasso::constant(i as Label)).collect::<Vec<_>>();
    let decoded = if answers.iter().all(Option::is_some) && listed_ok {
        Answer::Bits(answers.iter().map(|b| b.unwrap()).collect())
    } else {
        Answer::Failed(String::from("listing inconsistent or undecided input"))
    };
    let set: Vec<String> = a.iter().map(|i| format!("{i}")).collect();
    let summary = format!("lpo={decoded} A={{{}}}", set.join(","));
    Ok(ReductionReport::new(
        "r6",
        format!("{} sequences", ps.len()),
        Vec::new(),
        decoded,
        Answer::Bits(truth),
        summary,
    ))
}

/// The forward instance of the well-foundedness-to-scattered-listing
/// reduction: `⊔₂` of constant copies of `τ_C(ẽ(T))`.
pub fn r7_forward(t: &TreeAutomaton) -> TreeAutomaton {
    binary_disjoint_union_const(&translate_tree_to_binary(&explode(t)))
}

/// Well-foundedness from a scattered listing: `T` is well-founded iff `0^ω`
/// is a scattered point of the forward instance. `0^ω` has the least
/// canonical key, so it is then the first entry.
pub fn r7_wf_wsclist(t: &TreeAutomaton) -> ReductionReport {
    let forward = r7_forward(t);
    let first = scattered_list(&forward, 1).remove(0);
    let found = first.flag && first.point == Lasso::zeros();
    let summary = format!("zero_scattered={found}");
    ReductionReport::new(
        "r7",
        describe(t),
        vec![(String::from("forward"), forward)],
        Answer::Flag(found),
        Answer::Flag(is_wellfounded(t)),
        summary,
    )
}

/// The kernel of `⊔ ts` sliced at each root label equals the kernel of each
/// tree.
pub fn r8_pk_slices(ts: &[TreeAutomaton]) -> Result<ReductionReport, AnalysisError> {
    let u = disjoint_union(ts)?;
    let p = perfect_kernel(&u);
    let slices: Vec<TreeAutomaton> = (0..ts.len())
        .map(|i| match p.root().and_then(|r| p.step(r, i as Label)) {
            Some(s) => p.rerooted(s),
            None => TreeAutomaton::empty(),
        })
        .collect();
    let kernels: Vec<TreeAutomaton> = ts.iter().map(perfect_kernel).collect();
    let shape: Vec<bool> = slices.iter().map(|s| !s.is_empty()).collect();
    let summary = format!("slices={}", bit_string(&shape));
    Ok(ReductionReport::new(
        "r8",
        format!("{} trees", ts.len()),
        vec![(String::from("kernel"), p)],
        Answer::Trees(slices),
        Answer::Trees(kernels),
        summary,
    ))
}
