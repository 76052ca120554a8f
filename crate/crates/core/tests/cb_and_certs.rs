// SPDX-License-Identifier: Apache-2.0

mod common;

use cbtree::cert::{Clause, CertEntry};
use cbtree::oracle::{extendible_prefixes, isolated_closure, Derived, Membership};
use cbtree::{
    body_cardinality, cb_rank, corpus, derivative, enumerate_paths, global_cert, list_countable,
    one_step_cert, perfect_kernel, prune, scattered_count, scattered_list, tree_equal,
    tree_included, verify_global, verify_one_step, CardinalityClass, FinSeq, LabelBudget, Lasso, TreeAutomaton,
};
use cbtree::cb::{dedup_list, derivative_chain, scattered_class, StreamEntry};
use proptest::prelude::*;

use common::{all_words, budget};

fn countable_corpus() -> Vec<(String, TreeAutomaton)> {
    corpus::standard()
        .into_iter()
        .filter(|(_, t)| {
            let c = body_cardinality(t);
            c != CardinalityClass::Empty && c.is_countable()
        })
        .collect()
}

fn kernel_laws(t: &TreeAutomaton) -> Result<(), String> {
    let k = perfect_kernel(t);
    if !tree_included(&k, &prune(t)) {
        return Err("kernel escapes the pruned tree".into());
    }
    if !tree_equal(&derivative(&k), &k) || !tree_equal(&perfect_kernel(&k), &k) {
        return Err("kernel is not perfect".into());
    }
    // A node lies in the kernel exactly when uncountably many paths pass it.
    let width = t.max_label().map_or(1, |m| m + 2);
    for l in 0..=5 {
        for w in all_words(l, width) {
            let uncountable = t
                .subtree(&w)
                .is_ok_and(|s| body_cardinality(&s) == CardinalityClass::Continuum);
            if k.member(&w) != uncountable {
                return Err(format!("kernel membership wrong at {w:?}"));
            }
        }
    }
    Ok(())
}

#[test]
fn kernel_laws_on_the_corpus() {
    for (name, t) in corpus::standard() {
        kernel_laws(&t).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn derivatives_agree_with_the_oracle() {
    for (name, t) in corpus::standard() {
        let b = budget(&t);
        let d = 7;
        let derived = Derived::new(Box::new(t.clone()), b);
        assert_eq!(
            extendible_prefixes(&derived, d, b),
            extendible_prefixes(&derivative(&t), d, b),
            "{name}"
        );
        // Iterating the oracle derivative past the rank reaches the kernel.
        let mut cur: Box<dyn Membership> = Box::new(t.clone());
        for _ in 0..=cb_rank(&t) {
            cur = Box::new(Derived::new(cur, b));
        }
        assert_eq!(
            extendible_prefixes(&*cur, d, b),
            extendible_prefixes(&perfect_kernel(&t), d, b),
            "{name}"
        );
    }
}

#[test]
fn ranks_and_chains() {
    let want = [
        ("empty", 0),
        ("chain", 0),
        ("zpath", 1),
        ("comb", 2),
        ("double_comb", 3),
        ("full2", 0),
        ("three_point", 1),
    ];
    let all = corpus::standard();
    for (name, r) in want {
        let t = &all.iter().find(|(n, _)| n == name).unwrap().1;
        assert_eq!(cb_rank(t), r, "{name}");
    }
    for (name, t) in &all {
        let chain = derivative_chain(t);
        assert_eq!(cb_rank(t), chain.len() - 1, "{name}");
        assert!(cb_rank(t) <= t.state_count(), "{name}");
        assert!(tree_equal(chain.last().unwrap(), &perfect_kernel(t)), "{name}");
        assert_eq!(cb_rank(t) == 0, tree_equal(&prune(t), &perfect_kernel(t)), "{name}");
    }
}

fn stream_coherent(t: &TreeAutomaton) -> Result<(), String> {
    let code = scattered_count(t);
    let kernel = perfect_kernel(t);
    let n = if code == 0 { 40 } else { code as usize - 1 };
    let list = scattered_list(t, n + 10);
    for (i, e) in list.iter().enumerate() {
        if e.flag != (code == 0 || i < n) {
            return Err(format!("entry {i} has flag {} with count code {code}", e.flag));
        }
        if e.flag {
            if !t.accepts_lasso(&e.point) || kernel.accepts_lasso(&e.point) {
                return Err(format!("{} is not scattered", e.point));
            }
            if i > 0 && list[i - 1].point >= e.point {
                return Err(format!("{} out of canonical order", e.point));
            }
        } else if *e != StreamEntry::placeholder() {
            return Err(format!("bad placeholder {}", e.point));
        }
    }
    let class = scattered_class(t);
    if (code == 0) != (class == CardinalityClass::CountablyInfinite) {
        return Err(format!("code {code} for class {class}"));
    }
    if tree_equal(&kernel, &TreeAutomaton::empty()) && class != body_cardinality(t) {
        return Err("empty kernel but scattered class differs from the body".into());
    }
    Ok(())
}

#[test]
fn scattered_streams_are_coherent() {
    for (name, t) in corpus::standard() {
        stream_coherent(&t).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn finite_scattered_parts_match_the_oracle_closure() {
    for (name, t) in corpus::standard() {
        let code = scattered_count(&t);
        if code == 0 {
            continue;
        }
        let h = t.state_count();
        let report = isolated_closure(t.clone(), 2 * h, budget(&t));
        assert!(!report.inconclusive, "{name}");
        let listed: Vec<Lasso> = scattered_list(&t, code as usize - 1).into_iter().map(|e| e.point).collect();
        assert_eq!(report.points, listed, "{name}");
        if code > 1 {
            assert_eq!(report.rounds, cb_rank(&t), "{name}");
        }
    }
}

#[test]
fn listing_countable_bodies_and_dedup() {
    let (tag, entries) = list_countable(&corpus::three_point(), 5).unwrap();
    assert_eq!(tag, 4);
    assert_eq!(entries.iter().filter(|e| e.flag).count(), 3);
    assert!(list_countable(&corpus::full_binary(), 1).is_err());

    let p = |c: u64| Lasso::constant(c);
    let messy = vec![
        StreamEntry::placeholder(),
        StreamEntry::point(p(2)),
        StreamEntry::point(p(1)),
        StreamEntry::point(p(2)),
        StreamEntry { flag: false, point: p(7) },
        StreamEntry::point(p(0)),
        StreamEntry::point(p(3)),
    ];
    assert_eq!(dedup_list(0, &messy), vec![p(2), p(1), p(0), p(3)]);
    assert_eq!(dedup_list(3, &messy), vec![p(2), p(1)]);
    assert_eq!(dedup_list(1, &messy), Vec::<Lasso>::new());
}

#[test]
fn certificates_verify_on_the_corpus() {
    for (name, t) in countable_corpus() {
        let b = LabelBudget::default_for(&t);
        let c = one_step_cert(&t, 40, b).unwrap();
        assert_eq!(verify_one_step(&t, &c, 6), vec![], "{name}");
        assert!(tree_equal(&c.residue, &derivative(&t)), "{name}");
        let g = global_cert(&t, 40, b).unwrap();
        assert_eq!(verify_global(&t, &g, 6), vec![], "{name}");
        assert_eq!(g.levels.len(), cb_rank(&t), "{name}");
        let again = global_cert(&t, 40, b).unwrap();
        assert_eq!(g.order, again.order);
        for (x, y) in g.levels.iter().zip(&again.levels) {
            assert_eq!(x.entries, y.entries, "{name}");
        }
    }
    let comb = corpus::comb();
    assert_eq!(global_cert(&comb, 5, LabelBudget::default_for(&comb)).unwrap().order, vec![1, 0]);
    assert!(one_step_cert(&corpus::full_binary(), 3, LabelBudget::Below(3)).is_err());
    assert!(one_step_cert(&TreeAutomaton::empty(), 3, LabelBudget::Below(3)).is_err());
}

#[test]
fn every_point_is_isolated_at_exactly_one_level() {
    for (name, t) in countable_corpus() {
        let g = global_cert(&t, 300, LabelBudget::default_for(&t)).unwrap();
        for p in enumerate_paths(&t, 15).unwrap() {
            let hits: Vec<usize> = g
                .levels
                .iter()
                .enumerate()
                .filter(|(_, l)| l.entries.iter().any(|e| e.flag && e.point == p && p.has_prefix(&e.sigma)))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(hits.len(), 1, "{name}: {p} at levels {hits:?}");
        }
    }
}

fn seq(v: &[u64]) -> FinSeq {
    FinSeq::from(v)
}

#[test]
fn broken_certificates_fail_the_right_clause() {
    let comb = corpus::comb();
    let good = one_step_cert(&comb, 6, LabelBudget::default_for(&comb)).unwrap();
    let clauses = |c| verify_one_step(&comb, c, 6).into_iter().map(|v| v.clause).collect::<Vec<_>>();

    let mut extra = good.clone();
    let pos = extra.entries.iter().position(|e| e.sigma.code() > seq(&[1, 1]).code()).unwrap();
    extra.entries.insert(
        pos,
        CertEntry {
            sigma: seq(&[1, 1]),
            flag: true,
            point: Lasso::constant(1),
        },
    );
    assert_eq!(clauses(&extra), vec![Clause::Incomparable]);

    let mut wrong_point = good.clone();
    wrong_point.entries[0].point = Lasso::new(&[1], &[0]).unwrap();
    assert_eq!(clauses(&wrong_point), vec![Clause::FlagOneMembership]);

    let mut swapped = good.clone();
    swapped.entries.swap(0, 1);
    assert!(clauses(&swapped).contains(&Clause::CodeOrder));

    let mut dropped = good.clone();
    dropped.entries.remove(1);
    assert!(clauses(&dropped).contains(&Clause::Coverage));

    let mut live_dead = good.clone();
    live_dead.entries[0].flag = false;
    live_dead.entries[0].point = Lasso::zeros();
    assert!(clauses(&live_dead).contains(&Clause::FlagZeroEmpty));

    let mut bad_residue = good;
    bad_residue.residue = comb.clone();
    assert!(clauses(&bad_residue).contains(&Clause::Residue));
}

#[test]
fn broken_global_certificates_fail() {
    let comb = corpus::comb();
    let good = global_cert(&comb, 6, LabelBudget::default_for(&comb)).unwrap();
    let mut reordered = good.clone();
    reordered.levels.swap(0, 1);
    reordered.order.swap(0, 1);
    let v: Vec<_> = verify_global(&comb, &reordered, 6).into_iter().map(|v| v.clause).collect();
    assert_eq!(v, vec![Clause::WitnessOrder]);

    let mut truncated = good;
    truncated.levels.remove(0);
    truncated.order = vec![0];
    let v: Vec<_> = verify_global(&comb, &truncated, 6).into_iter().map(|v| v.clause).collect();
    assert!(v.contains(&Clause::GlobalCoverage), "{v:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_kernels_obey_the_laws(t in common::automaton(4, 2)) {
        prop_assert!(kernel_laws(&t).is_ok(), "{:?}", kernel_laws(&t));
        prop_assert!(stream_coherent(&t).is_ok(), "{:?}", stream_coherent(&t));
    }

    #[test]
    fn random_certificates_verify(t in common::automaton(4, 2)) {
        let c = body_cardinality(&t);
        prop_assume!(c != CardinalityClass::Empty && c.is_countable());
        let b = LabelBudget::default_for(&t);
        let g = global_cert(&t, 25, b).unwrap();
        prop_assert_eq!(verify_global(&t, &g, 5), vec![]);
    }
}
