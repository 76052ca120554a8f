// SPDX-License-Identifier: Apache-2.0

mod common;

use cbtree::analysis::unique_path;
use cbtree::combinators::explode;
use cbtree::reductions::{
    r1_ptt_binary, r2_forward, r2_ucbaire_pst, r3_wf_encodings, r4_wfstar_sccount, r5_wfs_pk, r6_lpo_list,
    r6_with_listing, r7_forward, r7_wf_wsclist, r8_pk_slices, Answer,
};
use cbtree::{
    body_cardinality, corpus, is_wellfounded, perfect_kernel, tree_equal, AnalysisError, CardinalityClass, Lasso,
    StreamEntry, TreeAutomaton,
};
use proptest::prelude::*;

use common::unroll;

#[test]
fn r1_on_continuum_trees() {
    let mut seen = 0;
    for (name, t) in corpus::standard() {
        match r1_ptt_binary(&t) {
            Ok(r) => {
                assert!(r.agrees, "{name}: {}", r.summary);
                seen += 1;
            }
            Err(e) => {
                assert_eq!(e, AnalysisError::Countable, "{name}");
                assert!(body_cardinality(&t).is_countable(), "{name}");
            }
        }
        if !is_wellfounded(&t) {
            let r = r1_ptt_binary(&explode(&t)).unwrap();
            assert!(r.agrees, "explode({name}): {}", r.summary);
        }
    }
    assert!(seen >= 5);
}

#[test]
fn r2_reads_unique_paths() {
    let mut singles: Vec<(String, TreeAutomaton)> = corpus::standard()
        .into_iter()
        .filter(|(_, t)| body_cardinality(t) == CardinalityClass::Finite(1))
        .collect();
    for n in 1..5 {
        singles.push((format!("constant_path({n})"), corpus::constant_path(n)));
    }
    for (name, t) in singles {
        let r = r2_ucbaire_pst(&t, 20).unwrap();
        assert!(r.agrees, "{name}: {}", r.summary);
        let Answer::Digits(d) = &r.decoded else { panic!("{name}") };
        assert_eq!(d.digits(), &unique_path(&t).unwrap().take(20)[..]);
    }
    assert_eq!(r2_ucbaire_pst(&corpus::two_point(), 3).unwrap_err(), AnalysisError::NotUniquePath);
}

#[test]
fn wellfoundedness_reductions_on_the_corpus() {
    for (name, t) in corpus::standard() {
        for r in [r3_wf_encodings(&t), r5_wfs_pk(&t), r7_wf_wsclist(&t)] {
            assert!(r.agrees, "{} on {name}: {}", r.name, r.summary);
        }
    }
}

#[test]
fn forward_maps_ignore_the_presentation() {
    for (name, t) in corpus::standard() {
        let u = unroll(&t);
        assert!(tree_equal(&r7_forward(&t), &r7_forward(&u)), "{name}");
        assert!(tree_equal(&r2_forward(&t), &r2_forward(&u)), "{name}");
        assert_eq!(r5_wfs_pk(&t).summary.ends_with("true"), r5_wfs_pk(&u).summary.ends_with("true"));
    }
}

#[test]
fn r4_decodes_every_pattern_up_to_three() {
    let wf = [corpus::chain(2), corpus::wf_branching(), TreeAutomaton::empty()];
    let ill = [corpus::zpath(), corpus::comb(), corpus::two_point()];
    for k in 1..=3 {
        for mask in 0..(1u32 << k) {
            let ts: Vec<TreeAutomaton> = (0..k)
                .map(|m| {
                    if mask >> m & 1 == 1 {
                        wf[m % wf.len()].clone()
                    } else {
                        ill[m % ill.len()].clone()
                    }
                })
                .collect();
            let r = r4_wfstar_sccount(&ts).unwrap();
            assert!(r.agrees, "k={k} mask={mask:b}: {}", r.summary);
            let want: u32 = 1 + mask;
            assert!(r.summary.starts_with(&format!("k={want} ")), "{}", r.summary);
        }
    }
    assert_eq!(r4_wfstar_sccount(&[]).unwrap_err(), AnalysisError::EmptyInput);
}

#[test]
fn r6_every_pattern_up_to_four() {
    let other = [
        Lasso::new(&[], &[0, 1]).unwrap(),
        Lasso::new(&[0, 0, 0], &[2]).unwrap(),
        Lasso::constant(1),
        Lasso::new(&[0, 0, 0, 0, 0, 3], &[0]).unwrap(),
    ];
    for k in 1..=4 {
        for mask in 0..(1u32 << k) {
            let ps: Vec<Lasso> = (0..k)
                .map(|i| if mask >> i & 1 == 1 { Lasso::zeros() } else { other[i].clone() })
                .collect();
            let r = r6_lpo_list(&ps).unwrap();
            assert!(r.agrees, "{mask:b}: {}", r.summary);
        }
    }
}

#[test]
fn r6_rejects_a_wrong_listing() {
    let ps = [Lasso::zeros(), Lasso::constant(1)];
    let wrong = [StreamEntry::point(Lasso::constant(1)), StreamEntry::placeholder()];
    let r = r6_with_listing(&ps, 2, &wrong).unwrap();
    assert!(!r.agrees);
    let right = [StreamEntry::placeholder(), StreamEntry::point(Lasso::constant(0))];
    assert!(r6_with_listing(&ps, 2, &right).unwrap().agrees);
}

#[test]
fn r8_on_all_pairs() {
    let ts = corpus::standard();
    for (na, a) in &ts {
        for (nb, b) in &ts {
            let r = r8_pk_slices(&[a.clone(), b.clone()]).unwrap();
            assert!(r.agrees, "{na}, {nb}: {}", r.summary);
            let want: String = [a, b]
                .iter()
                .map(|t| if perfect_kernel(t).is_empty() { '0' } else { '1' })
                .collect();
            assert_eq!(r.summary, format!("slices={want}"));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_wellfoundedness_reductions(t in common::automaton(3, 1)) {
        prop_assert!(r3_wf_encodings(&t).agrees);
        prop_assert!(r5_wfs_pk(&t).agrees);
        prop_assert!(r7_wf_wsclist(&t).agrees);
        prop_assert!(r8_pk_slices(&[t.clone(), corpus::comb()]).unwrap().agrees);
    }
}
