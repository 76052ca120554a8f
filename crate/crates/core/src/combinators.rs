// SPDX-License-Identifier: Apache-2.0

//! Tree constructors as automaton transformations: disjoint unions, the
//! binary disjoint union along a zero spine, interleaving, explosion and the
//! zero-block translations lifted to trees.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::automaton::{Builder, StateId, TreeAutomaton};
use crate::corpus;
use crate::error::AutomatonError;
use crate::seq::Label;

/// `⊔ ts = {⟨⟩} ∪ {⟨i⟩⌢τ : τ ∈ ts[i]}`.
pub fn disjoint_union(ts: &[TreeAutomaton]) -> Result<TreeAutomaton, AutomatonError> {
    if ts.is_empty() {
        return Err(AutomatonError::EmptyFamily);
    }
    let mut b = Builder::new();
    let root = b.state("u");
    for (i, t) in ts.iter().enumerate() {
        let ids = t.copy_into(&mut b, &format!("{i}."));
        if let Some(r) = t.root() {
            b.edge(root, i as Label, ids[r])?;
        }
    }
    Ok(b.finish(Some(root)))
}

/// `⊔₂ ts = {0^n} ∪ {0^i 1 τ : τ ∈ ts[i]}`.
pub fn binary_disjoint_union(ts: &[TreeAutomaton]) -> TreeAutomaton {
    let mut b = Builder::new();
    let spine: Vec<StateId> = (0..=ts.len()).map(|i| b.state(format!("s{i}"))).collect();
    for w in spine.windows(2) {
        b.edge(w[0], 0, w[1]).unwrap();
    }
    let last = spine[ts.len()];
    b.edge(last, 0, last).unwrap();
    for (i, t) in ts.iter().enumerate() {
        let ids = t.copy_into(&mut b, &format!("{i}."));
        if let Some(r) = t.root() {
            b.edge(spine[i], 1, ids[r]).unwrap();
        }
    }
    b.finish(Some(spine[0]))
}

/// `⊔₂` of the constant family: a copy of `t` after every `0^i 1`.
pub fn binary_disjoint_union_const(t: &TreeAutomaton) -> TreeAutomaton {
    let mut b = Builder::new();
    let sp = b.state("s");
    b.edge(sp, 0, sp).unwrap();
    let ids = t.copy_into(&mut b, "0.");
    if let Some(r) = t.root() {
        b.edge(sp, 1, ids[r]).unwrap();
    }
    b.finish(Some(sp))
}

/// `T * S = {σ*τ : σ ∈ T, τ ∈ S, |σ| = |τ|}` closed under prefixes.
///
/// Even positions read `T`, odd positions read `S`. An odd-length word is kept
/// only when the `S` side can still be extended, so the language is exactly
/// the prefix closure.
pub fn interleave_trees(t: &TreeAutomaton, s: &TreeAutomaton) -> TreeAutomaton {
    let (Some(rt), Some(rs)) = (t.root(), s.root()) else {
        return TreeAutomaton::empty();
    };
    let mut b = Builder::new();
    let mut ids: BTreeMap<(StateId, StateId, bool), StateId> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |b: &mut Builder, key: (StateId, StateId, bool), queue: &mut VecDeque<_>| {
        *ids.entry(key).or_insert_with(|| {
            queue.push_back(key);
            let parity = if key.2 { "o" } else { "e" };
            b.state(format!("{}.{}{parity}", key.0, key.1))
        })
    };
    let root = intern(&mut b, (rt, rs, false), &mut queue);
    while let Some(key @ (p, q, odd)) = queue.pop_front() {
        let from = intern(&mut b, key, &mut queue);
        if odd {
            for (&l, &q2) in s.edges(q) {
                let to = intern(&mut b, (p, q2, false), &mut queue);
                b.edge(from, l, to).unwrap();
            }
        } else if !s.edges(q).is_empty() {
            for (&l, &p2) in t.edges(p) {
                let to = intern(&mut b, (p2, q, true), &mut queue);
                b.edge(from, l, to).unwrap();
            }
        }
    }
    b.finish(Some(root))
}

/// `T * 2^{<ℕ}`: every path of `T` becomes a perfect set of paths.
pub fn explode(t: &TreeAutomaton) -> TreeAutomaton {
    interleave_trees(t, &corpus::full_binary())
}

/// `{τ ∈ 2^{<ℕ} : τ_B(τ) ∈ S}`.
///
/// State `(s, c)` means the completed blocks lead to `s` and `c` zeros of the
/// current block are pending. Once `c` exceeds every label at `s`, no further
/// one can be accepted but trailing zeros still are, so the word moves to a
/// zero sink.
pub fn translate_tree_to_binary(s: &TreeAutomaton) -> TreeAutomaton {
    let Some(rs) = s.root() else {
        return TreeAutomaton::empty();
    };
    let mut b = Builder::new();
    let sink = b.state("0*");
    b.edge(sink, 0, sink).unwrap();
    let mut ids: BTreeMap<(StateId, Label), StateId> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |b: &mut Builder, key: (StateId, Label), queue: &mut VecDeque<_>| {
        *ids.entry(key).or_insert_with(|| {
            queue.push_back(key);
            b.state(format!("{}#{}", s.name(key.0), key.1))
        })
    };
    let root = intern(&mut b, (rs, 0), &mut queue);
    while let Some(key @ (q, c)) = queue.pop_front() {
        let from = intern(&mut b, key, &mut queue);
        if let Some(q2) = s.step(q, c) {
            let to = intern(&mut b, (q2, 0), &mut queue);
            b.edge(from, 1, to).unwrap();
        }
        let more = s.edges(q).range(c + 1..).next().is_some();
        let to = if more {
            intern(&mut b, (q, c + 1), &mut queue)
        } else {
            sink
        };
        b.edge(from, 0, to).unwrap();
    }
    b.finish(Some(root))
}

/// `{σ ∈ ℕ^{<ℕ} : τ_C(σ) ∈ T}` for binary `T`.
///
/// The label `n` leads from `t` to the state after `0^n 1`. Fails when the
/// zero-walk from some state cycles through a state with a one-edge, since
/// that state would need infinitely many labels.
pub fn translate_tree_to_baire(t: &TreeAutomaton) -> Result<TreeAutomaton, AutomatonError> {
    let Some(rt) = t.root() else {
        return Ok(TreeAutomaton::empty());
    };
    let mut b = Builder::new();
    let mut ids: BTreeMap<StateId, StateId> = BTreeMap::new();
    let mut queue = VecDeque::from([rt]);
    ids.insert(rt, b.state(t.name(rt)));
    while let Some(q) = queue.pop_front() {
        let from = ids[&q];
        let mut walk: Vec<StateId> = Vec::new();
        let mut cur = Some(q);
        while let Some(z) = cur {
            if walk.contains(&z) {
                if walk.iter().skip_while(|&&w| w != z).any(|&w| t.step(w, 1).is_some()) {
                    return Err(AutomatonError::InfiniteLabelSupport {
                        state: t.name(q).into(),
                    });
                }
                break;
            }
            walk.push(z);
            cur = t.step(z, 0);
        }
        for (n, &z) in walk.iter().enumerate() {
            if let Some(target) = t.step(z, 1) {
                let to = *ids.entry(target).or_insert_with(|| {
                    queue.push_back(target);
                    b.state(t.name(target))
                });
                b.edge(from, n as Label, to).unwrap();
            }
        }
    }
    Ok(b.finish(Some(ids[&rt])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{body_cardinality, is_wellfounded, CardinalityClass::*};
    use crate::automaton::tree_equal;

    #[test]
    fn unions() {
        let z = corpus::zpath();
        let u = disjoint_union(&[z.clone(), z.clone()]).unwrap();
        assert_eq!(body_cardinality(&u), Finite(2));
        assert!(is_wellfounded(&disjoint_union(&[corpus::chain(2)]).unwrap()));
        assert_eq!(
            body_cardinality(&disjoint_union(&[corpus::full_binary(), z.clone()]).unwrap()),
            Continuum
        );
        assert_eq!(disjoint_union(&[]).unwrap_err(), AutomatonError::EmptyFamily);
        assert_eq!(body_cardinality(&binary_disjoint_union(&[z.clone(), z])), Finite(3));
        assert_eq!(
            body_cardinality(&binary_disjoint_union_const(&corpus::chain(2))),
            Finite(1)
        );
        assert_eq!(
            body_cardinality(&binary_disjoint_union_const(&corpus::comb())),
            CountablyInfinite
        );
    }

    #[test]
    fn interleaving() {
        let z = corpus::zpath();
        let zz = interleave_trees(&z, &z);
        assert!(tree_equal(&zz, &z));
        assert!(is_wellfounded(&explode(&corpus::chain(3))));
        let e = explode(&corpus::constant_path(3));
        assert_eq!(body_cardinality(&e), Continuum);
        assert!(e.member(&[3, 1, 3, 0, 3]));
        assert!(!e.member(&[3, 1, 2]));
        // Odd-length words need an S-continuation.
        let chain1 = corpus::chain(1);
        let c = interleave_trees(&z, &chain1);
        assert!(c.member(&[0, 0]));
        assert!(!c.member(&[0, 0, 0]));
    }

    #[test]
    fn binary_translation_membership() {
        let s = corpus::three_point();
        let t = translate_tree_to_binary(&s);
        assert!(t.is_binary());
        for w in [&[1u64, 1][..], &[0, 1, 0, 0, 0], &[0, 1, 0, 1, 0, 0, 1], &[0, 0, 0, 0, 0]] {
            let image = crate::seq::tau_b_fin(w).unwrap();
            assert_eq!(t.member(w), s.member(&image), "{w:?}");
        }
    }

    #[test]
    fn baire_translation() {
        let g = corpus::golden();
        let b = translate_tree_to_baire(&g).unwrap();
        assert!(b.member(&[0, 1, 0, 0]));
        assert!(!b.member(&[2]));
        assert!(matches!(
            translate_tree_to_baire(&corpus::full_binary()),
            Err(AutomatonError::InfiniteLabelSupport { .. })
        ));
        let s = corpus::comb();
        assert!(tree_equal(&translate_tree_to_baire(&translate_tree_to_binary(&s)).unwrap(), &s));
    }
}
