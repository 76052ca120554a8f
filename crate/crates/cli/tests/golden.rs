// SPDX-License-Identifier: Apache-2.0

//! Transcripts of the golden invocations. Set `CBTREE_BLESS=1` to rewrite the
//! expected files after an intended output change.

mod common;

use std::fs;

use common::{golden_path, run, INVOCATIONS};

#[test]
fn transcripts_match_the_golden_files() {
    let bless = std::env::var_os("CBTREE_BLESS").is_some();
    let mut mismatched = Vec::new();
    for (name, args) in INVOCATIONS {
        let got = run(args);
        let path = golden_path(name);
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if got != want {
            mismatched.push(format!("{name}:\n--- want\n{want}--- got\n{got}"));
        }
    }
    assert!(mismatched.is_empty(), "{}", mismatched.join("\n"));
}

#[test]
fn exit_codes_follow_the_convention() {
    let code = |args: &[&str]| run(args).lines().nth(1).unwrap().to_string();
    assert_eq!(code(&["analyze", "comb.json"]), "exit: 0");
    assert_eq!(code(&["analyze", "bad_syntax.json"]), "exit: 1");
    assert_eq!(code(&["frobnicate"]), "exit: 1");
    assert_eq!(code(&["--help"]), "exit: 0");
    assert_eq!(code(&["verify", "double_comb.json", "comb_global_cert.json"]), "exit: 2");
}

#[test]
fn diagnostics_name_the_offending_field() {
    let t = run(&["analyze", "bad_unknown_state.json"]);
    assert!(t.contains("edges[1].to: unknown state `x`"), "{t}");
    let t = run(&["analyze", "bad_nondeterministic.json"]);
    assert!(t.contains("edges[1]: state `r` already has an edge labelled 0 at edges[0]"), "{t}");
    let t = run(&["analyze", "bad_unreachable.json"]);
    assert!(t.contains("states[1]: state `c` is not reachable"), "{t}");
    let t = run(&["analyze", "bad_syntax.json"]);
    assert!(t.contains("bad_syntax.json:5:"), "{t}");
}

#[test]
fn emitted_automata_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let k = run(&["kernel", "union2_zpath_full2.json"]);
    let body: String = k.lines().skip(2).map(|l| format!("{l}\n")).collect();
    let path = dir.path().join("k.json");
    fs::write(&path, body).unwrap();
    let t = common::run_in(dir.path(), &["analyze", "k.json"]);
    assert!(t.contains("cardinality=2^ℵ₀ wf=false rank=0 sccount=1"), "{t}");
}
