// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

//! The golden invocation set, shared by the golden test and the acceptance
//! harness. Invocations run inside `tests/data` so that paths in messages are
//! stable.

use std::path::{Path, PathBuf};
use std::process::Command;

pub const INVOCATIONS: &[(&str, &[&str])] = &[
    ("analyze_comb", &["analyze", "comb.json"]),
    ("analyze_double_comb_json", &["--json", "analyze", "double_comb.json"]),
    ("analyze_three_point_check", &["analyze", "--check", "three_point.json"]),
    ("analyze_empty", &["analyze", "empty.json"]),
    ("analyze_full2", &["analyze", "full2.json"]),
    ("analyze_golden_check", &["analyze", "--check", "golden.json"]),
    ("derive_comb", &["derive", "comb.json"]),
    ("derive_double_comb_2", &["derive", "--steps", "2", "double_comb.json"]),
    ("kernel_union2", &["kernel", "union2_zpath_full2.json"]),
    ("scatter_comb", &["scatter", "--limit", "5", "comb.json"]),
    ("scatter_three_point", &["scatter", "three_point.json"]),
    ("scatter_union2_json", &["--json", "scatter", "union2_zpath_full2.json"]),
    ("list_two_point", &["list", "two_point.json"]),
    ("list_comb_json", &["--json", "list", "--limit", "4", "comb.json"]),
    ("dedup_messy", &["dedup", "messy_listing.json"]),
    ("transform_explode_zpath", &["transform", "explode", "zpath.json"]),
    ("transform_tauc_three_point", &["transform", "tauc", "three_point.json"]),
    ("transform_taub_golden", &["transform", "taub", "golden.json"]),
    ("transform_taub_full2", &["transform", "taub", "full2.json"]),
    ("transform_union2", &["transform", "union2", "zpath.json", "full2.json"]),
    ("transform_interleave", &["transform", "interleave", "comb.json", "zpath.json"]),
    ("certify_comb_global", &["certify", "--global", "--limit", "6", "comb.json"]),
    ("certify_three_point_json", &["--json", "certify", "three_point.json"]),
    ("certify_full2", &["certify", "full2.json"]),
    ("verify_comb_global", &["verify", "comb.json", "comb_global_cert.json"]),
    ("verify_wrong_tree", &["verify", "double_comb.json", "comb_global_cert.json"]),
    ("reduce_r1", &["reduce", "r1", "golden.json"]),
    ("reduce_r2", &["reduce", "r2", "--digits", "12", "zpath.json"]),
    ("reduce_r3", &["reduce", "r3", "comb.json"]),
    ("reduce_r4", &["reduce", "r4", "wf.json", "zpath.json", "wf_branching.json"]),
    ("reduce_r5", &["reduce", "r5", "wf.json"]),
    ("reduce_r6", &["reduce", "r6", "lassos.json"]),
    ("reduce_r7_json", &["--json", "reduce", "r7", "double_comb.json"]),
    ("reduce_r8", &["reduce", "r8", "comb.json", "full2.json", "empty.json"]),
    ("oracle_prefixes", &["oracle", "prefixes", "--depth", "3", "comb.json"]),
    ("oracle_isolated", &["oracle", "isolated", "three_point.json"]),
    ("oracle_count", &["oracle", "count", "--depth", "5", "golden.json"]),
    ("dot_comb", &["dot", "comb.json"]),
    ("corpus_list", &["corpus"]),
    ("corpus_comb", &["corpus", "comb"]),
    ("error_unknown_state", &["analyze", "bad_unknown_state.json"]),
    ("error_nondeterministic", &["analyze", "bad_nondeterministic.json"]),
    ("error_unreachable", &["analyze", "bad_unreachable.json"]),
    ("error_syntax", &["analyze", "bad_syntax.json"]),
    ("error_missing_file", &["analyze", "no_such_file.json"]),
    ("error_bad_budget", &["certify", "--budget", "lots", "comb.json"]),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn data_dir() -> PathBuf {
    crate_dir().join("tests").join("data")
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests").join("golden").join(format!("{name}.out"))
}

/// Runs the binary in `dir` and renders exit code, stdout and stderr as one
/// transcript.
pub fn run_in(dir: &Path, args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_cbtree"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    let mut s = format!("$ cbtree {}\nexit: {}\n", args.join(" "), out.status.code().unwrap_or(-1));
    s.push_str(&String::from_utf8_lossy(&out.stdout));
    if !out.stderr.is_empty() {
        s.push_str("--- stderr\n");
        s.push_str(&String::from_utf8_lossy(&out.stderr));
    }
    s
}

pub fn run(args: &[&str]) -> String {
    run_in(&data_dir(), args)
}
