// SPDX-License-Identifier: Apache-2.0

//! Graphviz rendering. Node identifiers are the automaton's state names.

use std::fmt::Write;

use cbtree::TreeAutomaton;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn render(t: &TreeAutomaton) -> String {
    let mut out = String::from("digraph tree {\n  rankdir=LR;\n");
    if let Some(r) = t.root() {
        // An invisible entry node points at the root.
        out.push_str("  __start [shape=point];\n");
        writeln!(out, "  __start -> {};", quote(t.name(r))).unwrap();
    }
    for s in 0..t.state_count() {
        writeln!(out, "  {};", quote(t.name(s))).unwrap();
    }
    for (f, l, to) in t.edge_list() {
        writeln!(out, "  {} -> {} [label=\"{l}\"];", quote(t.name(f)), quote(t.name(to))).unwrap();
    }
    out.push_str("}\n");
    out
}
