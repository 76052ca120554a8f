// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write;
use std::path::PathBuf;

use cbtree::cb::dedup_list;
use cbtree::combinators::{
    binary_disjoint_union, binary_disjoint_union_const, disjoint_union, explode, interleave_trees,
    translate_tree_to_baire, translate_tree_to_binary,
};
use cbtree::oracle::{self, Budget, Count};
use cbtree::reductions::{self as red, ReductionReport};
use cbtree::{
    body_cardinality, cb_full, corpus, derivative, global_cert, is_wellfounded, list_countable, one_step_cert,
    perfect_kernel, verify_global, verify_one_step, CardinalityClass, LabelBudget, StreamEntry, TreeAutomaton,
};
use serde_json::json;

use crate::io::{self, Cert};
use crate::{Cli, CliError, Cmd, OracleQuery, Output, Reduction, TransformOp};

pub fn run(cli: Cli) -> Result<Output, CliError> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Analyze { file, check } => analyze(&io::load_automaton(&file)?, json, check),
        Cmd::Derive { file, steps } => {
            let mut t = io::load_automaton(&file)?;
            for _ in 0..steps {
                t = derivative(&t);
            }
            Ok(automaton_out(&t))
        }
        Cmd::Kernel { file } => Ok(automaton_out(&perfect_kernel(&io::load_automaton(&file)?))),
        Cmd::Scatter { file, limit } => {
            let t = io::load_automaton(&file)?;
            let (report, entries) = cb_full(&t, limit);
            Ok(Output::ok(listing_out("sccount", report.sccount_code, &entries, json)))
        }
        Cmd::List { file, limit } => {
            let (tag, entries) = list_countable(&io::load_automaton(&file)?, limit)?;
            Ok(Output::ok(listing_out("tag", tag, &entries, json)))
        }
        Cmd::Dedup { file } => {
            let (tag, entries) = io::load_listing(&file)?;
            let points = dedup_list(tag, &entries);
            Ok(Output::ok(if json {
                io::to_json(&points.iter().map(io::lasso_to_file).collect::<Vec<_>>())
            } else {
                points.iter().map(|p| format!("{p}\n")).collect()
            }))
        }
        Cmd::Transform { op, files } => transform(op, &files),
        Cmd::Certify {
            file,
            global,
            limit,
            budget,
        } => {
            let t = io::load_automaton(&file)?;
            let budget = budget.unwrap_or_else(|| LabelBudget::default_for(&t));
            let cert = if global {
                Cert::Global(global_cert(&t, limit, budget)?)
            } else {
                Cert::OneStep(one_step_cert(&t, limit, budget)?)
            };
            Ok(Output::ok(if json {
                io::to_json(&io::cert_to_file(&cert))
            } else {
                cert_text(&cert)
            }))
        }
        Cmd::Verify { file, cert, depth } => {
            let t = io::load_automaton(&file)?;
            let violations = match io::load_cert(&cert)? {
                Cert::OneStep(c) => verify_one_step(&t, &c, depth),
                Cert::Global(g) => verify_global(&t, &g, depth),
            };
            let text = if json {
                let v: Vec<_> = violations
                    .iter()
                    .map(|v| json!({"level": v.level, "clause": v.clause.to_string(), "detail": v.detail}))
                    .collect();
                io::to_json(&json!({"ok": violations.is_empty(), "violations": v}))
            } else if violations.is_empty() {
                String::from("ok\n")
            } else {
                violations
                    .iter()
                    .map(|v| match v.level {
                        Some(l) => format!("violation level={l} clause={} {}\n", v.clause, v.detail),
                        None => format!("violation clause={} {}\n", v.clause, v.detail),
                    })
                    .collect()
            };
            Ok(Output {
                text,
                disagreement: !violations.is_empty(),
            })
        }
        Cmd::Reduce { which, inputs, digits } => reduce(which, &inputs, digits, json),
        Cmd::Oracle {
            query,
            file,
            depth,
            width,
            horizon,
            cap,
        } => {
            let t = io::load_automaton(&file)?;
            let mut budget = Budget::for_states(t.state_count());
            if let Some(w) = width {
                budget.width = w;
            }
            if let Some(h) = horizon {
                budget.horizon = h;
            }
            Ok(Output::ok(oracle_query(query, &t, depth, budget, cap, json)))
        }
        Cmd::Dot { file } => Ok(Output::ok(crate::dot::render(&io::load_automaton(&file)?))),
        Cmd::Corpus { name } => {
            let all = corpus::standard();
            match name {
                None if json => Ok(Output::ok(io::to_json(
                    &all.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(),
                ))),
                None => Ok(Output::ok(all.iter().map(|(n, _)| format!("{n}\n")).collect())),
                Some(n) => match all.iter().find(|(m, _)| *m == n) {
                    Some((_, t)) => Ok(automaton_out(t)),
                    None => Err(CliError::Input(format!("no corpus tree named `{n}`"))),
                },
            }
        }
    }
}

fn automaton_out(t: &TreeAutomaton) -> Output {
    Output::ok(io::to_json(&io::automaton_to_file(t)))
}

fn analyze(t: &TreeAutomaton, json: bool, check: bool) -> Result<Output, CliError> {
    let (report, _) = cb_full(t, 0);
    let class = body_cardinality(t);
    let wf = is_wellfounded(t);
    let mismatch = if check { oracle_mismatch(t, class) } else { None };
    let text = if json {
        let mut v = json!({
            "cardinality": class.to_string(),
            "wellfounded": wf,
            "kernel_states": report.kernel.state_count(),
            "rank": report.rank,
            "sccount": report.sccount_code,
        });
        if check {
            v["oracle_mismatch"] = json!(mismatch);
        }
        io::to_json(&v)
    } else {
        let mut s = format!(
            "cardinality={class} wf={wf} rank={} sccount={}\n",
            report.rank, report.sccount_code
        );
        if let Some(m) = &mismatch {
            writeln!(s, "oracle mismatch: {m}").unwrap();
        }
        s
    };
    Ok(Output {
        text,
        disagreement: mismatch.is_some(),
    })
}

/// Compares a cardinality class with node counts at a few depths.
fn oracle_mismatch(t: &TreeAutomaton, class: CardinalityClass) -> Option<String> {
    let h = t.state_count().max(1);
    let budget = Budget {
        width: t.max_label().map_or(1, |m| m + 2),
        horizon: h,
    };
    let count = |d: usize, cap: usize| oracle::count_paths_capped(t, d, budget, cap);
    let (lo, hi) = (h * h, h * h + 2 * h);
    match class {
        CardinalityClass::Empty => (count(h, 1) != Count::Exact(0)).then(|| format!("nodes at depth {h}")),
        CardinalityClass::Finite(n) => [lo, hi].into_iter().find_map(|d| {
            let c = count(d, 1000);
            (c != Count::Exact(n as usize)).then(|| format!("{c} nodes at depth {d}, expected {n}"))
        }),
        CardinalityClass::CountablyInfinite => match (count(lo, 1000), count(hi, 1000)) {
            (Count::Exact(a), Count::Exact(b)) if a >= b => Some(format!("no growth from depth {lo} to {hi}")),
            _ => None,
        },
        CardinalityClass::Continuum => (0..=5usize).find_map(|j| {
            let d = h + 2 * h * j;
            match count(d, 1 << j) {
                Count::AtLeast(_) => None,
                c => Some(format!("only {c} nodes at depth {d}")),
            }
        }),
    }
}

fn listing_out(tag_name: &str, tag: u128, entries: &[StreamEntry], json: bool) -> String {
    if json {
        return io::to_json(&io::ListingFile {
            tag,
            entries: entries.iter().map(io::entry_to_file).collect(),
        });
    }
    let mut s = format!("{tag_name}={tag}\n");
    for e in entries {
        writeln!(s, "{} {}", e.flag as u8, e.point).unwrap();
    }
    s
}

fn transform(op: TransformOp, files: &[PathBuf]) -> Result<Output, CliError> {
    let ts = files.iter().map(|f| io::load_automaton(f)).collect::<Result<Vec<_>, _>>()?;
    let arity = |n: usize| {
        if ts.len() == n {
            Ok(())
        } else {
            Err(CliError::Input(format!("{op:?} takes {n} file(s), got {}", ts.len()).to_lowercase()))
        }
    };
    let t = match op {
        TransformOp::Explode => {
            arity(1)?;
            explode(&ts[0])
        }
        TransformOp::Tauc => {
            arity(1)?;
            translate_tree_to_binary(&ts[0])
        }
        TransformOp::Taub => {
            arity(1)?;
            if !ts[0].is_binary() {
                return Err(CliError::Input(String::from("taub needs a binary tree")));
            }
            translate_tree_to_baire(&ts[0])?
        }
        TransformOp::Union => disjoint_union(&ts)?,
        TransformOp::Union2 => binary_disjoint_union(&ts),
        TransformOp::Union2const => {
            arity(1)?;
            binary_disjoint_union_const(&ts[0])
        }
        TransformOp::Interleave => {
            arity(2)?;
            interleave_trees(&ts[0], &ts[1])
        }
    };
    Ok(automaton_out(&t))
}

fn cert_text(c: &Cert) -> String {
    fn level(s: &mut String, c: &cbtree::cert::OneStepCert) {
        writeln!(s, "first_witness={} complete={}", c.first_witness, c.complete).unwrap();
        for e in &c.entries {
            writeln!(s, "{} {} {}", e.sigma, e.flag as u8, e.point).unwrap();
        }
    }
    let mut s = String::new();
    match c {
        Cert::OneStep(c) => level(&mut s, c),
        Cert::Global(g) => {
            for (i, (d, l)) in g.order.iter().zip(&g.levels).enumerate() {
                writeln!(s, "level {i} depth={d}").unwrap();
                level(&mut s, l);
            }
        }
    }
    s
}

fn reduce(which: Reduction, inputs: &[PathBuf], digits: usize, json: bool) -> Result<Output, CliError> {
    let single = || -> Result<TreeAutomaton, CliError> {
        match inputs {
            [f] => io::load_automaton(f),
            _ => Err(CliError::Input(format!("{which:?} takes one file, got {}", inputs.len()).to_lowercase())),
        }
    };
    let many = || inputs.iter().map(|f| io::load_automaton(f)).collect::<Result<Vec<_>, _>>();
    let report: ReductionReport = match which {
        Reduction::R1 => red::r1_ptt_binary(&single()?)?,
        Reduction::R2 => red::r2_ucbaire_pst(&single()?, digits)?,
        Reduction::R3 => red::r3_wf_encodings(&single()?),
        Reduction::R4 => red::r4_wfstar_sccount(&many()?)?,
        Reduction::R5 => red::r5_wfs_pk(&single()?),
        Reduction::R6 => {
            let mut ps = Vec::new();
            for f in inputs {
                ps.extend(io::load_lassos(f)?);
            }
            red::r6_lpo_list(&ps)?
        }
        Reduction::R7 => red::r7_wf_wsclist(&single()?),
        Reduction::R8 => red::r8_pk_slices(&many()?)?,
    };
    let text = if json {
        io::to_json(&json!({
            "reduction": report.name,
            "instance": report.instance,
            "summary": report.summary,
            "decoded": report.decoded.to_string(),
            "truth": report.truth.to_string(),
            "agrees": report.agrees,
        }))
    } else {
        format!("{} agrees={}\n", report.summary, report.agrees)
    };
    Ok(Output {
        text,
        disagreement: !report.agrees,
    })
}

fn oracle_query(q: OracleQuery, t: &TreeAutomaton, depth: usize, budget: Budget, cap: usize, json: bool) -> String {
    match q {
        OracleQuery::Prefixes => {
            let ps = oracle::extendible_prefixes(t, depth, budget);
            if json {
                io::to_json(&ps.iter().map(|p| p.to_vec()).collect::<Vec<_>>())
            } else {
                ps.iter().map(|p| format!("{p}\n")).collect()
            }
        }
        OracleQuery::Count => {
            let c = oracle::count_paths_capped(t, depth, budget, cap);
            if json {
                let (n, exact) = match c {
                    Count::Exact(n) => (n, true),
                    Count::AtLeast(n) => (n, false),
                };
                io::to_json(&json!({"depth": depth, "count": n, "exact": exact}))
            } else {
                format!("count={c}\n")
            }
        }
        OracleQuery::Isolated => {
            let found = oracle::isolated_at_depth(t, depth, budget);
            if json {
                let v: Vec<_> = found
                    .iter()
                    .map(|i| json!({"sigma": i.sigma.to_vec(), "point": i.point.as_ref().map(io::lasso_to_file)}))
                    .collect();
                io::to_json(&v)
            } else {
                found
                    .iter()
                    .map(|i| match &i.point {
                        Some(p) => format!("{} {p}\n", i.sigma),
                        None => format!("{} inconclusive\n", i.sigma),
                    })
                    .collect()
            }
        }
    }
}
