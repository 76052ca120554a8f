// SPDX-License-Identifier: Apache-2.0

//! JSON wire formats: automata, lassos, listings and certificates.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use cbtree::cert::{CertEntry, GlobalCert, OneStepCert};
use cbtree::{FinSeq, Label, LabelBudget, Lasso, StreamEntry, TreeAutomaton};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub states: Vec<String>,
    pub root: Option<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub from: String,
    pub label: Label,
    pub to: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LassoFile {
    pub prefix: Vec<Label>,
    pub cycle: Vec<Label>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryFile {
    pub flag: u8,
    pub point: LassoFile,
}

/// A tagged listing: `tag = 0` for infinitely many elements, `n + 1` for `n`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ListingFile {
    pub tag: u128,
    pub entries: Vec<EntryFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertEntryFile {
    pub sigma: Vec<Label>,
    pub flag: u8,
    pub point: LassoFile,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OneStepFile {
    /// Labels below this bound were inspected; `null` means every label.
    pub label_budget: Option<Label>,
    pub complete: bool,
    pub first_witness: Vec<Label>,
    pub entries: Vec<CertEntryFile>,
    pub residue: AutomatonFile,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CertFile {
    OneStep(OneStepFile),
    Global { order: Vec<usize>, levels: Vec<OneStepFile> },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parses JSON, reporting the line and column of syntax and shape errors.
pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    parse(path, &read(path)?)
}

pub fn load_automaton(path: &Path) -> Result<TreeAutomaton, CliError> {
    let file: AutomatonFile = load_json(path)?;
    automaton_from_file(&file).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Validates field by field so that diagnostics name the offending entry,
/// then builds the automaton.
pub fn automaton_from_file(f: &AutomatonFile) -> Result<TreeAutomaton, String> {
    let mut index = BTreeMap::new();
    for (i, s) in f.states.iter().enumerate() {
        if index.insert(s.as_str(), i).is_some() {
            return Err(format!("states[{i}]: duplicate state `{s}`"));
        }
    }
    match &f.root {
        Some(r) if !index.contains_key(r.as_str()) => return Err(format!("root: unknown state `{r}`")),
        None if !f.states.is_empty() => return Err(String::from("root: a nonempty automaton needs a root")),
        _ => {}
    }
    let mut seen = BTreeMap::new();
    for (i, e) in f.edges.iter().enumerate() {
        for (field, s) in [("from", &e.from), ("to", &e.to)] {
            if !index.contains_key(s.as_str()) {
                return Err(format!("edges[{i}].{field}: unknown state `{s}`"));
            }
        }
        if let Some(j) = seen.insert((e.from.as_str(), e.label), i) {
            return Err(format!(
                "edges[{i}]: state `{}` already has an edge labelled {} at edges[{j}]",
                e.from, e.label
            ));
        }
    }
    let edges: Vec<(String, Label, String)> = f.edges.iter().map(|e| (e.from.clone(), e.label, e.to.clone())).collect();
    TreeAutomaton::from_parts(&f.states, f.root.as_deref(), &edges).map_err(|e| match e {
        cbtree::AutomatonError::Unreachable(s) => {
            format!("states[{}]: state `{s}` is not reachable from the root", index[s.as_str()])
        }
        other => other.to_string(),
    })
}

pub fn automaton_to_file(t: &TreeAutomaton) -> AutomatonFile {
    AutomatonFile {
        states: t.names().to_vec(),
        root: t.root().map(|r| t.name(r).to_string()),
        edges: t
            .edge_list()
            .map(|(f, label, to)| EdgeFile {
                from: t.name(f).to_string(),
                label,
                to: t.name(to).to_string(),
            })
            .collect(),
    }
}

pub fn lasso_to_file(p: &Lasso) -> LassoFile {
    LassoFile {
        prefix: p.prefix().to_vec(),
        cycle: p.cycle().to_vec(),
    }
}

pub fn lasso_from_file(f: &LassoFile) -> Result<Lasso, String> {
    Lasso::new(&f.prefix, &f.cycle).map_err(|e| format!("cycle: {e}"))
}

/// A file holding one lasso or an array of lassos.
pub fn load_lassos(path: &Path) -> Result<Vec<Lasso>, CliError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(LassoFile),
        Many(Vec<LassoFile>),
    }
    let files = match load_json::<OneOrMany>(path)? {
        OneOrMany::One(f) => vec![f],
        OneOrMany::Many(v) => v,
    };
    files
        .iter()
        .enumerate()
        .map(|(i, f)| lasso_from_file(f).map_err(|e| CliError::Input(format!("{}: [{i}].{e}", path.display()))))
        .collect()
}

pub fn entry_to_file(e: &StreamEntry) -> EntryFile {
    EntryFile {
        flag: e.flag as u8,
        point: lasso_to_file(&e.point),
    }
}

pub fn load_listing(path: &Path) -> Result<(u128, Vec<StreamEntry>), CliError> {
    let f: ListingFile = load_json(path)?;
    let entries = f
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let point = lasso_from_file(&e.point)
                .map_err(|m| CliError::Input(format!("{}: entries[{i}].point.{m}", path.display())))?;
            match e.flag {
                0 | 1 => Ok(StreamEntry { flag: e.flag == 1, point }),
                f => Err(CliError::Input(format!("{}: entries[{i}].flag: expected 0 or 1, got {f}", path.display()))),
            }
        })
        .collect::<Result<_, _>>()?;
    Ok((f.tag, entries))
}

fn one_step_to_file(c: &OneStepCert) -> OneStepFile {
    OneStepFile {
        label_budget: match c.label_budget {
            LabelBudget::Unbounded => None,
            LabelBudget::Below(b) => Some(b),
        },
        complete: c.complete,
        first_witness: c.first_witness.to_vec(),
        entries: c
            .entries
            .iter()
            .map(|e| CertEntryFile {
                sigma: e.sigma.to_vec(),
                flag: e.flag as u8,
                point: lasso_to_file(&e.point),
            })
            .collect(),
        residue: automaton_to_file(&c.residue),
    }
}

fn one_step_from_file(f: &OneStepFile, at: &str) -> Result<OneStepCert, String> {
    let entries = f
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let point = lasso_from_file(&e.point).map_err(|m| format!("{at}entries[{i}].point.{m}"))?;
            if e.flag > 1 {
                return Err(format!("{at}entries[{i}].flag: expected 0 or 1, got {}", e.flag));
            }
            Ok(CertEntry {
                sigma: FinSeq::from(e.sigma.clone()),
                flag: e.flag == 1,
                point,
            })
        })
        .collect::<Result<_, String>>()?;
    Ok(OneStepCert {
        entries,
        residue: automaton_from_file(&f.residue).map_err(|m| format!("{at}residue.{m}"))?,
        first_witness: FinSeq::from(f.first_witness.clone()),
        label_budget: f.label_budget.map_or(LabelBudget::Unbounded, LabelBudget::Below),
        complete: f.complete,
    })
}

pub enum Cert {
    OneStep(OneStepCert),
    Global(GlobalCert),
}

pub fn cert_to_file(c: &Cert) -> CertFile {
    match c {
        Cert::OneStep(c) => CertFile::OneStep(one_step_to_file(c)),
        Cert::Global(g) => CertFile::Global {
            order: g.order.clone(),
            levels: g.levels.iter().map(one_step_to_file).collect(),
        },
    }
}

pub fn load_cert(path: &Path) -> Result<Cert, CliError> {
    let f: CertFile = load_json(path)?;
    let err = |m: String| CliError::Input(format!("{}: {m}", path.display()));
    match &f {
        CertFile::OneStep(c) => Ok(Cert::OneStep(one_step_from_file(c, "").map_err(err)?)),
        CertFile::Global { order, levels } => {
            let levels = levels
                .iter()
                .enumerate()
                .map(|(i, l)| one_step_from_file(l, &format!("levels[{i}].")))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            Ok(Cert::Global(GlobalCert {
                levels,
                order: order.clone(),
            }))
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}
