// SPDX-License-Identifier: Apache-2.0

//! `cbtree`: Cantor-Bendixson analysis of trees given as finite automata.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when a verification fails
//! or a computed answer disagrees with its ground truth.

mod commands;
mod dot;
mod io;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
}

impl From<cbtree::AnalysisError> for CliError {
    fn from(e: cbtree::AnalysisError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<cbtree::AutomatonError> for CliError {
    fn from(e: cbtree::AutomatonError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Output of a successful run; `disagreement` selects exit code 2.
pub struct Output {
    pub text: String,
    pub disagreement: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            disagreement: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cbtree", version, about = "Cantor-Bendixson analysis of regular trees")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Body cardinality, well-foundedness, rank and scattered count.
    Analyze {
        file: PathBuf,
        /// Cross-check the cardinality against depth-bounded oracle counts.
        #[arg(long)]
        check: bool,
    },
    /// The K-th derived tree as an automaton file.
    Derive {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// The perfect kernel as an automaton file.
    Kernel { file: PathBuf },
    /// The first K entries of the scattered-part listing.
    Scatter {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// The first K entries of the listing of a countable body.
    List {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Repetition-free listing from a tagged listing file.
    Dedup { file: PathBuf },
    /// Tree constructions; the result is an automaton file.
    Transform {
        #[arg(value_enum)]
        op: TransformOp,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// One-step or global certificate of the derivative.
    Certify {
        file: PathBuf,
        #[arg(long)]
        global: bool,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        /// Labels inspected for dead children: a bound, or `unbounded`.
        /// Defaults to two past the largest label.
        #[arg(long, value_parser = parse_budget)]
        budget: Option<cbtree::LabelBudget>,
    },
    /// Checks a certificate file clause by clause.
    Verify {
        file: PathBuf,
        cert: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Runs a reduction end to end and compares with ground truth.
    Reduce {
        #[arg(value_enum)]
        which: Reduction,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Digits to extract (r2).
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Black-box queries that only use membership of finite sequences.
    Oracle {
        #[arg(value_enum)]
        query: OracleQuery,
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Labels explored per node; default 6.
        #[arg(long)]
        width: Option<u64>,
        /// Extendibility horizon; default the state count.
        #[arg(long)]
        horizon: Option<usize>,
        /// Counting stops at this many nodes.
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Graphviz description of the automaton.
    Dot { file: PathBuf },
    /// Lists the built-in example trees, or prints one as an automaton file.
    Corpus { name: Option<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    Explode,
    Tauc,
    Taub,
    Union,
    Union2,
    Union2const,
    Interleave,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Reduction {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleQuery {
    Prefixes,
    Isolated,
    Count,
}

fn parse_budget(s: &str) -> Result<cbtree::LabelBudget, String> {
    if s == "unbounded" {
        return Ok(cbtree::LabelBudget::Unbounded);
    }
    s.parse()
        .map(cbtree::LabelBudget::Below)
        .map_err(|_| format!("expected a natural number or `unbounded`, got `{s}`"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if out.disagreement { 2 } else { 0 })
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
