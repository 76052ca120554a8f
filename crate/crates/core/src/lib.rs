// SPDX-License-Identifier: Apache-2.0

//! Closed subsets of Baire and Cantor space given by finite deterministic
//! tree automata.
//!
//! A [`TreeAutomaton`] accepts a prefix-closed set of finite sequences, i.e. a
//! tree on ℕ, and its body is the set of infinite paths. Because trees are
//! regular, well-foundedness, cardinality, the perfect kernel, the
//! Cantor-Bendixson rank and the scattered part are all computed exactly; the
//! [`oracle`] module recomputes observable parts of them by brute force.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod automaton;
pub mod cb;
pub mod cert;
pub mod combinators;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod lasso;
mod nfa;
pub mod oracle;
pub mod reductions;
pub mod seq;
#[cfg(feature = "testkit")]
pub mod testkit;

pub use analysis::{body_cardinality, is_wellfounded, prune, CardinalityClass};
pub use automaton::{tree_equal, tree_included, Builder, StateId, TreeAutomaton};
pub use cb::{
    cb_full, cb_rank, dedup_list, derivative, list_countable, perfect_kernel, scattered_count,
    scattered_list, CbReport, StreamEntry,
};
pub use cert::{global_cert, one_step_cert, verify_global, verify_one_step, LabelBudget};
pub use enumerate::enumerate_paths;
pub use error::{AnalysisError, AutomatonError, SeqError};
pub use lasso::Lasso;
pub use seq::{FinSeq, Label, SeqCode};
