// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

use thiserror::Error;

use crate::seq::Label;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("interleaving needs equal lengths, got {left} and {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("stream index {index} out of range (ℓ = {bound})")]
    ProjectionOutOfRange { index: usize, bound: usize },
    #[error("digit {digit} at position {pos} is not binary")]
    NotBinary { pos: usize, digit: Label },
    #[error("lasso cycle must be nonempty")]
    EmptyCycle,
    #[error("word has only finitely many ones; the inverse translation is undefined")]
    FinitelyManyOnes,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state `{state}` has two edges labelled {label}")]
    Nondeterministic { state: String, label: Label },
    #[error("state `{0}` is not reachable from the root")]
    Unreachable(String),
    #[error("a nonempty automaton needs a root")]
    MissingRoot,
    #[error("sequence is not in the tree")]
    NotInTree,
    #[error("state `{state}` would need infinitely many labels in the translated tree")]
    InfiniteLabelSupport { state: String },
    #[error("disjoint union needs at least one tree")]
    EmptyFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("body has the cardinality of the continuum")]
    Uncountable,
    #[error("body is countable")]
    Countable,
    #[error("body is empty")]
    EmptyBody,
    #[error("body must have exactly one path")]
    NotUniquePath,
    #[error("reduction input list is empty")]
    EmptyInput,
    #[error("too many trees for this reduction: {0}")]
    TooManyTrees(usize),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}
