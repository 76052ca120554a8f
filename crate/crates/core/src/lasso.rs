// SPDX-License-Identifier: Apache-2.0

//! Eventually periodic infinite words `u·v^ω`.
//!
//! A [`Lasso`] is always stored in normal form: the cycle is primitive and the
//! prefix is rolled back into the cycle as far as possible. Two lassos denote
//! the same infinite word iff their normal forms are identical, so equality
//! is structural.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::SeqError;
use crate::seq::{self, FinSeq, Label, SeqCode};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    prefix: FinSeq,
    cycle: FinSeq,
}

/// Normal form of `prefix·cycle^ω`: primitive cycle, then the prefix rolled
/// back while its last digit equals the cycle's last digit.
pub fn normalize(prefix: &[Label], cycle: &[Label]) -> Result<(FinSeq, FinSeq), SeqError> {
    if cycle.is_empty() {
        return Err(SeqError::EmptyCycle);
    }
    let p = seq::primitive_root_len(cycle);
    let mut cycle: Vec<Label> = cycle[..p].to_vec();
    let mut prefix: Vec<Label> = prefix.to_vec();
    while let Some(&last) = prefix.last() {
        if last != *cycle.last().unwrap() {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
    Ok((FinSeq::new(prefix), FinSeq::new(cycle)))
}

impl Lasso {
    pub fn new(prefix: &[Label], cycle: &[Label]) -> Result<Self, SeqError> {
        let (prefix, cycle) = normalize(prefix, cycle)?;
        Ok(Lasso { prefix, cycle })
    }

    /// Builds a lasso from parts already known to be in normal form.
    pub(crate) fn from_normal(prefix: FinSeq, cycle: FinSeq) -> Self {
        debug_assert_eq!(
            normalize(&prefix, &cycle).as_ref().ok(),
            Some(&(prefix.clone(), cycle.clone()))
        );
        Lasso { prefix, cycle }
    }

    /// `n^ℕ`.
    pub fn constant(n: Label) -> Self {
        Lasso {
            prefix: FinSeq::empty(),
            cycle: FinSeq::new(alloc::vec![n]),
        }
    }

    /// `0^ℕ`, also the placeholder for unused stream slots.
    pub fn zeros() -> Self {
        Self::constant(0)
    }

    pub fn prefix(&self) -> &FinSeq {
        &self.prefix
    }

    pub fn cycle(&self) -> &FinSeq {
        &self.cycle
    }

    /// `p(n)`.
    pub fn digit(&self, n: usize) -> Label {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// `p[n]`.
    pub fn take(&self, n: usize) -> FinSeq {
        FinSeq::new((0..n).map(|i| self.digit(i)).collect())
    }

    pub fn is_binary(&self) -> bool {
        self.prefix.is_binary() && self.cycle.is_binary()
    }

    pub fn has_prefix(&self, sigma: &[Label]) -> bool {
        sigma.iter().enumerate().all(|(i, &d)| self.digit(i) == d)
    }

    /// Canonical sort key: codes of the normal-form prefix and cycle.
    /// Comparison goes through [`Lasso`]'s `Ord`, which never materialises
    /// the codes.
    pub fn key(&self) -> (SeqCode, SeqCode) {
        (self.prefix.code(), self.cycle.code())
    }

    /// Length of prefix plus cycle; the number of digits after which the
    /// word is determined.
    pub fn period_horizon(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }
}

impl Ord for Lasso {
    fn cmp(&self, other: &Self) -> Ordering {
        self.prefix
            .cmp_code(&other.prefix)
            .then_with(|| self.cycle.cmp_code(&other.cycle))
    }
}

impl PartialOrd for Lasso {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}^ω", self.prefix, self.cycle)
    }
}

pub fn lasso_eq(p: &Lasso, q: &Lasso) -> bool {
    p == q
}

/// Binary translation of an eventually periodic word over ℕ.
pub fn tau_c_lasso(p: &Lasso) -> Lasso {
    let prefix = seq::tau_c_fin(p.prefix());
    let cycle = seq::tau_c_fin(p.cycle());
    Lasso::new(&prefix, &cycle).expect("translated cycle is nonempty")
}

/// Inverse translation, defined on binary words with infinitely many ones.
pub fn tau_b_lasso(q: &Lasso) -> Result<Lasso, SeqError> {
    if !q.is_binary() {
        let pos = (0..q.period_horizon()).find(|&i| q.digit(i) > 1).unwrap_or(0);
        return Err(SeqError::NotBinary {
            pos,
            digit: q.digit(pos),
        });
    }
    let last_one = q
        .cycle()
        .iter()
        .rposition(|&b| b == 1)
        .ok_or(SeqError::FinitelyManyOnes)?;
    // Re-split so that both parts end in a 1: each then decodes exactly.
    let split = last_one + 1;
    let head = q.prefix().concat(&q.cycle()[..split]);
    let mut rotated = q.cycle()[split..].to_vec();
    rotated.extend_from_slice(&q.cycle()[..split]);
    let sigma = seq::tau_b_fin(&head)?;
    let rho = seq::tau_b_fin(&rotated)?;
    Lasso::new(&sigma, &rho)
}
