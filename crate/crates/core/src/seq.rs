// SPDX-License-Identifier: Apache-2.0

//! Finite sequences of naturals, their prefix-monotone numeric coding, the
//! Cantor pairing used for interleaved names, and the zero-block translations
//! between words over ℕ and binary words.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::error::SeqError;

/// A single digit of a word over ℕ.
pub type Label = u64;

/// A finite sequence of naturals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSeq(Vec<Label>);

impl FinSeq {
    pub fn new(digits: Vec<Label>) -> Self {
        FinSeq(digits)
    }

    pub fn empty() -> Self {
        FinSeq(Vec::new())
    }

    pub fn digits(&self) -> &[Label] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Label> {
        self.0
    }

    pub fn push(&mut self, digit: Label) {
        self.0.push(digit);
    }

    /// `self⌢other`.
    pub fn concat(&self, other: &[Label]) -> FinSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        FinSeq(v)
    }

    /// `self⌢⟨digit⟩`.
    pub fn child(&self, digit: Label) -> FinSeq {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(digit);
        FinSeq(v)
    }

    /// `σ ⊑ τ`.
    pub fn is_prefix_of(&self, other: &[Label]) -> bool {
        is_prefix(&self.0, other)
    }

    /// `σ ⊏ τ`.
    pub fn is_strict_prefix_of(&self, other: &[Label]) -> bool {
        self.0.len() < other.len() && is_prefix(&self.0, other)
    }

    /// `σ | τ`: neither is a prefix of the other.
    pub fn incomparable(&self, other: &[Label]) -> bool {
        !is_prefix(&self.0, other) && !is_prefix(other, &self.0)
    }

    /// `σ[m]`.
    pub fn truncate(&self, m: usize) -> FinSeq {
        FinSeq(self.0[..m.min(self.0.len())].to_vec())
    }

    /// `σ⁻`, the sequence without its first digit.
    pub fn tail(&self) -> FinSeq {
        FinSeq(self.0.iter().skip(1).copied().collect())
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&d| d <= 1)
    }

    pub fn code(&self) -> SeqCode {
        code(&self.0)
    }

    /// Compares codes without computing them.
    pub fn cmp_code(&self, other: &[Label]) -> Ordering {
        code_cmp(&self.0, other)
    }
}

impl Deref for FinSeq {
    type Target = [Label];

    fn deref(&self) -> &[Label] {
        &self.0
    }
}

impl From<Vec<Label>> for FinSeq {
    fn from(v: Vec<Label>) -> Self {
        FinSeq(v)
    }
}

impl From<&[Label]> for FinSeq {
    fn from(v: &[Label]) -> Self {
        FinSeq(v.to_vec())
    }
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("⟩")
    }
}

pub fn is_prefix(short: &[Label], long: &[Label]) -> bool {
    short.len() <= long.len() && long[..short.len()] == *short
}

/// Numeric code of a finite sequence.
///
/// `code(⟨⟩) = 0` and `code(σ⌢⟨n⟩) = pair(code(σ), n) + 1`. Codes of long
/// sequences grow doubly exponentially, hence the arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeqCode(BigUint);

impl SeqCode {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn from_u64(v: u64) -> Self {
        SeqCode(BigUint::from(v))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Code of `σ⌢⟨digit⟩` given the code of `σ`.
    pub fn extend(&self, digit: Label) -> SeqCode {
        SeqCode(pair_big(&self.0, &BigUint::from(digit)) + 1u32)
    }
}

impl fmt::Display for SeqCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn code(sigma: &[Label]) -> SeqCode {
    sigma
        .iter()
        .fold(SeqCode(BigUint::zero()), |acc, &d| acc.extend(d))
}

pub fn decode(c: &SeqCode) -> FinSeq {
    let mut digits = Vec::new();
    let mut z = c.0.clone();
    while !z.is_zero() {
        z -= 1u32;
        let (a, b) = unpair_big(&z);
        // b < 2^64 holds for every code produced from u64 digits; larger
        // values have no preimage among sequences of u64 labels.
        digits.push(b.to_u64().expect("digit exceeds the label range"));
        z = a;
    }
    digits.reverse();
    FinSeq(digits)
}

/// Code order without materialising codes.
///
/// Codes square at every digit, so long sequences have codes with millions
/// of bits. Writing `σ = σ'⌢n` and `τ = τ'⌢m`, the difference
/// `code σ − code τ` is determined by `code σ' − code τ'`, the last digits
/// and whether the codes of `σ'` and `τ'` are large. Aligning the sequences
/// at their ends, it suffices to track that difference exactly while it is
/// small and by its sign once it is large; the quadratic growth of the
/// pairing never lets a large difference shrink back below the threshold.
pub fn code_cmp(sigma: &[Label], tau: &[Label]) -> Ordering {
    let k = sigma.len().min(tau.len());
    let (s0, t0) = (&sigma[..sigma.len() - k], &tau[..tau.len() - k]);
    let mut cs = clipped_code(s0);
    let mut ct = clipped_code(t0);
    // One of `s0`, `t0` is empty.
    let mut d = match (&cs, &ct) {
        (Some(a), Some(b)) => Diff::exact(BigInt::from(a.clone()) - BigInt::from(b.clone())),
        (None, _) => Diff::Pos,
        (_, None) => Diff::Neg,
    };
    for (&n, &m) in sigma[sigma.len() - k..].iter().zip(&tau[tau.len() - k..]) {
        let nm = BigInt::from(n) - BigInt::from(m);
        d = match d {
            Diff::Exact(x) => {
                let ds = x + &nm;
                if ds.is_zero() {
                    Diff::exact(nm)
                } else {
                    match (&cs, &ct) {
                        (Some(a), Some(b)) => {
                            let tri = |c: &BigUint, l: Label| {
                                let s = BigInt::from(c + l);
                                (&s * (&s + 1u32)) >> 1u32
                            };
                            Diff::exact(tri(a, n) - tri(b, m) + nm)
                        }
                        _ if ds.sign() == Sign::Minus => Diff::Neg,
                        _ => Diff::Pos,
                    }
                }
            }
            sat => sat,
        };
        cs = cs.and_then(|c| clip(pair_big(&c, &BigUint::from(n)) + 1u32));
        ct = ct.and_then(|c| clip(pair_big(&c, &BigUint::from(m)) + 1u32));
    }
    match d {
        Diff::Neg => Ordering::Less,
        Diff::Pos => Ordering::Greater,
        Diff::Exact(x) => x.sign().cmp(&Sign::NoSign),
    }
}

/// Codes at least `2^HUGE_BITS` are only known to be huge.
const HUGE_BITS: u64 = 256;
/// Differences at least `2^SAT_BITS` in size are only tracked by sign.
const SAT_BITS: u64 = 192;

enum Diff {
    Exact(BigInt),
    Pos,
    Neg,
}

impl Diff {
    fn exact(x: BigInt) -> Diff {
        if x.bits() <= SAT_BITS {
            Diff::Exact(x)
        } else if x.sign() == Sign::Minus {
            Diff::Neg
        } else {
            Diff::Pos
        }
    }
}

fn clip(c: BigUint) -> Option<BigUint> {
    (c.bits() <= HUGE_BITS).then_some(c)
}

fn clipped_code(sigma: &[Label]) -> Option<BigUint> {
    sigma
        .iter()
        .try_fold(BigUint::zero(), |c, &d| clip(pair_big(&c, &BigUint::from(d)) + 1u32))
}

/// A sequence ordered by its code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ByCode(pub FinSeq);

impl Ord for ByCode {
    fn cmp(&self, other: &Self) -> Ordering {
        code_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for ByCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn pair_big(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    let t = &s * (&s + 1u32);
    (t >> 1) + b
}

fn unpair_big(z: &BigUint) -> (BigUint, BigUint) {
    // w = ⌊(√(8z+1) − 1)/2⌋
    let disc: BigUint = (z << 3u32) + 1u32;
    let w: BigUint = (disc.sqrt() - 1u32) >> 1;
    let t: BigUint = (&w * (&w + 1u32)) >> 1;
    let b = z - t;
    let a = &w - &b;
    (a, b)
}

/// Cantor pairing `⟨a,b⟩ = (a+b)(a+b+1)/2 + b` on machine words.
pub fn pair(a: u64, b: u64) -> u64 {
    let s = a + b;
    s * (s + 1) / 2 + b
}

pub fn unpair(z: u64) -> (u64, u64) {
    let w = ((8 * z as u128 + 1).isqrt() as u64 - 1) / 2;
    let t = w * (w + 1) / 2;
    let b = z - t;
    (w - b, b)
}

/// `σ*τ = ⟨σ(0),τ(0),σ(1),τ(1),…⟩` for sequences of equal length.
pub fn interleave_fin(sigma: &[Label], tau: &[Label]) -> Result<FinSeq, SeqError> {
    if sigma.len() != tau.len() {
        return Err(SeqError::LengthMismatch {
            left: sigma.len(),
            right: tau.len(),
        });
    }
    let mut out = Vec::with_capacity(2 * sigma.len());
    for (&a, &b) in sigma.iter().zip(tau) {
        out.push(a);
        out.push(b);
    }
    Ok(FinSeq(out))
}

/// Number of component streams that a prefix of length `len` of a joined
/// name has started: `min{i : ⟨i,0⟩ ≥ len}`.
pub fn ell(len: usize) -> usize {
    let len = len as u64;
    let mut i = 0u64;
    while pair(i, 0) < len {
        i += 1;
    }
    i as usize
}

/// The `i`-th component stream `⟨σ(⟨i,j⟩) : ⟨i,j⟩ < |σ|⟩` of a joined name.
pub fn project(i: usize, sigma: &[Label]) -> Result<FinSeq, SeqError> {
    let bound = ell(sigma.len());
    if i >= bound {
        return Err(SeqError::ProjectionOutOfRange { index: i, bound });
    }
    let mut out = Vec::new();
    let mut j = 0u64;
    loop {
        let pos = pair(i as u64, j) as usize;
        if pos >= sigma.len() {
            break;
        }
        out.push(sigma[pos]);
        j += 1;
    }
    Ok(FinSeq(out))
}

/// Joins countably many streams into one name, position `⟨i,j⟩` holding the
/// `j`-th digit of stream `i`; returns the first `len` digits.
pub fn join_prefix(len: usize, stream: impl Fn(usize, usize) -> Label) -> FinSeq {
    FinSeq(
        (0..len as u64)
            .map(|z| {
                let (i, j) = unpair(z);
                stream(i as usize, j as usize)
            })
            .collect(),
    )
}

/// Binary translation `0^{σ(0)}1 0^{σ(1)}1 …` of a word over ℕ.
pub fn tau_c_fin(sigma: &[Label]) -> FinSeq {
    let mut out = Vec::new();
    for &d in sigma {
        out.extend(core::iter::repeat_n(0, d as usize));
        out.push(1);
    }
    FinSeq(out)
}

/// Inverse translation: decodes the zero blocks up to the last `1`, ignoring
/// a trailing run of zeros.
pub fn tau_b_fin(tau: &[Label]) -> Result<FinSeq, SeqError> {
    let mut out = Vec::new();
    let mut run: Label = 0;
    for (pos, &b) in tau.iter().enumerate() {
        match b {
            0 => run += 1,
            1 => {
                out.push(run);
                run = 0;
            }
            other => return Err(SeqError::NotBinary { pos, digit: other }),
        }
    }
    Ok(FinSeq(out))
}

/// Smallest `p` such that `w` is a power of `w[..p]`.
pub(crate) fn primitive_root_len(w: &[Label]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}
