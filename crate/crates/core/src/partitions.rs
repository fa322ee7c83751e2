//! Partitions, integer vectors, and the inclusion and domination orders.
//!
//! A [`Partition`] is stored in canonical form: weakly decreasing with
//! trailing zeros stripped. Every comparison reads missing parts as zero, so
//! `[2,1]` and `[2,1,0,0]` describe the same partition.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition, rejecting sequences that are not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts.iter().map(|&p| p as i64).collect()));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// `1^k`, the single column of height `k`.
    pub fn column(k: usize) -> Self {
        Self { parts: vec![1; k] }
    }

    /// The staircase `(n, n-1, ..., 1, 0)`.
    pub fn staircase(n: usize) -> Self {
        Self {
            parts: (1..=n).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of positive parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`, the sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Inclusion order: `self_i >= other_i` for every `i`.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..self.len().max(other.len())).all(|i| self.part(i) >= other.part(i))
    }

    /// Elementwise sum.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition {
            parts: (0..len).map(|i| self.part(i) + other.part(i)).collect(),
        }
    }

    /// Elementwise multiple `k·λ`.
    pub fn scale(&self, k: usize) -> Partition {
        if k == 0 {
            return Partition::empty();
        }
        Partition {
            parts: self.parts.iter().map(|&p| p * k).collect(),
        }
    }

    /// Elementwise difference. The result is generally not a partition.
    pub fn subtract(&self, other: &Partition) -> IntVector {
        let len = self.len().max(other.len());
        IntVector((0..len).map(|i| self.part(i) as i64 - other.part(i) as i64).collect())
    }

    /// The parts padded with zeros (or truncated if `n` is shorter than the
    /// length) as an [`IntVector`] of length `n`.
    pub fn to_vector(&self, n: usize) -> IntVector {
        IntVector((0..n).map(|i| self.part(i) as i64).collect())
    }

    /// All partitions of `size`, in reverse lexicographic order
    /// (`[size]` first, `1^size` last).
    pub fn of_size(size: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        partitions_rec(size, size, usize::MAX, &mut current, &mut out);
        out
    }

    /// Partitions of `size` with at most `max_len` parts.
    pub fn of_size_with_len(size: usize, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        partitions_rec(size, size, max_len, &mut current, &mut out);
        out
    }

    /// Every partition whose Young diagram fits in a `max_len × max_part` box.
    pub fn in_box(max_part: usize, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        for size in 0..=max_part * max_len {
            let mut current = Vec::new();
            partitions_rec(size, max_part, max_len, &mut current, &mut out);
        }
        out
    }

    /// Every partition contained in `self` (including `∅` and `self`).
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.len());
        subpartitions_rec(self, 0, usize::MAX, &mut current, &mut out);
        out
    }
}

fn partitions_rec(
    remaining: usize,
    max_part: usize,
    max_len: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    if current.len() == max_len {
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        partitions_rec(remaining - p, p, max_len, current, out);
        current.pop();
    }
}

fn subpartitions_rec(outer: &Partition, row: usize, bound: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if row == outer.len() {
        let mut parts = current.clone();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        out.push(Partition { parts });
        return;
    }
    for p in 0..=outer.part(row).min(bound) {
        current.push(p);
        subpartitions_rec(outer, row + 1, p, current, out);
        current.pop();
    }
}

impl Index<usize> for Partition {
    type Output = usize;

    fn index(&self, index: usize) -> &usize {
        self.parts.get(index).unwrap_or(&0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.parts.iter())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_list(s)?;
        let mut parts = Vec::with_capacity(entries.len());
        for (index, value) in entries.into_iter().enumerate() {
            if value < 0 {
                return Err(Error::NegativeEntry { index, value });
            }
            parts.push(value as usize);
        }
        Partition::new(parts).map_err(|e| Error::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building a partition in tests and examples.
///
/// Panics if the parts are not weakly decreasing.
#[macro_export]
macro_rules! part {
    () => { $crate::partitions::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::partitions::Partition::new(vec![$($p),+]).expect("parts must be weakly decreasing")
    };
}

/// A fixed-length vector of integers: weights, exponent vectors and
/// differences such as `μ − ν`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zeros(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Entry `i`, zero past the end.
    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn is_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Elementwise sum, padded to the longer length.
    pub fn add(&self, other: &IntVector) -> IntVector {
        let len = self.len().max(other.len());
        IntVector((0..len).map(|i| self.get(i) + other.get(i)).collect())
    }

    pub fn scale(&self, k: i64) -> IntVector {
        IntVector(self.0.iter().map(|&e| e * k).collect())
    }

    /// Converts a weakly decreasing nonnegative vector to a [`Partition`].
    pub fn to_partition(&self) -> Result<Partition> {
        for (index, &value) in self.0.iter().enumerate() {
            if value < 0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        Partition::new(self.0.iter().map(|&e| e as usize).collect())
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.0.iter())
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_list(s).map(IntVector)
    }
}

/// Domination order on weakly decreasing vectors.
///
/// True iff both vectors have the same sum and every prefix sum of `a` is at
/// least the corresponding prefix sum of `b` (shorter vectors padded with
/// zeros).
///
/// # Panics
///
/// If either input is not weakly decreasing; sort with [`sort_decreasing`]
/// first.
pub fn dominates(a: &IntVector, b: &IntVector) -> bool {
    assert!(
        a.is_decreasing() && b.is_decreasing(),
        "dominates expects weakly decreasing vectors, got {a} and {b}"
    );
    if a.sum() != b.sum() {
        return false;
    }
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0, 0);
    for i in 0..len {
        sa += a.get(i);
        sb += b.get(i);
        if sa < sb {
            return false;
        }
    }
    true
}

/// Rearranges a weight vector into weakly decreasing order (`w ↦ w̄`).
pub fn sort_decreasing(w: &IntVector) -> Result<IntVector> {
    if let Some((index, &value)) = w.0.iter().enumerate().find(|(_, &e)| e < 0) {
        return Err(Error::NegativeEntry { index, value });
    }
    let mut v = w.0.clone();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Ok(IntVector(v))
}

/// Smallest `k >= 1` with `k(μ − ν) ⊇ λ − κ`.
///
/// This is exactly the condition for `(κ + kμ)/(λ + kν)` to be a valid skew
/// shape, and once it holds it holds for every larger `k`.
pub fn stretch_condition(kappa: &Partition, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<usize> {
    if !mu.contains(nu) {
        return Err(Error::NotContained {
            outer: mu.clone(),
            inner: nu.clone(),
        });
    }
    let len = kappa.len().max(lambda.len()).max(mu.len());
    let mut k = 1;
    for i in 0..len {
        let need = lambda.part(i) as i64 - kappa.part(i) as i64;
        if need <= 0 {
            continue;
        }
        let step = (mu.part(i) - nu.part(i)) as i64;
        if step == 0 {
            return Err(Error::NoStretch { index: i });
        }
        k = k.max(((need + step - 1) / step) as usize);
    }
    Ok(k)
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>) -> fmt::Result {
    f.write_str("[")?;
    for (i, item) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str("]")
}

/// Parses `[a,b,c]`, `a,b,c`, `(a,b,c)` or `[]`.
fn parse_list(s: &str) -> Result<Vec<i64>> {
    let trimmed = s.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .or_else(|| trimmed.strip_prefix('(').and_then(|t| t.strip_suffix(')')))
        .unwrap_or(trimmed)
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.trim().parse::<i64>().map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

impl PartialEq<IntVector> for Partition {
    fn eq(&self, other: &IntVector) -> bool {
        let len = self.len().max(other.len());
        (0..len).all(|i| self.part(i) as i64 == other.get(i))
    }
}
