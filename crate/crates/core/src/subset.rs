//! Subsets of `[1..n]` stored as bitmasks.
//!
//! Indices are 1-based everywhere in the public API. Element `i` lives in
//! bit `i - 1`, so ground sets of up to 64 points are supported.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_GROUND: u8 = 64;

/// A subset of the ground set `[1..n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    n: u8,
    bits: u64,
}

fn ground_mask(n: u8) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl KSubset {
    pub fn new<I>(n: u8, elems: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<u32>,
    {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSetSize(n as u32));
        }
        let mut bits = 0u64;
        for e in elems {
            let e: u32 = e.into();
            if e == 0 || e > n as u32 {
                return Err(Error::IndexOutOfRange { index: e, n: n as u32 });
            }
            let b = 1u64 << (e - 1);
            if bits & b != 0 {
                return Err(Error::DuplicateIndex(e));
            }
            bits |= b;
        }
        Ok(Self { n, bits })
    }

    /// Builds a subset directly from a bitmask. Bits beyond `n` are an error.
    pub fn from_bits(n: u8, bits: u64) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSetSize(n as u32));
        }
        if bits & !ground_mask(n) != 0 {
            let bad = 64 - (bits & !ground_mask(n)).leading_zeros();
            return Err(Error::IndexOutOfRange { index: bad, n: n as u32 });
        }
        Ok(Self { n, bits })
    }

    pub(crate) fn from_bits_unchecked(n: u8, bits: u64) -> Self {
        debug_assert!(bits & !ground_mask(n) == 0);
        Self { n, bits }
    }

    pub fn empty(n: u8) -> Self {
        Self { n, bits: 0 }
    }

    /// `[1..k]` inside `[1..n]`.
    pub fn initial(k: u8, n: u8) -> Self {
        assert!(k <= n, "initial segment longer than the ground set");
        Self { n, bits: ground_mask(k) }
    }

    /// The contiguous block `[lo..=hi]` (empty when `lo > hi`).
    pub fn interval(lo: u8, hi: u8, n: u8) -> Self {
        if lo > hi {
            return Self::empty(n);
        }
        assert!(lo >= 1 && hi <= n);
        Self { n, bits: ground_mask(hi) & !ground_mask(lo - 1) }
    }

    /// Parses the text form `"1,3,5"`. An empty string is the empty set.
    pub fn parse(s: &str, n: u8) -> Result<Self> {
        Self::new(n, parse_indices(s)?)
    }

    pub fn ground(&self) -> u8 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: u8) -> bool {
        e >= 1 && e <= self.n && self.bits & (1u64 << (e - 1)) != 0
    }

    pub fn min_elem(&self) -> Option<u8> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as u8 + 1)
    }

    pub fn max_elem(&self) -> Option<u8> {
        (self.bits != 0).then(|| 64 - self.bits.leading_zeros() as u8)
    }

    pub fn iter(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { n: self.n, bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { n: self.n, bits: self.bits & !other.bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn with(&self, e: u8) -> Self {
        assert!(e >= 1 && e <= self.n);
        Self { n: self.n, bits: self.bits | (1u64 << (e - 1)) }
    }

    pub fn without(&self, e: u8) -> Self {
        if e == 0 || e > self.n {
            return *self;
        }
        Self { n: self.n, bits: self.bits & !(1u64 << (e - 1)) }
    }

    /// The same elements viewed inside a different ground set.
    pub fn with_ground(&self, n: u8) -> Result<Self> {
        Self::from_bits(n, self.bits)
    }

    /// Number of elements strictly below `e`.
    pub fn count_below(&self, e: u8) -> usize {
        if e <= 1 {
            0
        } else {
            (self.bits & ground_mask(e - 1)).count_ones() as usize
        }
    }
}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        let ord = if self.len() == other.len() {
            // for equal sizes the set owning the smallest element of the
            // symmetric difference is lexicographically first
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                Ordering::Equal
            } else if self.bits & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else {
            self.iter().cmp(other.iter())
        };
        ord.then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}/{}", self, self.n)
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// Ascending iterator over the elements of a [`KSubset`].
#[derive(Clone)]
pub struct Elements {
    bits: u64,
}

impl Iterator for Elements {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.bits == 0 {
            return None;
        }
        let e = self.bits.trailing_zeros() as u8 + 1;
        self.bits &= self.bits - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

pub fn parse_indices(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
        .collect()
}

/// All `k`-subsets of `[1..n]` in lexicographic order.
pub fn k_subsets(k: u8, n: u8) -> impl Iterator<Item = KSubset> {
    use itertools::Itertools;
    (1..=n)
        .combinations(k as usize)
        .map(move |c| KSubset::new(n, c).expect("combination inside ground set"))
}

/// Row and column index sets of a quantum minor of a `k x m` quantum matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorIndex {
    rows: KSubset,
    cols: KSubset,
}

impl MinorIndex {
    pub fn new(rows: KSubset, cols: KSubset) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch { expected: rows.len(), found: cols.len() });
        }
        if rows.is_empty() {
            return Err(Error::Precondition("minor index sets must be non-empty".into()));
        }
        Ok(Self { rows, cols })
    }

    pub fn from_slices(rows: &[u8], cols: &[u8], k: u8, m: u8) -> Result<Self> {
        Self::new(KSubset::new(k, rows.iter().copied())?, KSubset::new(m, cols.iter().copied())?)
    }

    pub fn rows(&self) -> KSubset {
        self.rows
    }

    pub fn cols(&self) -> KSubset {
        self.cols
    }

    pub fn k(&self) -> u8 {
        self.rows.ground()
    }

    pub fn m(&self) -> u8 {
        self.cols.ground()
    }

    /// Common cardinality `|A| = |B|`.
    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

/// Every minor of a `k x m` matrix whose order lies in `orders`, by order
/// and then lexicographically.
pub fn all_minors(k: u8, m: u8, orders: impl IntoIterator<Item = u8>) -> Vec<MinorIndex> {
    let mut out = Vec::new();
    for l in orders {
        for rows in k_subsets(l, k) {
            for cols in k_subsets(l, m) {
                out.push(MinorIndex { rows, cols });
            }
        }
    }
    out
}

/// JSON shape `{"A":[..],"B":[..],"k":K,"m":M}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinorIndexJson {
    #[serde(rename = "A")]
    pub a: Vec<u32>,
    #[serde(rename = "B")]
    pub b: Vec<u32>,
    pub k: u8,
    pub m: u8,
}

impl From<&MinorIndex> for MinorIndexJson {
    fn from(mi: &MinorIndex) -> Self {
        Self {
            a: mi.rows.iter().map(u32::from).collect(),
            b: mi.cols.iter().map(u32::from).collect(),
            k: mi.k(),
            m: mi.m(),
        }
    }
}

impl TryFrom<MinorIndexJson> for MinorIndex {
    type Error = Error;

    fn try_from(j: MinorIndexJson) -> Result<Self> {
        MinorIndex::new(KSubset::new(j.k, j.a)?, KSubset::new(j.m, j.b)?)
    }
}
