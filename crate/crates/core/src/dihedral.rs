//! Symmetries of the labeled n-gon and cyclic-interval notions.

use std::fmt;

use serde::Serialize;

use crate::subset::KSubset;

/// An element of the dihedral group `D_n` in normal form.
///
/// With 0-based labels `x = i - 1` the element acts by `x -> r + x` when
/// not reflected and `x -> r - x` when reflected (all mod `n`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DihedralElement {
    n: u8,
    rotation: u8,
    reflected: bool,
}

impl DihedralElement {
    pub fn new(n: u8, rotation: u8, reflected: bool) -> Self {
        assert!(n >= 1);
        Self { n, rotation: rotation % n, reflected }
    }

    pub fn identity(n: u8) -> Self {
        Self::new(n, 0, false)
    }

    /// `ρ_n : i -> i + 1 (mod n)`.
    pub fn rho(n: u8) -> Self {
        Self::new(n, 1, false)
    }

    /// `σ_n : 1 -> 2, 2 -> 1, 3 -> n, 4 -> n - 1, ...`.
    pub fn sigma(n: u8) -> Self {
        Self::new(n, 1, true)
    }

    /// All `2n` elements, rotations first.
    pub fn all(n: u8) -> impl Iterator<Item = Self> {
        (0..2 * n).map(move |t| Self::new(n, t % n, t >= n))
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn rotation(&self) -> u8 {
        self.rotation
    }

    pub fn is_reflection(&self) -> bool {
        self.reflected
    }

    pub fn is_identity(&self) -> bool {
        self.rotation == 0 && !self.reflected
    }

    /// Image of a 1-based index.
    pub fn apply_index(&self, i: u8) -> u8 {
        let n = self.n as u32;
        let x = (i as u32 - 1) % n;
        let y = if self.reflected {
            (self.rotation as u32 + n - x) % n
        } else {
            (self.rotation as u32 + x) % n
        };
        y as u8 + 1
    }

    pub fn apply(&self, k: &KSubset) -> KSubset {
        debug_assert_eq!(k.ground(), self.n);
        let bits = k.iter().fold(0u64, |acc, e| acc | 1u64 << (self.apply_index(e) - 1));
        KSubset::from_bits_unchecked(self.n, bits)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n as u32;
        let r2 = if self.reflected { n - other.rotation as u32 } else { other.rotation as u32 };
        Self::new(self.n, ((self.rotation as u32 + r2) % n) as u8, self.reflected ^ other.reflected)
    }

    pub fn inverse(&self) -> Self {
        if self.reflected {
            *self
        } else {
            Self::new(self.n, (self.n - self.rotation) % self.n, false)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.compose(self))
    }
}

impl fmt::Debug for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflected {
            write!(f, "rho^{}*tau/D{}", self.rotation, self.n)
        } else {
            write!(f, "rho^{}/D{}", self.rotation, self.n)
        }
    }
}

/// Length of the shortest cyclic interval of `[1..n]` containing `k`.
pub fn diameter(k: &KSubset) -> usize {
    let elems = k.to_vec();
    assert!(!elems.is_empty(), "diameter of the empty set");
    let n = k.ground() as usize;
    let mut widest_gap = n - elems[elems.len() - 1] as usize + elems[0] as usize;
    for w in elems.windows(2) {
        widest_gap = widest_gap.max((w[1] - w[0]) as usize);
    }
    n + 1 - widest_gap
}

/// A set of consecutive indices of the n-gon.
pub fn is_boundary(k: &KSubset) -> bool {
    !k.is_empty() && diameter(k) == k.len()
}

/// The `n` cyclic intervals of length `k`, i.e. the boundary `k`-subsets.
pub fn boundary_sets(k: u8, n: u8) -> Vec<KSubset> {
    let rot = DihedralElement::rho(n);
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = KSubset::initial(k, n);
    for _ in 0..n {
        out.push(cur);
        cur = rot.apply(&cur);
    }
    out.sort();
    out.dedup();
    out
}
