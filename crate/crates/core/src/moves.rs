//! (2,4)-moves on maximal collections.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::collection::WSCollection;
use crate::dihedral::DihedralElement;
use crate::error::{Error, Result};
use crate::subset::KSubset;

/// The exchange `I ∪ {i,j} <-> I ∪ {s,t}` for `i < s < j < t`, legal when
/// the four sides `Iis, Isj, Ijt, Iit` are present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSpec {
    base: KSubset,
    quad: [u8; 4],
    /// `true` when `I ∪ {i,j}` is the set taken out.
    removes_ij: bool,
}

impl MoveSpec {
    pub fn new(base: KSubset, quad: [u8; 4], removes_ij: bool) -> Result<Self> {
        if !quad.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidMove(format!("quadruple {quad:?} is not increasing")));
        }
        for &p in &quad {
            if p == 0 || p > base.ground() {
                return Err(Error::IndexOutOfRange { index: p as u32, n: base.ground() as u32 });
            }
            if base.contains(p) {
                return Err(Error::InvalidMove(format!("{p} lies in the base {base}")));
            }
        }
        Ok(Self { base, quad, removes_ij })
    }

    pub fn base(&self) -> KSubset {
        self.base
    }

    /// `[i, s, j, t]`.
    pub fn quad(&self) -> [u8; 4] {
        self.quad
    }

    pub fn removes_ij(&self) -> bool {
        self.removes_ij
    }

    fn with_pair(&self, a: usize, b: usize) -> KSubset {
        self.base.with(self.quad[a]).with(self.quad[b])
    }

    /// `[Iis, Isj, Ijt, Iit]`.
    pub fn sides(&self) -> [KSubset; 4] {
        [self.with_pair(0, 1), self.with_pair(1, 2), self.with_pair(2, 3), self.with_pair(0, 3)]
    }

    pub fn removed(&self) -> KSubset {
        if self.removes_ij {
            self.with_pair(0, 2)
        } else {
            self.with_pair(1, 3)
        }
    }

    pub fn added(&self) -> KSubset {
        if self.removes_ij {
            self.with_pair(1, 3)
        } else {
            self.with_pair(0, 2)
        }
    }

    /// The move undoing this one.
    pub fn reversed(&self) -> Self {
        Self { removes_ij: !self.removes_ij, ..*self }
    }

    /// Image under a polygon symmetry. Cyclic order is preserved up to
    /// reversal, so diagonals go to diagonals.
    pub fn transformed(&self, g: &DihedralElement) -> Self {
        let mut quad = self.quad.map(|p| g.apply_index(p));
        quad.sort_unstable();
        let base = g.apply(&self.base);
        let gone = g.apply(&self.removed());
        let removes_ij = gone.contains(quad[0]);
        Self { base, quad, removes_ij }
    }

    /// Same move read inside `[1..n]` for a larger `n`.
    pub fn with_ground(&self, n: u8) -> Result<Self> {
        Ok(Self { base: self.base.with_ground(n)?, ..*self })
    }
}

impl fmt::Debug for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} -> {{{}}}", self.removed(), self.added())
    }
}

impl Serialize for MoveSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            base: KSubset,
            quad: [u8; 4],
            removed: KSubset,
            added: KSubset,
        }
        Repr { base: self.base, quad: self.quad, removed: self.removed(), added: self.added() }.serialize(s)
    }
}

/// Every legal move of `c`, sorted.
pub fn find_moves(c: &WSCollection) -> Vec<MoveSpec> {
    if c.k() < 2 {
        return Vec::new();
    }
    let bases: BTreeSet<KSubset> = c
        .sets()
        .iter()
        .flat_map(|d| d.iter().tuple_combinations().map(move |(a, b)| d.without(a).without(b)))
        .collect();
    let mut out = Vec::new();
    for base in bases {
        let links: Vec<KSubset> =
            c.sets().iter().filter(|s| base.is_subset(s)).map(|s| s.difference(&base)).collect();
        if links.len() < 4 {
            continue;
        }
        let has = |a: u8, b: u8| links.iter().any(|l| l.contains(a) && l.contains(b));
        let verts: BTreeSet<u8> = links.iter().flat_map(|l| l.iter()).collect();
        for (i, s, j, t) in verts.iter().copied().tuple_combinations() {
            if !(has(i, s) && has(s, j) && has(j, t) && has(i, t)) {
                continue;
            }
            match (has(i, j), has(s, t)) {
                (true, false) => out.push(MoveSpec { base, quad: [i, s, j, t], removes_ij: true }),
                (false, true) => out.push(MoveSpec { base, quad: [i, s, j, t], removes_ij: false }),
                _ => {}
            }
        }
    }
    out.sort_unstable();
    out
}

/// Applies `mv` after checking its sides and removed diagonal are present.
pub fn apply_move(c: &WSCollection, mv: &MoveSpec) -> Result<WSCollection> {
    if mv.base.ground() != c.n() || mv.base.len() + 2 != c.k() as usize {
        return Err(Error::InvalidMove(format!("{mv:?} does not fit W({},{})", c.k(), c.n())));
    }
    for side in mv.sides() {
        if !c.contains(&side) {
            return Err(Error::InvalidMove(format!("side {side} of {mv:?} is absent")));
        }
    }
    if !c.contains(&mv.removed()) {
        return Err(Error::InvalidMove(format!("{} is absent", mv.removed())));
    }
    if c.contains(&mv.added()) {
        return Err(Error::InvalidMove(format!("{} is already present", mv.added())));
    }
    Ok(c.exchange(&mv.removed(), mv.added()))
}

/// All collections one move away, in move order.
pub fn neighbours(c: &WSCollection) -> Vec<WSCollection> {
    find_moves(c).iter().map(|mv| c.exchange(&mv.removed(), mv.added())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::base_collection;

    fn ks(n: u8, e: &[u8]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn square_flip() {
        let c = WSCollection::with_boundary(2, 4, &[[1, 3]]).unwrap();
        let moves = find_moves(&c);
        assert_eq!(moves.len(), 1);
        let d = apply_move(&c, &moves[0]).unwrap();
        assert!(d.contains(&ks(4, &[2, 4])) && !d.contains(&ks(4, &[1, 3])));
        assert_eq!(apply_move(&d, &moves[0].reversed()).unwrap(), c);
        assert!(apply_move(&d, &moves[0]).is_err());
    }

    #[test]
    fn base_collection_move_example() {
        let a = base_collection(3, 6).unwrap();
        let mv = MoveSpec::new(ks(6, &[1]), [2, 3, 4, 5], true).unwrap();
        assert!(find_moves(&a).contains(&mv));
        let b = apply_move(&a, &mv).unwrap();
        assert!(b.contains(&ks(6, &[1, 3, 5])) && !b.contains(&ks(6, &[1, 2, 4])));
        assert!(b.is_maximal());
    }

    #[test]
    fn moves_keep_maximality() {
        let a = base_collection(3, 7).unwrap();
        for mv in find_moves(&a) {
            let b = apply_move(&a, &mv).unwrap();
            assert_eq!(b.len(), a.len());
            assert!(b.is_maximal(), "{mv:?}");
        }
    }

    #[test]
    fn moves_commute_with_symmetries() {
        let a = base_collection(3, 7).unwrap();
        for g in DihedralElement::all(7) {
            let ga = a.transformed(&g);
            let mut expected: Vec<MoveSpec> = find_moves(&a).iter().map(|m| m.transformed(&g)).collect();
            expected.sort_unstable();
            assert_eq!(find_moves(&ga), expected);
            for mv in find_moves(&a) {
                let lhs = apply_move(&a, &mv).unwrap().transformed(&g);
                assert_eq!(lhs, apply_move(&ga, &mv.transformed(&g)).unwrap());
            }
        }
    }
}
