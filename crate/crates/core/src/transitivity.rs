//! Constructive reduction of collections in `W(2,n)` and `W(3,n)` to the
//! base collection by (2,4)-moves.

use serde::Serialize;

use crate::collection::{base_collection, WSCollection};
use crate::dihedral::{is_boundary, DihedralElement};
use crate::error::{Error, Result};
use crate::moves::{apply_move, find_moves, MoveSpec};
use crate::subset::KSubset;

/// Number of non-boundary sets containing `n`.
pub fn height(c: &WSCollection) -> usize {
    c.sets().iter().filter(|s| s.contains(c.n()) && !is_boundary(s)).count()
}

/// A move sequence taking a collection to the base collection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    /// Symmetry `g` with `{1,n-2,n-1}` in `g·c`, chosen at the top level
    /// (`k = 3` only; the identity when no translation was needed).
    pub witness: Option<DihedralElement>,
    /// Applied to the input in order.
    pub moves: Vec<MoveSpec>,
}

impl Reduction {
    /// Applies every move, validating each intermediate collection, and
    /// returns the whole trajectory including the start.
    pub fn replay(&self, c: &WSCollection) -> Result<Vec<WSCollection>> {
        let mut path = vec![c.clone()];
        for mv in &self.moves {
            let next = apply_move(path.last().expect("non-empty"), mv)?;
            if !next.is_maximal() {
                return Err(Error::Assertion(format!("{mv:?} left a non-maximal collection")));
            }
            path.push(next);
        }
        Ok(path)
    }

    pub fn endpoint(&self, c: &WSCollection) -> Result<WSCollection> {
        let mut cur = c.clone();
        for mv in &self.moves {
            cur = apply_move(&cur, mv)?;
        }
        Ok(cur)
    }
}

pub fn reduce_to_base(c: &WSCollection) -> Result<Reduction> {
    if !c.is_weakly_separated() {
        return Err(Error::Precondition("collection is not weakly separated".into()));
    }
    if let Some(s) = c.addable() {
        return Err(Error::NotMaximal(s));
    }
    match c.k() {
        2 => Ok(Reduction { witness: None, moves: reduce_fan(c)? }),
        3 => {
            let (g, moves) = reduce3(c)?;
            Ok(Reduction { witness: Some(g), moves })
        }
        k => Err(Error::Unsupported(format!("reduction to the base collection for k = {k}"))),
    }
}

/// Flip chords away from vertex 1 until the fan at 1 remains.
fn reduce_fan(c: &WSCollection) -> Result<Vec<MoveSpec>> {
    let target = base_collection(2, c.n())?;
    let mut cur = c.clone();
    let mut moves = Vec::new();
    while cur != target {
        let mv = find_moves(&cur)
            .into_iter()
            .find(|m| m.added().contains(1))
            .ok_or_else(|| Error::Assertion(format!("no flip towards the fan in {cur:?}")))?;
        cur = apply_move(&cur, &mv)?;
        moves.push(mv);
    }
    Ok(moves)
}

fn ks(n: u8, e: [u8; 3]) -> KSubset {
    KSubset::from_bits_unchecked(n, e.iter().fold(0, |b, &x| b | 1 << (x - 1)))
}

/// The unique move of `c` taking out `out` and putting in `inn`.
fn move_replacing(c: &WSCollection, out: KSubset, inn: KSubset) -> Result<MoveSpec> {
    find_moves(c)
        .into_iter()
        .find(|m| m.removed() == out && m.added() == inn)
        .ok_or_else(|| Error::Assertion(format!("no move replacing {out} by {inn} in {c:?}")))
}

/// First symmetry (identity first) carrying `{1,n-2,n-1}` into the collection.
pub fn normalizing_symmetry(c: &WSCollection) -> Option<DihedralElement> {
    let n = c.n();
    let key = ks(n, [1, n - 2, n - 1]);
    DihedralElement::all(n).find(|g| c.contains(&g.inverse().apply(&key)))
}

fn reduce3(c: &WSCollection) -> Result<(DihedralElement, Vec<MoveSpec>)> {
    let n = c.n();
    if n <= 4 {
        return Ok((DihedralElement::identity(n), Vec::new()));
    }
    let g = normalizing_symmetry(c)
        .ok_or_else(|| Error::Assertion(format!("no symmetry brings {{1,n-2,n-1}} into {c:?}")))?;
    let ginv = g.inverse();
    let mut moves: Vec<MoveSpec> = reduce_normalized(&c.transformed(&g))?.iter().map(|m| m.transformed(&ginv)).collect();
    moves.extend(reduce_translate(&ginv)?);
    Ok((g, moves))
}

/// Moves taking `c ∋ {1,n-2,n-1}` to `A_n`.
fn reduce_normalized(c: &WSCollection) -> Result<Vec<MoveSpec>> {
    let n = c.n();
    let mut cur = c.clone();
    let mut moves = Vec::new();
    while height(&cur) > 0 {
        let b = pinch(&cur)?;
        if b == 2 {
            return Err(Error::Assertion(format!("pinch point 2 with positive height in {cur:?}")));
        }
        let a = (2..b).rev().find(|&x| cur.contains(&ks(n, [1, x, n]))).expect("{1,2,n} is boundary");
        if !cur.contains(&ks(n, [1, a, b])) {
            return Err(Error::Assertion(format!("{{1,{a},{b}}} missing from {cur:?}")));
        }
        let mv = MoveSpec::new(KSubset::new(n, [1u8])?, [a, b, n - 1, n], false)?;
        cur = apply_move(&cur, &mv)?;
        moves.push(mv);
    }
    let (rest, _) = strip_top(&cur)?;
    let (_, sub) = reduce3(&rest)?;
    for mv in sub {
        moves.push(mv.with_ground(n)?);
    }
    Ok(moves)
}

/// Largest `b` in `[2..n-2]` with `{1,b,n}` present, checked against `{1,b,n-1}`.
pub(crate) fn pinch(c: &WSCollection) -> Result<u8> {
    let n = c.n();
    let b = (2..=n - 2)
        .rev()
        .find(|&b| c.contains(&ks(n, [1, b, n])))
        .ok_or_else(|| Error::Precondition("no set {1,b,n}".into()))?;
    if !c.contains(&ks(n, [1, b, n - 1])) {
        return Err(Error::Assertion(format!("{{1,{b},{}}} missing", n - 1)));
    }
    Ok(b)
}

/// Removes `{1,2,n}, {1,n-1,n}, {n-2,n-1,n}` from a height-zero collection
/// and reads the rest inside `[1..n-1]`.
fn strip_top(c: &WSCollection) -> Result<(WSCollection, [KSubset; 3])> {
    let n = c.n();
    let top = [ks(n, [1, 2, n]), ks(n, [1, n - 1, n]), ks(n, [n - 2, n - 1, n])];
    for t in &top {
        if !c.contains(t) {
            return Err(Error::Assertion(format!("{t} missing from {c:?}")));
        }
    }
    let rest = c
        .sets()
        .iter()
        .filter(|s| !top.contains(s))
        .map(|s| s.with_ground(n - 1))
        .collect::<Result<Vec<_>>>()?;
    Ok((WSCollection::new(3, n - 1, rest)?, top))
}

/// Moves taking `h·A_n` to `A_n`, via `h = ρ^r σ^f`.
pub fn reduce_translate(h: &DihedralElement) -> Result<Vec<MoveSpec>> {
    let n = h.n();
    let rho = DihedralElement::rho(n);
    let (r, f) = if h.is_reflection() {
        ((h.rotation() + n - 1) % n, true)
    } else {
        (h.rotation(), false)
    };
    let mut moves = Vec::new();
    if f {
        let shift = rho.pow(r as u32);
        moves.extend(generator_reduction(n, Generator::Sigma)?.iter().map(|m| m.transformed(&shift)));
    }
    let m_rho = if r > 0 { generator_reduction(n, Generator::Rho)? } else { Vec::new() };
    for e in (0..r).rev() {
        let shift = rho.pow(e as u32);
        moves.extend(m_rho.iter().map(|m| m.transformed(&shift)));
    }
    Ok(moves)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Generator {
    Rho,
    Sigma,
}

/// Moves taking `ρ_n·A_n` or `σ_n·A_n` to `A_n`.
fn generator_reduction(n: u8, which: Generator) -> Result<Vec<MoveSpec>> {
    if n <= 4 {
        return Ok(Vec::new());
    }
    let g = match which {
        Generator::Rho => DihedralElement::rho(n),
        Generator::Sigma => DihedralElement::sigma(n),
    };
    let mut cur = base_collection(3, n)?.transformed(&g);
    let steps: Vec<(KSubset, KSubset)> = match which {
        Generator::Sigma => vec![(ks(n, [2, n - 1, n]), ks(n, [1, n - 2, n - 1]))],
        Generator::Rho => vec![
            (ks(n, [2, 3, n]), ks(n, [1, 2, n - 1])),
            (ks(n, [2, n - 1, n]), ks(n, [1, n - 2, n - 1])),
        ],
    };
    let mut moves = Vec::new();
    for (out, inn) in steps {
        let mv = move_replacing(&cur, out, inn)?;
        cur = apply_move(&cur, &mv)?;
        moves.push(mv);
    }
    let (rest, _) = strip_top(&cur)?;
    let small = match which {
        Generator::Rho => DihedralElement::rho(n - 1),
        Generator::Sigma => DihedralElement::sigma(n - 1),
    };
    if rest != base_collection(3, n - 1)?.transformed(&small) {
        return Err(Error::Assertion(format!("unexpected remainder {rest:?}")));
    }
    for mv in generator_reduction(n - 1, which)? {
        moves.push(mv.with_ground(n)?);
    }
    Ok(moves)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_has_height_zero_and_empty_reduction() {
        for n in 4..=9 {
            let a = base_collection(3, n).unwrap();
            assert_eq!(height(&a), 0);
            assert!(reduce_to_base(&a).unwrap().moves.is_empty());
        }
        let a = base_collection(2, 7).unwrap();
        assert!(reduce_to_base(&a).unwrap().moves.is_empty());
    }

    #[test]
    fn every_translate_of_the_base_reduces() {
        for n in 5..=9 {
            let a = base_collection(3, n).unwrap();
            for g in DihedralElement::all(n) {
                let c = a.transformed(&g);
                let red = reduce_to_base(&c).unwrap();
                assert_eq!(red.replay(&c).unwrap().last().unwrap(), &a, "n={n} {g:?}");
                let moves = reduce_translate(&g).unwrap();
                let r = Reduction { witness: None, moves };
                assert_eq!(r.endpoint(&c).unwrap(), a, "n={n} {g:?}");
            }
        }
    }

    #[test]
    fn every_enumerated_collection_reaches_the_base() {
        use crate::enumerate::enumerate;
        use crate::exec::Execution;
        for (k, n) in [(2, 6), (3, 6), (3, 7)] {
            let a = base_collection(k, n).unwrap();
            for c in enumerate(k, n, Execution::default()).unwrap() {
                let red = reduce_to_base(&c).unwrap();
                assert_eq!(red.replay(&c).unwrap().last().unwrap(), &a);
            }
        }
    }

    #[test]
    fn unsupported_and_non_maximal_inputs() {
        let a = base_collection(4, 8).unwrap();
        assert!(matches!(reduce_to_base(&a), Err(Error::Unsupported(_))));
        let c = WSCollection::from_lists(3, 6, &[[1, 2, 3]]).unwrap();
        assert!(matches!(reduce_to_base(&c), Err(Error::NotMaximal(_))));
    }
}
