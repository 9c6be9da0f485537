//! Recursive structure of `W(3,n)`: projection to `W(3,n-1)` together with
//! the pinch point, and the inverse lift.

use std::collections::BTreeSet;

use crate::collection::WSCollection;
use crate::dihedral::DihedralElement;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::separation::precedes;
use crate::subset::{k_subsets, KSubset};
use crate::transitivity::pinch;

fn set3(n: u8, a: u8, b: u8, c: u8) -> KSubset {
    KSubset::new(n, [a, b, c]).expect("indices checked by caller")
}

fn require_k3(c: &WSCollection) -> Result<()> {
    if c.k() != 3 {
        return Err(Error::Unsupported(format!("expected k = 3, got k = {}", c.k())));
    }
    if c.n() < 4 {
        return Err(Error::Precondition(format!("expected n >= 4, got n = {}", c.n())));
    }
    Ok(())
}

fn require_near_boundary(c: &WSCollection) -> Result<()> {
    let n = c.n();
    if !c.contains(&set3(n, 1, n - 2, n - 1)) {
        return Err(Error::Precondition(format!("{{1,{},{}}} is not in the collection", n - 2, n - 1)));
    }
    Ok(())
}

/// `C' = {I'}`: sets containing `n` but not `n-1` move `n` to `n-1`, sets
/// containing both are dropped.
pub fn project(c: &WSCollection) -> Result<WSCollection> {
    require_k3(c)?;
    require_near_boundary(c)?;
    let n = c.n();
    let mut out = Vec::with_capacity(c.len());
    for s in c.sets() {
        let image = match (s.contains(n), s.contains(n - 1)) {
            (true, true) => continue,
            (true, false) => s.without(n).with(n - 1),
            (false, _) => *s,
        };
        out.push(image.with_ground(n - 1)?);
    }
    let projected = WSCollection::new(3, n - 1, out)?;
    if projected.len() + 3 != c.len() {
        return Err(Error::Assertion(format!(
            "projection has {} sets, expected {}",
            projected.len(),
            c.len() - 3
        )));
    }
    Ok(projected)
}

/// The unique `b` with `{1,b,n-1}` and `{1,b,n}` both present.
pub fn pinch_point(c: &WSCollection) -> Result<u8> {
    require_k3(c)?;
    require_near_boundary(c)?;
    pinch(c)
}

/// Indices `b` at which `B` may be lifted, writing `top` for the largest
/// index of `B`'s ground set: `{1,b,top} ∈ B` and
/// `{1,b} - {s,t} ≺ {s,t} - {1,b}` for every `{s,t,top} ∈ B` with `1 < s`.
pub fn f_set(b_coll: &WSCollection) -> Result<Vec<u8>> {
    if b_coll.k() != 3 {
        return Err(Error::Unsupported(format!("expected k = 3, got k = {}", b_coll.k())));
    }
    let top = b_coll.n();
    let pairs: Vec<KSubset> = b_coll
        .sets()
        .iter()
        .filter(|s| s.contains(top) && !s.contains(1))
        .map(|s| s.without(top))
        .collect();
    Ok((2..top)
        .filter(|&b| {
            let one_b = KSubset::new(top, [1, b]).expect("in range");
            b_coll.contains(&one_b.with(top))
                && pairs.iter().all(|st| precedes(&one_b.difference(st), &st.difference(&one_b)))
        })
        .collect())
}

/// `B̂_b` in `W(3, n)` for `B` in `W(3, n-1)`.
pub fn lift(b_coll: &WSCollection, b: u8) -> Result<WSCollection> {
    if !f_set(b_coll)?.contains(&b) {
        return Err(Error::Precondition(format!("{b} is not a lifting index of {b_coll:?}")));
    }
    Ok(lift_unchecked(b_coll, b))
}

fn lift_unchecked(b_coll: &WSCollection, b: u8) -> WSCollection {
    let top = b_coll.n();
    let n = top + 1;
    let one_b_top = set3(top, 1, b, top);
    let one_b = KSubset::new(top, [1, b]).expect("in range");
    let mut sets: Vec<KSubset> = b_coll
        .sets()
        .iter()
        .map(|s| {
            let raised = s.with_ground(n).expect("larger ground set");
            if s.contains(top) && precedes(&s.difference(&one_b_top), &one_b.difference(s)) {
                raised.without(top).with(n)
            } else {
                raised
            }
        })
        .collect();
    sets.extend([set3(n, 1, b, top), set3(n, 1, top, n), set3(n, top - 1, top, n)]);
    WSCollection::new(3, n, sets).expect("sizes preserved")
}

/// Every lift of every member of `level`, closed under the dihedral group of
/// the larger polygon.
pub fn lift_level(level: &[WSCollection], exec: Execution) -> Result<Vec<WSCollection>> {
    let Some(first) = level.first() else {
        return Ok(Vec::new());
    };
    let n = first.n() + 1;
    let group: Vec<DihedralElement> = DihedralElement::all(n).collect();
    let lifted: Vec<WSCollection> = exec::flat_map(exec, level, |b_coll| {
        let Ok(fs) = f_set(b_coll) else {
            return Vec::new();
        };
        fs.into_iter().map(|b| lift_unchecked(b_coll, b)).collect()
    });
    let mut closed: BTreeSet<WSCollection> = BTreeSet::new();
    for c in exec::flat_map(exec, &lifted, |c| group.iter().map(|g| c.transformed(g)).collect()) {
        closed.insert(c);
    }
    Ok(closed.into_iter().collect())
}

/// `W(3,n)` built by lifting from `W(3,4)`, sorted.
pub fn generate_w3(n: u8, exec: Execution) -> Result<Vec<WSCollection>> {
    if n < 4 {
        return Err(Error::Precondition(format!("generation starts at n = 4, got {n}")));
    }
    let mut level = vec![WSCollection::new(3, 4, k_subsets(3, 4))?];
    for _ in 5..=n {
        level = lift_level(&level, exec)?;
    }
    Ok(level)
}
