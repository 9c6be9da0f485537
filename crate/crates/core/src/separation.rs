//! Weak separation, the Stieffel map and the commutation-exponent formulas.

use crate::error::{Error, Result};
use crate::subset::{KSubset, MinorIndex};

/// `I ≺ J`: every element of `I` is below every element of `J`.
/// Vacuously true when either side is empty.
pub fn precedes(i: &KSubset, j: &KSubset) -> bool {
    match (i.max_elem(), j.min_elem()) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    }
}

/// Canonical split of `outer` around `inner`: the parts of `outer` strictly
/// below `min(inner)` and strictly above `max(inner)`. Returns the part sizes
/// when the two parts exhaust `outer`.
fn split_around(inner: &KSubset, outer: &KSubset) -> Option<(usize, usize)> {
    let (lo, hi) = match (inner.min_elem(), inner.max_elem()) {
        (Some(lo), Some(hi)) => (lo, hi),
        // only reachable with equal-size sets, where outer is empty too
        _ => return outer.is_empty().then_some((0, 0)),
    };
    let below = outer.count_below(lo);
    let above = outer.len() - outer.count_below(hi + 1);
    (below + above == outer.len()).then_some((below, above))
}

/// Case 1 with `i` in the first role: `|I| >= |J|` and `J - I = J' ⊔ J''`
/// with `J' ≺ I - J ≺ J''`. Returns `(|J'|, |J''|)`.
pub fn case_one_split(i: &KSubset, j: &KSubset) -> Option<(usize, usize)> {
    if i.len() < j.len() {
        return None;
    }
    split_around(&i.difference(j), &j.difference(i))
}

/// Weak separation evaluated through the canonical partition.
pub fn weakly_separated(i: &KSubset, j: &KSubset) -> bool {
    debug_assert_eq!(i.ground(), j.ground());
    case_one_split(i, j).is_some() || case_one_split(j, i).is_some()
}

/// [`weakly_separated`] with the ground sets checked.
pub fn weakly_separated_checked(i: &KSubset, j: &KSubset) -> Result<bool> {
    if i.ground() != j.ground() {
        return Err(Error::GroundSetMismatch { left: i.ground(), right: j.ground() });
    }
    Ok(weakly_separated(i, j))
}

/// Weak separation evaluated through forbidden interleavings: for unequal
/// sizes the smaller difference may not have an element strictly between two
/// elements of the larger difference; for equal sizes the two differences may
/// not alternate `a < b < c < d` in either orientation.
pub fn weakly_separated_by_patterns(i: &KSubset, j: &KSubset) -> bool {
    let (i, j) = if i.len() <= j.len() { (i, j) } else { (j, i) };
    let small = i.difference(j).to_vec();
    let large = j.difference(i).to_vec();
    if i.len() < j.len() {
        return !small.iter().any(|&b| {
            large.iter().any(|&a| a < b) && large.iter().any(|&c| c > b)
        });
    }
    let alternates = |x: &[u8], y: &[u8]| {
        for &a in x {
            for &c in x.iter().filter(|&&c| c > a) {
                for _ in y.iter().filter(|&&b| a < b && b < c) {
                    if y.iter().any(|&d| d > c) {
                        return true;
                    }
                }
            }
        }
        false
    };
    !alternates(&small, &large) && !alternates(&large, &small)
}

/// Commutation exponent `c(Δ^I | Δ^J)` of two quantum Plücker coordinates:
/// `Δ^J Δ^I = q^c Δ^I Δ^J`. `None` when `I` and `J` are not weakly separated.
pub fn plucker_exponent(i: &KSubset, j: &KSubset) -> Result<Option<i32>> {
    if i.len() != j.len() {
        return Err(Error::SizeMismatch { expected: i.len(), found: j.len() });
    }
    if i.ground() != j.ground() {
        return Err(Error::GroundSetMismatch { left: i.ground(), right: j.ground() });
    }
    if let Some((below, above)) = case_one_split(i, j) {
        return Ok(Some(above as i32 - below as i32));
    }
    Ok(case_one_split(j, i).map(|(below, above)| below as i32 - above as i32))
}

/// `S(A,B) = {b + k : b ∈ B} ⊔ ([1..k] - w0(A))` inside `[1..k+m]`.
pub fn stieffel_subset(mi: &MinorIndex) -> KSubset {
    let (k, m) = (mi.k(), mi.m());
    let n = k + m;
    let mut bits = mi.cols().bits() << k;
    for r in 1..=k {
        // r survives unless w0(a) = k + 1 - a hits it
        if !mi.rows().contains(k + 1 - r) {
            bits |= 1u64 << (r - 1);
        }
    }
    KSubset::from_bits_unchecked(n, bits)
}

/// Commutation exponent `c(Δ_{A,B} | Δ_{C,D})` of two quantum minors, read off
/// the Stieffel images: `|J''| - |J'| + |A| - |C|` in case 1, antisymmetrized
/// otherwise. `None` when the images are not weakly separated.
pub fn minor_exponent(p: &MinorIndex, r: &MinorIndex) -> Result<Option<i32>> {
    if p.k() != r.k() || p.m() != r.m() {
        return Err(Error::Dimension(format!(
            "minors of {}x{} and {}x{} matrices",
            p.k(),
            p.m(),
            r.k(),
            r.m()
        )));
    }
    let (i, j) = (stieffel_subset(p), stieffel_subset(r));
    let (a, c) = (p.order() as i32, r.order() as i32);
    if let Some((below, above)) = case_one_split(&i, &j) {
        return Ok(Some(above as i32 - below as i32 + a - c));
    }
    Ok(case_one_split(&j, &i).map(|(below, above)| -(above as i32 - below as i32 + c - a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: u8, e: &[u8]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    /// Weak separation straight from the definition: try every partition of
    /// the larger side's difference.
    fn by_partition_search(i: &KSubset, j: &KSubset) -> bool {
        let holds = |i: &KSubset, j: &KSubset| {
            if i.len() < j.len() {
                return false;
            }
            let middle = i.difference(j);
            let rest = j.difference(i).to_vec();
            (0u32..1 << rest.len()).any(|mask| {
                let lo = KSubset::new(i.ground(), rest.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 0).map(|(_, &e)| e)).unwrap();
                let hi = KSubset::new(i.ground(), rest.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e)).unwrap();
                precedes(&lo, &middle) && precedes(&middle, &hi)
            })
        };
        holds(i, j) || holds(j, i)
    }

    #[test]
    fn precedes_examples() {
        assert!(precedes(&ks(5, &[1, 2]), &ks(5, &[3, 5])));
        assert!(!precedes(&ks(5, &[1, 4]), &ks(5, &[3, 5])));
        assert!(precedes(&KSubset::empty(5), &ks(5, &[1])));
        assert!(precedes(&ks(5, &[3]), &KSubset::empty(5)));
    }

    #[test]
    fn weak_separation_examples() {
        assert!(!by_partition_search(&ks(4, &[1, 3]), &ks(4, &[2, 4])));
        assert!(!weakly_separated(&ks(4, &[1, 3]), &ks(4, &[2, 4])));
        assert!(weakly_separated(&ks(4, &[1, 2]), &ks(4, &[3, 4])));
        assert!(!by_partition_search(&ks(6, &[1, 3, 5]), &ks(6, &[2, 4, 6])));
        assert!(!weakly_separated(&ks(6, &[1, 3, 5]), &ks(6, &[2, 4, 6])));
        assert!(weakly_separated_checked(&ks(4, &[1]), &ks(5, &[1])).is_err());
    }

    #[test]
    fn all_three_routes_agree_on_every_pair_of_subsets_of_six() {
        let all: Vec<KSubset> = (0u64..64).map(|b| KSubset::from_bits(6, b).unwrap()).collect();
        for i in &all {
            for j in &all {
                let canonical = weakly_separated(i, j);
                assert_eq!(canonical, by_partition_search(i, j), "{i:?} {j:?}");
                assert_eq!(canonical, weakly_separated_by_patterns(i, j), "{i:?} {j:?}");
                assert_eq!(canonical, weakly_separated(j, i));
            }
            assert!(weakly_separated(i, i));
        }
    }

    #[test]
    fn initial_segment_separates_from_everything() {
        for n in 2..=7u8 {
            for k in 1..n {
                let base = KSubset::initial(k, n);
                for s in crate::subset::k_subsets(k, n) {
                    assert!(weakly_separated(&base, &s));
                    assert!(plucker_exponent(&s, &base).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn plucker_exponent_examples() {
        assert_eq!(plucker_exponent(&ks(4, &[1, 2]), &ks(4, &[3, 4])).unwrap(), Some(2));
        assert_eq!(plucker_exponent(&ks(4, &[1, 3]), &ks(4, &[1, 3])).unwrap(), Some(0));
        assert_eq!(plucker_exponent(&ks(4, &[1, 3]), &ks(4, &[2, 4])).unwrap(), None);
        assert!(plucker_exponent(&ks(4, &[1]), &ks(4, &[2, 4])).is_err());
    }

    #[test]
    fn plucker_exponent_is_antisymmetric_and_orientation_free() {
        // when both orientations of the definition apply they must agree
        let all: Vec<KSubset> = crate::subset::k_subsets(3, 7).collect();
        for i in &all {
            for j in &all {
                let c = plucker_exponent(i, j).unwrap();
                assert_eq!(c.map(|v| -v), plucker_exponent(j, i).unwrap());
                if let (Some((b1, a1)), Some((b2, a2))) = (case_one_split(i, j), case_one_split(j, i)) {
                    assert_eq!(a1 as i32 - b1 as i32, b2 as i32 - a2 as i32);
                }
            }
        }
    }

    #[test]
    fn stieffel_examples() {
        let s = |a: &[u8], b: &[u8], k, m| stieffel_subset(&MinorIndex::from_slices(a, b, k, m).unwrap());
        assert_eq!(s(&[1], &[2], 2, 2), ks(4, &[1, 4]));
        assert_eq!(s(&[1, 2], &[1, 2], 2, 2), ks(4, &[3, 4]));
        assert_eq!(s(&[2], &[3], 3, 3), ks(6, &[1, 3, 6]));
    }

    #[test]
    fn stieffel_is_injective_with_size_k() {
        use itertools::Itertools;
        for (k, m) in [(2u8, 2u8), (2, 3), (3, 3), (3, 4)] {
            let mut seen = std::collections::HashSet::new();
            for l in 1..=k.min(m) as usize {
                for a in (1..=k).combinations(l) {
                    for b in (1..=m).combinations(l) {
                        let s = stieffel_subset(&MinorIndex::from_slices(&a, &b, k, m).unwrap());
                        assert_eq!(s.len(), k as usize);
                        assert_ne!(s, KSubset::initial(k, k + m));
                        assert!(seen.insert(s));
                    }
                }
            }
        }
    }

    #[test]
    fn minor_exponent_examples() {
        let mi = |a: &[u8], b: &[u8]| MinorIndex::from_slices(a, b, 2, 2).unwrap();
        assert_eq!(minor_exponent(&mi(&[1], &[1]), &mi(&[1], &[2])).unwrap(), Some(1));
        assert_eq!(minor_exponent(&mi(&[1], &[1]), &mi(&[2], &[1])).unwrap(), Some(1));
        assert_eq!(minor_exponent(&mi(&[1], &[2]), &mi(&[2], &[1])).unwrap(), Some(0));
        assert_eq!(minor_exponent(&mi(&[1], &[1]), &mi(&[2], &[2])).unwrap(), None);
        let other = MinorIndex::from_slices(&[1], &[1], 2, 3).unwrap();
        assert!(minor_exponent(&mi(&[1], &[1]), &other).is_err());
    }
}
