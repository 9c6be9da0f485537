//! Collections of pairwise weakly separated `k`-subsets.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dihedral::{boundary_sets, is_boundary, DihedralElement};
use crate::error::{Error, Result};
use crate::separation::weakly_separated;
use crate::subset::{k_subsets, KSubset};

/// A deduplicated, lexicographically sorted set of `k`-subsets of `[1..n]`.
///
/// The sorted form is canonical, so derived equality, ordering and hashing
/// are structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WSCollection {
    k: u8,
    n: u8,
    sets: Vec<KSubset>,
}

/// Expected size `k(n-k)+1` of a maximal collection.
pub fn pure_size(k: u8, n: u8) -> usize {
    k as usize * (n - k) as usize + 1
}

impl WSCollection {
    /// Checks set sizes and ground sets; weak separation is not checked here.
    pub fn new(k: u8, n: u8, sets: impl IntoIterator<Item = KSubset>) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Precondition(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        let mut v: Vec<KSubset> = sets.into_iter().collect();
        for s in &v {
            if s.ground() != n {
                return Err(Error::GroundSetMismatch { left: s.ground(), right: n });
            }
            if s.len() != k as usize {
                return Err(Error::SizeMismatch { expected: k as usize, found: s.len() });
            }
        }
        v.sort_unstable();
        v.dedup();
        Ok(Self { k, n, sets: v })
    }

    pub fn empty(k: u8, n: u8) -> Result<Self> {
        Self::new(k, n, [])
    }

    /// Builds from explicit index lists.
    pub fn from_lists<L: AsRef<[u8]>>(k: u8, n: u8, lists: &[L]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| KSubset::new(n, l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, n, sets)
    }

    /// Boundary sets plus the given non-boundary lists.
    pub fn with_boundary<L: AsRef<[u8]>>(k: u8, n: u8, lists: &[L]) -> Result<Self> {
        let extra = Self::from_lists(k, n, lists)?;
        Self::new(k, n, boundary_sets(k, n).into_iter().chain(extra.sets))
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn sets(&self) -> &[KSubset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &KSubset) -> bool {
        self.sets.binary_search(s).is_ok()
    }

    pub fn non_boundary(&self) -> impl Iterator<Item = &KSubset> {
        self.sets.iter().filter(|s| !is_boundary(s))
    }

    /// Replaces `out` by `inn`, keeping canonical order.
    pub(crate) fn exchange(&self, out: &KSubset, inn: KSubset) -> Self {
        let mut sets: Vec<KSubset> = self.sets.iter().filter(|s| *s != out).copied().collect();
        let pos = sets.binary_search(&inn).unwrap_or_else(|p| p);
        if sets.get(pos) != Some(&inn) {
            sets.insert(pos, inn);
        }
        Self { k: self.k, n: self.n, sets }
    }

    pub fn insert(&self, s: KSubset) -> Result<Self> {
        Self::new(self.k, self.n, self.sets.iter().copied().chain([s]))
    }

    pub fn is_compatible(&self, s: &KSubset) -> bool {
        self.sets.iter().all(|t| weakly_separated(s, t))
    }

    pub fn transformed(&self, g: &DihedralElement) -> Self {
        let mut sets: Vec<KSubset> = self.sets.iter().map(|s| g.apply(s)).collect();
        sets.sort_unstable();
        Self { k: self.k, n: self.n, sets }
    }

    /// Pairwise weak separation only.
    pub fn is_weakly_separated(&self) -> bool {
        self.first_crossing().is_none()
    }

    fn first_crossing(&self) -> Option<(KSubset, KSubset)> {
        for (a, s) in self.sets.iter().enumerate() {
            for t in &self.sets[a + 1..] {
                if !weakly_separated(s, t) {
                    return Some((*s, *t));
                }
            }
        }
        None
    }

    /// Some `k`-subset that could still be added, if any.
    pub fn addable(&self) -> Option<KSubset> {
        k_subsets(self.k, self.n).find(|s| !self.contains(s) && self.is_compatible(s))
    }

    pub fn is_maximal(&self) -> bool {
        self.is_weakly_separated() && self.addable().is_none()
    }

    pub fn to_json(&self) -> CollectionJson {
        CollectionJson {
            k: self.k,
            n: self.n,
            sets: self.sets.iter().map(|s| s.iter().map(u32::from).collect()).collect(),
        }
    }
}

impl fmt::Debug for WSCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{})[", self.k, self.n)?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// `{"k":3,"n":6,"sets":[[1,2,3],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionJson {
    pub k: u8,
    pub n: u8,
    pub sets: Vec<Vec<u32>>,
}

impl TryFrom<CollectionJson> for WSCollection {
    type Error = Error;

    fn try_from(j: CollectionJson) -> Result<Self> {
        let sets = j.sets.into_iter().map(|s| KSubset::new(j.n, s)).collect::<Result<Vec<_>>>()?;
        WSCollection::new(j.k, j.n, sets)
    }
}

impl Serialize for WSCollection {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Result of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub k: u8,
    pub n: u8,
    pub size: usize,
    pub expected_maximal_size: usize,
    /// Pairs that are not weakly separated.
    pub crossing_pairs: Vec<(KSubset, KSubset)>,
    pub weakly_separated: bool,
    /// Only meaningful when `weakly_separated`.
    pub maximal: bool,
    /// A witness against maximality.
    pub addable: Option<KSubset>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.weakly_separated
    }
}

pub fn validate(c: &WSCollection) -> ValidationReport {
    let mut crossing = Vec::new();
    for (a, s) in c.sets.iter().enumerate() {
        for t in &c.sets[a + 1..] {
            if !weakly_separated(s, t) {
                crossing.push((*s, *t));
            }
        }
    }
    let ws = crossing.is_empty();
    let addable = if ws { c.addable() } else { None };
    ValidationReport {
        k: c.k,
        n: c.n,
        size: c.len(),
        expected_maximal_size: pure_size(c.k, c.n),
        weakly_separated: ws,
        maximal: ws && addable.is_none(),
        crossing_pairs: crossing,
        addable,
    }
}

fn require_valid(c: &WSCollection) -> Result<()> {
    match c.first_crossing() {
        Some((a, b)) => Err(Error::NotWeaklySeparated(a, b)),
        None => Ok(()),
    }
}

/// Greedy completion scanning candidates in the given order.
pub fn complete_in_order(c: &WSCollection, order: &[KSubset]) -> Result<WSCollection> {
    require_valid(c)?;
    let mut sets = c.sets.clone();
    for s in order {
        if s.len() == c.k as usize && !sets.contains(s) && sets.iter().all(|t| weakly_separated(s, t)) {
            sets.push(*s);
        }
    }
    WSCollection::new(c.k, c.n, sets)
}

/// Greedy completion in lexicographic order; deterministic.
pub fn complete_to_maximal(c: &WSCollection) -> Result<WSCollection> {
    let order: Vec<KSubset> = k_subsets(c.k, c.n).collect();
    complete_in_order(c, &order)
}

/// Greedy completion over a random permutation of all `k`-subsets.
pub fn complete_randomly<R: Rng + ?Sized>(c: &WSCollection, rng: &mut R) -> Result<WSCollection> {
    let mut order: Vec<KSubset> = k_subsets(c.k, c.n).collect();
    order.shuffle(rng);
    complete_in_order(c, &order)
}

/// The base collection `A_n`: boundary sets together with
/// `[1..i] ⊔ [j..k+j-i-1]` for `1 <= i < k`, `i+1 < j <= n+i-k`.
pub fn base_collection(k: u8, n: u8) -> Result<WSCollection> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("base collection needs 1 <= k < n, got k={k}, n={n}")));
    }
    let mut sets = boundary_sets(k, n);
    for i in 1..k {
        for j in (i + 2)..=(n + i - k) {
            let head = KSubset::initial(i, n);
            let tail = KSubset::interval(j, k + j - i - 1, n);
            sets.push(head.union(&tail));
        }
    }
    WSCollection::new(k, n, sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn ks(n: u8, e: &[u8]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = WSCollection::from_lists(2, 5, &[[2, 4], [1, 3], [1, 3]]).unwrap();
        let b = WSCollection::from_lists(2, 5, &[[1, 3], [2, 4]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert!(WSCollection::from_lists(2, 5, &[vec![1u8]]).is_err());
        assert!(WSCollection::from_lists(2, 5, &[[1, 6]]).is_err());
    }

    #[test]
    fn completion_of_empty_square() {
        let c = complete_to_maximal(&WSCollection::empty(2, 4).unwrap()).unwrap();
        let expected = WSCollection::from_lists(2, 4, &[[1, 2], [1, 3], [1, 4], [2, 3], [3, 4]]).unwrap();
        assert_eq!(c, expected);
        assert!(c.is_maximal());
        assert_eq!(complete_to_maximal(&c).unwrap(), c);
    }

    #[test]
    fn validate_names_the_crossing_pair() {
        let c = WSCollection::from_lists(2, 4, &[[1, 3], [2, 4]]).unwrap();
        let report = validate(&c);
        assert!(!report.is_valid());
        assert_eq!(report.crossing_pairs, vec![(ks(4, &[1, 3]), ks(4, &[2, 4]))]);
        assert!(matches!(complete_to_maximal(&c), Err(Error::NotWeaklySeparated(..))));
    }

    #[test]
    fn base_collection_examples() {
        let a = base_collection(3, 6).unwrap();
        let nb: Vec<String> = a.non_boundary().map(|s| s.to_string()).collect();
        assert_eq!(nb, vec!["1,2,4", "1,2,5", "1,3,4", "1,4,5"]);
        assert_eq!(a.len(), 10);
        let fan = base_collection(2, 7).unwrap();
        let nb: Vec<String> = fan.non_boundary().map(|s| s.to_string()).collect();
        assert_eq!(nb, vec!["1,3", "1,4", "1,5", "1,6"]);
    }

    #[test]
    fn base_collection_is_maximal_of_pure_size() {
        for n in 2..=9u8 {
            for k in 1..n {
                let a = base_collection(k, n).unwrap();
                assert_eq!(a.len(), pure_size(k, n), "k={k} n={n}");
                assert!(a.is_maximal(), "k={k} n={n}");
            }
        }
        assert!(base_collection(3, 3).is_err());
    }

    #[test]
    fn random_completions_contain_the_boundary() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..20 {
            let c = complete_randomly(&WSCollection::empty(3, 7).unwrap(), &mut rng).unwrap();
            assert!(c.is_maximal());
            for b in boundary_sets(3, 7) {
                assert!(c.contains(&b));
            }
        }
    }

    #[test]
    fn json_shape() {
        let c = WSCollection::from_lists(2, 4, &[[1, 2], [1, 3]]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"k":2,"n":4,"sets":[[1,2],[1,3]]}"#);
        let back: CollectionJson = serde_json::from_str(&s).unwrap();
        assert_eq!(WSCollection::try_from(back).unwrap(), c);
    }
}
