//! Positive points of the Grassmannian and propagation of Plücker values
//! along (2,4)-moves with the three-term relation
//! `Δ(Iij) Δ(Ist) = Δ(Iis) Δ(Ijt) + Δ(Iit) Δ(Isj)`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::collection::WSCollection;
use crate::error::{Error, Result};
use crate::moves::find_moves;
use crate::subset::{k_subsets, KSubset};

/// Field elements usable for evaluation: exact rationals or `f64`.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }
    /// Equality for exact types, relative tolerance for floats.
    fn agrees(&self, other: &Self) -> bool;
    fn to_text(&self) -> String;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn agrees(&self, other: &Self) -> bool {
        self == other
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Relative tolerance of float mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn agrees(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs()).max(f64::MIN_POSITIVE);
        (self - other).abs() <= FLOAT_TOLERANCE * scale
    }
    fn to_text(&self) -> String {
        format!("{self:e}")
    }
}

/// A `k x n` matrix representing a point of the Grassmannian.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannPoint<T> {
    k: u8,
    n: u8,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> GrassmannPoint<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if k == 0 || k > n || n > 64 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("matrix rows must share a length n >= k, got {k} rows")));
        }
        let p = Self { k: k as u8, n: n as u8, rows };
        if k_subsets(p.k, p.n).all(|s| p.minor(&s).is_zero()) {
            return Err(Error::Precondition("matrix does not have full rank".into()));
        }
        Ok(p)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// Maximal minor on the columns of `cols`.
    pub fn minor(&self, cols: &KSubset) -> T {
        let idx: Vec<usize> = cols.iter().map(|c| c as usize - 1).collect();
        let mut m: Vec<Vec<T>> = self.rows.iter().map(|r| idx.iter().map(|&c| r[c].clone()).collect()).collect();
        determinant(&mut m)
    }

    /// Every Plücker coordinate.
    pub fn plucker_vector(&self) -> BTreeMap<KSubset, T> {
        k_subsets(self.k, self.n).map(|s| (s, self.minor(&s))).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GrassmannPoint<U> {
        GrassmannPoint { k: self.k, n: self.n, rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }
}

fn abs_of<T: Scalar>(x: &T) -> T {
    if *x < T::zero() {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Gaussian elimination with partial pivoting; consumes `m`.
fn determinant<T: Scalar>(m: &mut [Vec<T>]) -> T {
    let size = m.len();
    let mut det = T::one();
    for col in 0..size {
        let pivot = (col..size)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&a, &b| abs_of(&m[a][col]).partial_cmp(&abs_of(&m[b][col])).expect("comparable"));
        let Some(p) = pivot else {
            return T::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = det * pv.clone();
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pv.clone();
            let (upper, lower) = m.split_at_mut(r);
            for (x, p) in lower[0][col..size].iter_mut().zip(&upper[col][col..size]) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
    }
    det
}

/// Matrix with entries `x_j^(i-1)`; every maximal minor is a positive
/// Vandermonde determinant when `0 < x_1 < ... < x_n`.
pub fn vandermonde_point(nodes: &[BigRational], k: u8) -> Result<GrassmannPoint<BigRational>> {
    if nodes.is_empty() || k == 0 || k as usize > nodes.len() {
        return Err(Error::Dimension(format!("need 1 <= k <= {} nodes, got k = {k}", nodes.len())));
    }
    if nodes.iter().any(|x| !Scalar::is_positive(x)) {
        return Err(Error::Precondition("nodes must be positive".into()));
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("nodes must be distinct and increasing".into()));
    }
    let rows = (0..k as i32).map(|i| nodes.iter().map(|x| x.pow(i)).collect()).collect();
    GrassmannPoint::new(rows)
}

/// Integer nodes as rationals.
pub fn integer_nodes(xs: &[i64]) -> Vec<BigRational> {
    xs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

pub fn to_f64_point(p: &GrassmannPoint<BigRational>) -> GrassmannPoint<f64> {
    p.map(|x| x.to_f64().expect("finite"))
}

/// One derivation: `added = (Δ(sides[0]) Δ(sides[2]) + Δ(sides[3]) Δ(sides[1])) / Δ(removed)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub added: KSubset,
    pub removed: KSubset,
    pub sides: [KSubset; 4],
}

/// Every move of the move graph reachable from a collection, in BFS order.
/// Depends only on the collection, so it can be reused across points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationPlan {
    pub start: WSCollection,
    pub steps: Vec<Step>,
}

impl PropagationPlan {
    pub fn new(c: &WSCollection) -> Result<Self> {
        if !(2..=3).contains(&c.k()) {
            return Err(Error::Unsupported(format!("propagation needs k in {{2,3}}, got k = {}", c.k())));
        }
        if !c.is_weakly_separated() {
            return Err(Error::Precondition("collection is not weakly separated".into()));
        }
        if let Some(s) = c.addable() {
            return Err(Error::NotMaximal(s));
        }
        let mut seen = HashSet::from([c.clone()]);
        let mut queue = VecDeque::from([c.clone()]);
        let mut steps = Vec::new();
        while let Some(cur) = queue.pop_front() {
            for mv in find_moves(&cur) {
                steps.push(Step { added: mv.added(), removed: mv.removed(), sides: mv.sides() });
                let next = cur.exchange(&mv.removed(), mv.added());
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(Self { start: c.clone(), steps })
    }

    /// Runs the plan on values given on the start collection.
    pub fn run<T: Scalar>(&self, vals: &BTreeMap<KSubset, T>) -> Result<Propagation<T>> {
        for s in self.start.sets() {
            match vals.get(s) {
                None => return Err(Error::Precondition(format!("no value for {s}"))),
                Some(v) if !v.is_positive() => {
                    return Err(Error::Precondition(format!("value {} at {s} is not positive", v.to_text())))
                }
                Some(_) => {}
            }
        }
        let mut known: BTreeMap<KSubset, T> =
            self.start.sets().iter().map(|s| (*s, vals[s].clone())).collect();
        let mut rederived = 0;
        for st in &self.steps {
            let get = |s: &KSubset| known.get(s).cloned().expect("BFS order");
            let denom = get(&st.removed);
            if denom.is_zero() {
                return Ok(Propagation::Failed { witness: st.removed, reason: FailureReason::ZeroDivision });
            }
            let [a, b, c, d] = st.sides.map(|s| get(&s));
            let value = (a * c + d * b) / denom;
            match known.get(&st.added) {
                Some(old) if !old.agrees(&value) => {
                    return Ok(Propagation::Failed { witness: st.added, reason: FailureReason::Inconsistent });
                }
                Some(_) => rederived += 1,
                None => {
                    known.insert(st.added, value);
                }
            }
        }
        Ok(Propagation::Complete { values: known, rederived })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    ZeroDivision,
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Propagation<T> {
    /// Values on every set reached, and how many derivations were
    /// cross-checked against an earlier value.
    Complete { values: BTreeMap<KSubset, T>, rederived: usize },
    Failed { witness: KSubset, reason: FailureReason },
}

pub fn propagate<T: Scalar>(c: &WSCollection, vals: &BTreeMap<KSubset, T>) -> Result<Propagation<T>> {
    PropagationPlan::new(c)?.run(vals)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<T> {
    Positive(BTreeMap<KSubset, T>),
    NotDetermined { witness: KSubset, reason: String },
}

impl<T> Verdict<T> {
    pub fn is_positive(&self) -> bool {
        matches!(self, Verdict::Positive(_))
    }
}

pub fn positivity_test<T: Scalar>(c: &WSCollection, vals: &BTreeMap<KSubset, T>) -> Result<Verdict<T>> {
    let total = k_subsets(c.k(), c.n()).count();
    match propagate(c, vals)? {
        Propagation::Failed { witness, reason } => {
            Ok(Verdict::NotDetermined { witness, reason: format!("{reason:?}") })
        }
        Propagation::Complete { values, .. } => {
            if let Some(missing) = k_subsets(c.k(), c.n()).find(|s| !values.contains_key(s)) {
                return Ok(Verdict::NotDetermined { witness: missing, reason: "unreached".into() });
            }
            if let Some((s, _)) = values.iter().find(|(_, v)| !v.is_positive()) {
                return Ok(Verdict::NotDetermined { witness: *s, reason: "non-positive".into() });
            }
            debug_assert_eq!(values.len(), total);
            Ok(Verdict::Positive(values))
        }
    }
}

/// Restriction of a full vector to the sets of `c`.
pub fn restrict<T: Clone>(vals: &BTreeMap<KSubset, T>, c: &WSCollection) -> BTreeMap<KSubset, T> {
    c.sets().iter().filter_map(|s| vals.get(s).map(|v| (*s, v.clone()))).collect()
}

/// `{"[1,3]": "2", ...}` with rational strings such as `"7/2"`.
pub fn values_to_json(vals: &BTreeMap<KSubset, BigRational>) -> serde_json::Value {
    let map = vals.iter().map(|(s, v)| (format!("[{s}]"), serde_json::Value::String(v.to_string()))).collect();
    serde_json::Value::Object(map)
}

pub fn values_from_json(v: &serde_json::Value, n: u8) -> Result<BTreeMap<KSubset, BigRational>> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("values must be a JSON object".into()))?;
    let mut out = BTreeMap::new();
    for (key, val) in obj {
        let inner = key
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad key {key:?}")))?;
        let set = KSubset::parse(inner, n)?;
        let text = match val {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(x) => x.to_string(),
            other => return Err(Error::Parse(format!("bad value {other}"))),
        };
        let q: BigRational = text.trim().parse().map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
        out.insert(set, q);
    }
    Ok(out)
}
