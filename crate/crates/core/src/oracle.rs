//! Symbolic checks inside the quantum matrix algebra: quantum minors,
//! quasi-commutation, realized quantum Plücker coordinates, the quantum
//! Grassmannian relations and the matrix-to-Grassmannian embedding.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::laurent::LaurentInt;
use crate::ncpoly::{Gen, NCPoly};
use crate::separation::stieffel_subset;
use crate::subset::{KSubset, MinorIndex};

/// Largest `k + m` accepted by [`verify_embedding`].
pub const EMBEDDING_BOUND: u8 = 6;

fn inversion_count(perm: &[usize]) -> i32 {
    let mut c = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                c += 1;
            }
        }
    }
    c
}

/// `Δ_{A,B} = Σ_σ (-q)^{-ℓ(σ)} x[a1, b_σ(1)] ... x[al, b_σ(l)]`.
pub fn quantum_minor(mi: &MinorIndex) -> NCPoly {
    let (k, m) = (mi.k(), mi.m());
    let rows = mi.rows().to_vec();
    let cols = mi.cols().to_vec();
    let l = rows.len();
    let mut out = NCPoly::zero(k, m);
    for perm in (0..l).permutations(l) {
        let word: Vec<Gen> = rows.iter().zip(&perm).map(|(&r, &p)| Gen::new(r, cols[p])).collect();
        let coeff = LaurentInt::neg_q_pow(-inversion_count(&perm));
        let term = NCPoly::normalize(k, m, &word, &coeff).expect("minor generators are in range");
        out = out.add(&term).expect("same dimensions");
    }
    out
}

/// The integer `c` with `R P = q^c P R`, or `None` when the two products are
/// not proportional by a power of `q`.
pub fn quasi_commutation_exponent(p: &NCPoly, r: &NCPoly) -> Result<Option<i32>> {
    if p.is_zero() || r.is_zero() {
        return Err(Error::ZeroInput);
    }
    let pr = p.multiply(r)?;
    let rp = r.multiply(p)?;
    if pr.len() != rp.len() {
        return Ok(None);
    }
    let Some((word, c0)) = pr.terms().next() else {
        return Ok(None);
    };
    let Some(e) = c0.shift_to(&rp.coeff(word)) else {
        return Ok(None);
    };
    Ok((pr.shift(e) == rp).then_some(e))
}

/// `Δ^K` realized as the maximal quantum minor on columns `K` of a generic
/// `k x n` quantum matrix.
pub fn plucker_realize(set: &KSubset, k: u8, n: u8) -> Result<NCPoly> {
    if set.len() != k as usize {
        return Err(Error::SizeMismatch { expected: k as usize, found: set.len() });
    }
    if set.ground() != n {
        return Err(Error::GroundSetMismatch { left: set.ground(), right: n });
    }
    let mi = MinorIndex::new(KSubset::initial(k, k), *set)?;
    Ok(quantum_minor(&mi))
}

/// `inv(i, X)`: elements of `X` below `i`.
fn inv(i: u8, x: &KSubset) -> i32 {
    x.count_below(i) as i32
}

/// Left-hand side of the quantum Grassmannian relation for a `(k+1)`-subset
/// `I` and a `(k-1)`-subset `J`, evaluated in the realization.
pub fn qplucker_relation(upper: &KSubset, lower: &KSubset, k: u8, n: u8) -> Result<NCPoly> {
    if upper.len() != k as usize + 1 {
        return Err(Error::SizeMismatch { expected: k as usize + 1, found: upper.len() });
    }
    if lower.len() + 1 != k as usize {
        return Err(Error::SizeMismatch { expected: k as usize - 1, found: lower.len() });
    }
    let mut total = NCPoly::zero(k, n);
    for i in upper.difference(lower).iter() {
        let left = plucker_realize(&upper.without(i), k, n)?;
        let right = plucker_realize(&lower.with(i), k, n)?;
        let sign = LaurentInt::neg_q_pow(inv(i, upper) - inv(i, lower));
        total = total.add(&left.multiply(&right)?.scale(&sign))?;
    }
    Ok(total)
}

pub fn verify_qplucker_relation(upper: &KSubset, lower: &KSubset, k: u8, n: u8) -> Result<bool> {
    Ok(qplucker_relation(upper, lower, k, n)?.is_zero())
}

/// Outcome of checking the embedding `x[i,j] -> Δ^{S({i},{j})}` on one minor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingCheck {
    /// Every pair of generator images satisfies the defining relations.
    pub relations_hold: bool,
    /// The image of the minor equals `q^{l(l-1)/2} Δ^{l-1} Δ^{S(A,B)}`.
    pub minor_matches: bool,
}

impl EmbeddingCheck {
    pub fn holds(&self) -> bool {
        self.relations_hold && self.minor_matches
    }
}

/// Image of the generator `x[i,j]` of `Mat(k x m)` inside `Mat(k x (k+m))`.
pub fn embed_generator(g: Gen, k: u8, m: u8) -> Result<NCPoly> {
    let mi = MinorIndex::new(KSubset::new(k, [g.row])?, KSubset::new(m, [g.col])?)?;
    plucker_realize(&stieffel_subset(&mi), k, k + m)
}

/// Image of an arbitrary polynomial of `Mat(k x m)` under the embedding.
pub fn embed(p: &NCPoly) -> Result<NCPoly> {
    let (k, m) = p.dims();
    p.substitute((k, k + m), |g| embed_generator(g, k, m))
}

/// Checks that the generator images satisfy the defining relations pairwise.
pub fn embedding_respects_relations(k: u8, m: u8) -> Result<bool> {
    let gens: Vec<Gen> = (1..=k).cartesian_product(1..=m).map(|(i, j)| Gen::new(i, j)).collect();
    for &a in &gens {
        for &b in &gens {
            let relation = NCPoly::normalize(k, m, &[a, b], &LaurentInt::one())?;
            let lhs = embed_generator(a, k, m)?.multiply(&embed_generator(b, k, m)?)?;
            if embed(&relation)? != lhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn verify_embedding(mi: &MinorIndex) -> Result<EmbeddingCheck> {
    let (k, m) = (mi.k(), mi.m());
    if k + m > EMBEDDING_BOUND {
        return Err(Error::Unsupported(format!("embedding check limited to k + m <= {EMBEDDING_BOUND}")));
    }
    let l = mi.order() as u32;
    let n = k + m;
    let lhs = embed(&quantum_minor(mi))?;
    let base = plucker_realize(&KSubset::initial(k, n), k, n)?;
    let rhs = base
        .pow(l - 1)?
        .multiply(&plucker_realize(&stieffel_subset(mi), k, n)?)?
        .shift((l * (l - 1) / 2) as i32);
    Ok(EmbeddingCheck { relations_hold: embedding_respects_relations(k, m)?, minor_matches: lhs == rhs })
}
