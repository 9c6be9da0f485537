//! Noncommutative polynomials in the generators `x[i,j]` of the quantum
//! matrix algebra, kept in the normal form where every monomial is a
//! non-decreasing word in the row-major order of the generators.
//!
//! Rewriting an adjacent out-of-order pair `x[s,t] x[i,j]`, `(s,t) > (i,j)`:
//!
//! | relation       | rewrite                                         |
//! |----------------|-------------------------------------------------|
//! | `s = i, t > j` | `q x[i,j] x[s,t]`                               |
//! | `s > i, t = j` | `q x[i,j] x[s,t]`                               |
//! | `s > i, t < j` | `x[i,j] x[s,t]`                                 |
//! | `s > i, t > j` | `x[i,j] x[s,t] + (q - q^-1) x[i,t] x[s,j]`      |

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentInt;

/// Generator `x[row, col]`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub row: u8,
    pub col: u8,
}

impl Gen {
    pub const fn new(row: u8, col: u8) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.row, self.col)
    }
}

pub type Word = Vec<Gen>;

/// Normal-form polynomial over a `k x m` quantum matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    k: u8,
    m: u8,
    terms: BTreeMap<Word, LaurentInt>,
}

fn add_into(map: &mut BTreeMap<Word, LaurentInt>, word: Word, coeff: &LaurentInt) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(word) {
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += coeff;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
        Entry::Vacant(slot) => {
            slot.insert(coeff.clone());
        }
    }
}

/// One rewrite step at position `p` (an inversion). Returns the replacement
/// words with their coefficient multipliers.
fn rewrite_at(word: &[Gen], p: usize) -> Vec<(Word, LaurentInt)> {
    let (a, b) = (word[p], word[p + 1]);
    debug_assert!(a > b);
    let (s, t, i, j) = (a.row, a.col, b.row, b.col);
    let mut swapped = word.to_vec();
    swapped.swap(p, p + 1);
    if s == i || t == j {
        vec![(swapped, LaurentInt::q_pow(1))]
    } else if t < j {
        vec![(swapped, LaurentInt::one())]
    } else {
        let mut cross = word.to_vec();
        cross[p] = Gen::new(i, t);
        cross[p + 1] = Gen::new(s, j);
        vec![(swapped, LaurentInt::one()), (cross, LaurentInt::q_minus_q_inv())]
    }
}

fn inversions(word: &[Gen]) -> Vec<usize> {
    (0..word.len().saturating_sub(1)).filter(|&p| word[p] > word[p + 1]).collect()
}

impl NCPoly {
    pub fn zero(k: u8, m: u8) -> Self {
        Self { k, m, terms: BTreeMap::new() }
    }

    pub fn one(k: u8, m: u8) -> Self {
        Self::scalar(k, m, LaurentInt::one())
    }

    pub fn scalar(k: u8, m: u8, c: LaurentInt) -> Self {
        let mut p = Self::zero(k, m);
        add_into(&mut p.terms, Vec::new(), &c);
        p
    }

    pub fn generator(k: u8, m: u8, g: Gen) -> Result<Self> {
        Self::normalize(k, m, &[g], &LaurentInt::one())
    }

    pub fn dims(&self) -> (u8, u8) {
        (self.k, self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[Gen]) -> LaurentInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    fn check_word(k: u8, m: u8, word: &[Gen]) -> Result<()> {
        match word.iter().find(|g| g.row == 0 || g.row > k || g.col == 0 || g.col > m) {
            Some(g) => Err(Error::GeneratorOutOfBounds { row: g.row, col: g.col, k, m }),
            None => Ok(()),
        }
    }

    /// Normal form of `coeff * word`, rewriting the leftmost inversion first.
    pub fn normalize(k: u8, m: u8, word: &[Gen], coeff: &LaurentInt) -> Result<Self> {
        Self::normalize_with(k, m, word, coeff, |_| 0)
    }

    /// Normal form with a caller-chosen rewrite order: `pick` receives the
    /// inversion positions of the current word and returns an index into them.
    pub fn normalize_with<F>(k: u8, m: u8, word: &[Gen], coeff: &LaurentInt, mut pick: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> usize,
    {
        Self::check_word(k, m, word)?;
        let mut out = Self::zero(k, m);
        let mut pending: BTreeMap<Word, LaurentInt> = BTreeMap::new();
        add_into(&mut pending, word.to_vec(), coeff);
        while let Some((w, c)) = pending.pop_last() {
            let inv = inversions(&w);
            if inv.is_empty() {
                add_into(&mut out.terms, w, &c);
                continue;
            }
            let p = inv[pick(&inv) % inv.len()];
            for (nw, mult) in rewrite_at(&w, p) {
                add_into(&mut pending, nw, &(&c * &mult));
            }
        }
        Ok(out)
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{} quantum matrix",
                self.k, self.m, other.k, other.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentInt::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = Self::zero(self.k, self.m);
        for (w, d) in &self.terms {
            add_into(&mut out.terms, w.clone(), &(d * c));
        }
        out
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: i32) -> Self {
        Self {
            k: self.k,
            m: self.m,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.shift(e))).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut out = Self::zero(self.k, self.m);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let part = Self::normalize(self.k, self.m, &w, &(c1 * c2))?;
                for (w, c) in part.terms {
                    add_into(&mut out.terms, w, &c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.k, self.m);
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Algebra map sending each generator `g` to `image(g)`; the images live
    /// in a `k x m` algebra given by `target`.
    pub fn substitute<F>(&self, target: (u8, u8), mut image: F) -> Result<Self>
    where
        F: FnMut(Gen) -> Result<Self>,
    {
        let mut out = Self::zero(target.0, target.1);
        let mut cache: BTreeMap<Gen, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            let mut term = Self::scalar(target.0, target.1, c.clone());
            for g in w {
                if !cache.contains_key(g) {
                    cache.insert(*g, image(*g)?);
                }
                term = term.multiply(&cache[g])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Commutative shadow at `q = 1`: sorted word to integer coefficient.
    pub fn at_q_one(&self) -> BTreeMap<Word, i64> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let v = c.at_one();
            if v != 0 {
                *out.entry(w.clone()).or_insert(0) += v;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

impl fmt::Display for NCPoly {
    /// Terms as `coeff * x[i,j] x[s,t] ...` in monomial order joined by `+`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if c.as_monomial().is_some() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})")?;
            }
            if !w.is_empty() {
                f.write_str(" *")?;
                for g in w {
                    write!(f, " {g}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{}x{}]({self})", self.k, self.m)
    }
}
