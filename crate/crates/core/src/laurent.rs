//! Exact Laurent polynomials in `q` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Element of `Z[q, q^-1]`, stored sparsely with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentInt {
    terms: BTreeMap<i32, i64>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `(-q)^e`.
    pub fn neg_q_pow(e: i32) -> Self {
        Self::monomial(if e.rem_euclid(2) == 0 { 1 } else { -1 }, e)
    }

    /// `q - q^-1`.
    pub fn q_minus_q_inv() -> Self {
        let mut t = Self::q_pow(1);
        t.add_term(-1, -1);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, c: i64, e: i32) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&d, &c)| (d + e, c)).collect() }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `Some((c, e))` when this is the single term `c * q^e`.
    pub fn as_monomial(&self) -> Option<(i64, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, &c)| (c, e))
        } else {
            None
        }
    }

    /// The `e` with `other = q^e * self`, if any.
    pub fn shift_to(&self, other: &Self) -> Option<i32> {
        let e = other.min_degree()? - self.min_degree()?;
        (self.shift(e) == *other).then_some(e)
    }
}

impl From<i64> for LaurentInt {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        for (&e, &c) in &rhs.terms {
            self.add_term(c, e);
        }
    }
}

impl Add for &LaurentInt {
    type Output = LaurentInt;

    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;

    fn neg(self) -> LaurentInt {
        LaurentInt { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Sub for &LaurentInt {
    type Output = LaurentInt;

    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        self + &(-rhs)
    }
}

impl Mul for &LaurentInt {
    type Output = LaurentInt;

    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = LaurentInt::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentInt {
    /// Descending powers, e.g. `q^2 - 1 + q^-2` or `2*q - 3*q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            match (idx, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let power = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            match (mag, power.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => f.write_str(&power)?,
                (_, false) => write!(f, "{mag}*{power}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}
