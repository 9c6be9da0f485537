//! Shuffled reduced words for `(w0, w0)` in `S_k x S_m`, their double wiring
//! arrangements, chamber labels and the maximal collections they induce.

use std::fmt;

use serde::Serialize;

use crate::collection::WSCollection;
use crate::dihedral::{boundary_sets, is_boundary};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::separation::{precedes, stieffel_subset};
use crate::subset::{KSubset, MinorIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Crossing of black wires at level `i`, `1 <= i <= m-1`.
    Black(u8),
    /// Crossing of red wires at level `j`, `1 <= j <= k-1`.
    Red(u8),
}

impl Letter {
    pub fn level(&self) -> u8 {
        match *self {
            Letter::Black(i) | Letter::Red(i) => i,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Black(i) => write!(f, "{i}"),
            Letter::Red(j) => write!(f, "{j}r"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    k: u8,
    m: u8,
    letters: Vec<Letter>,
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

impl ReducedWord {
    /// Checks letter bounds only; see [`validate_word`].
    pub fn new(k: u8, m: u8, letters: Vec<Letter>) -> Result<Self> {
        if k == 0 || m == 0 || k as usize + m as usize > 64 {
            return Err(Error::Precondition(format!("bad dimensions k={k}, m={m}")));
        }
        for l in &letters {
            let ok = match *l {
                Letter::Black(i) => (1..m).contains(&i),
                Letter::Red(j) => (1..k).contains(&j),
            };
            if !ok {
                return Err(Error::Parse(format!("letter {l} out of range for k={k}, m={m}")));
            }
        }
        Ok(Self { k, m, letters })
    }

    /// Whitespace separated tokens, red letters suffixed with `r`.
    pub fn parse(s: &str, k: u8, m: u8) -> Result<Self> {
        Self::new(k, m, parse_letters(s)?)
    }

    /// Parses with `k` and `m` read off the largest letters, which is exact
    /// for words of the longest elements.
    pub fn parse_inferred(s: &str) -> Result<Self> {
        let letters = parse_letters(s)?;
        let top = |red: bool| {
            letters
                .iter()
                .filter_map(|l| match (*l, red) {
                    (Letter::Black(i), false) | (Letter::Red(i), true) => Some(i),
                    _ => None,
                })
                .max()
                .map_or(1, |i| i.saturating_add(1))
        };
        Self::new(top(true), top(false), letters)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn black(&self) -> Vec<u8> {
        self.letters.iter().filter_map(|l| if let Letter::Black(i) = l { Some(*i) } else { None }).collect()
    }

    pub fn red(&self) -> Vec<u8> {
        self.letters.iter().filter_map(|l| if let Letter::Red(j) = l { Some(*j) } else { None }).collect()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.split_whitespace()
        .map(|tok| {
            let (num, red) = match tok.strip_suffix('r') {
                Some(rest) => (rest, true),
                None => (tok, false),
            };
            let v: u8 = num.parse().map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?;
            Ok(if red { Letter::Red(v) } else { Letter::Black(v) })
        })
        .collect()
}

/// Whether `word` is a reduced word for the longest element of `S_size`.
fn is_longest_word(word: &[u8], size: u8) -> bool {
    if word.len() != choose2(size as usize) {
        return false;
    }
    let mut perm: Vec<u8> = (1..=size).collect();
    for &i in word {
        let i = i as usize;
        if i == 0 || i >= perm.len() || perm[i - 1] > perm[i] {
            return false;
        }
        perm.swap(i - 1, i);
    }
    true
}

/// Both the black and the red subword are reduced words of longest elements.
pub fn validate_word(w: &ReducedWord) -> bool {
    is_longest_word(&w.black(), w.m) && is_longest_word(&w.red(), w.k)
}

/// Valid, `k <= m`, and only `C(m-k, 2)` black letters lie in `[k+1..m-1]`.
pub fn is_optimal(w: &ReducedWord) -> bool {
    if !validate_word(w) || w.k > w.m {
        return false;
    }
    let high = w.black().iter().filter(|&&i| i > w.k).count();
    high == choose2((w.m - w.k) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub level: u8,
    /// Closed interval of gap positions; gap `p` lies after `p` letters.
    pub span: (usize, usize),
    /// Red labels beneath the chamber.
    #[serde(rename = "I")]
    pub red: Vec<u8>,
    /// Black labels beneath the chamber.
    #[serde(rename = "J")]
    pub black: Vec<u8>,
}

/// Chambers of levels `1..=k`, by level and then left to right.
pub fn chambers(w: &ReducedWord) -> Result<Vec<Chamber>> {
    if !validate_word(w) {
        return Err(Error::Precondition(format!("{w} is not a reduced word of (w0, w0)")));
    }
    if w.k > w.m {
        return Err(Error::Unsupported(format!("k = {} exceeds m = {}", w.k, w.m)));
    }
    let len = w.letters.len();
    // black occupancy after each prefix, labels fixed at the left end
    let mut black = Vec::with_capacity(len + 1);
    let mut cur: Vec<u8> = (1..=w.m).collect();
    black.push(cur.clone());
    for l in &w.letters {
        if let Letter::Black(i) = *l {
            cur.swap(i as usize - 1, i as usize);
        }
        black.push(cur.clone());
    }
    // red occupancy, labels fixed at the right end
    let mut red = vec![Vec::new(); len + 1];
    let mut cur: Vec<u8> = (1..=w.k).collect();
    red[len] = cur.clone();
    for (p, l) in w.letters.iter().enumerate().rev() {
        if let Letter::Red(j) = *l {
            cur.swap(j as usize - 1, j as usize);
        }
        red[p] = cur.clone();
    }
    let sorted_prefix = |v: &[u8], h: u8| {
        let mut s = v[..h as usize].to_vec();
        s.sort_unstable();
        s
    };
    let mut out = Vec::new();
    for h in 1..=w.k {
        let mut start = 0;
        let cuts = w.letters.iter().enumerate().filter(|(_, l)| l.level() == h).map(|(p, _)| p + 1);
        for end in cuts.chain(std::iter::once(len + 1)) {
            out.push(Chamber {
                level: h,
                span: (start, end - 1),
                red: sorted_prefix(&red[start], h),
                black: sorted_prefix(&black[start], h),
            });
            start = end;
        }
    }
    Ok(out)
}

fn chamber_minor(w: &ReducedWord, c: &Chamber) -> Result<MinorIndex> {
    MinorIndex::from_slices(&c.red, &c.black, w.k, w.m)
}

/// `{S(I(C), J(C))} ∪ {[1..k]}` inside `[1..k+m]`.
pub fn word_collection(w: &ReducedWord) -> Result<WSCollection> {
    if !is_optimal(w) {
        return Err(Error::Precondition(format!("{w} is not optimal")));
    }
    let n = w.k + w.m;
    let mut sets = vec![KSubset::initial(w.k, n)];
    for c in chambers(w)? {
        sets.push(stieffel_subset(&chamber_minor(w, &c)?));
    }
    WSCollection::new(w.k, n, sets)
}

/// Whether two chamber minors satisfy `A-I ≺ I-A, J-B ≺ B-J` or the
/// mirrored condition.
pub fn opposite_order_condition(p: &MinorIndex, r: &MinorIndex) -> bool {
    let (a, b, i, j) = (p.rows(), p.cols(), r.rows(), r.cols());
    let first = precedes(&a.difference(&i), &i.difference(&a)) && precedes(&j.difference(&b), &b.difference(&j));
    let second = precedes(&i.difference(&a), &a.difference(&i)) && precedes(&b.difference(&j), &j.difference(&b));
    first || second
}

/// The minors `Δ_{I(C),J(C)}` of every chamber.
pub fn chamber_minors(w: &ReducedWord) -> Result<Vec<MinorIndex>> {
    chambers(w)?.iter().map(|c| chamber_minor(w, c)).collect()
}

/// Every reduced word of the longest element of `S_size`, lexicographically.
pub fn longest_words(size: u8) -> Vec<Vec<u8>> {
    fn go(perm: &mut Vec<u8>, word: &mut Vec<u8>, target: usize, out: &mut Vec<Vec<u8>>) {
        if word.len() == target {
            out.push(word.clone());
            return;
        }
        for i in 1..perm.len() {
            if perm[i - 1] < perm[i] {
                perm.swap(i - 1, i);
                word.push(i as u8);
                go(perm, word, target, out);
                word.pop();
                perm.swap(i - 1, i);
            }
        }
    }
    let mut out = Vec::new();
    let mut perm: Vec<u8> = (1..=size.max(1)).collect();
    go(&mut perm, &mut Vec::new(), choose2(size as usize), &mut out);
    out
}

/// All interleavings of a black and a red word.
fn shuffles(black: &[u8], red: &[u8]) -> Vec<Vec<Letter>> {
    fn go(black: &[u8], red: &[u8], cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if black.is_empty() && red.is_empty() {
            out.push(cur.clone());
            return;
        }
        if let Some((&b, rest)) = black.split_first() {
            cur.push(Letter::Black(b));
            go(rest, red, cur, out);
            cur.pop();
        }
        if let Some((&r, rest)) = red.split_first() {
            cur.push(Letter::Red(r));
            go(black, rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(black, red, &mut Vec::new(), &mut out);
    out
}

/// Every shuffled reduced word of `(w0, w0)` in `S_k x S_m`.
pub fn all_reduced_words(k: u8, m: u8) -> Vec<ReducedWord> {
    let reds = longest_words(k);
    let mut out = Vec::new();
    for b in longest_words(m) {
        for r in &reds {
            for letters in shuffles(&b, r) {
                out.push(ReducedWord { k, m, letters });
            }
        }
    }
    out
}

pub fn optimal_words(k: u8, m: u8) -> Vec<ReducedWord> {
    all_reduced_words(k, m).into_iter().filter(is_optimal).collect()
}

/// Distinct collections of all optimal words, sorted.
pub fn all_word_collections(k: u8, m: u8, exec: Execution) -> Result<Vec<WSCollection>> {
    let words = optimal_words(k, m);
    let mut cs = exec::map(exec, &words, word_collection).into_iter().collect::<Result<Vec<_>>>()?;
    cs.sort_unstable();
    cs.dedup();
    Ok(cs)
}

/// For a triangulation: some polygon side `e` such that no chord separates
/// `e` from another side `f` while avoiding the endpoints of both.
pub fn is_wiring_parametrizable(c: &WSCollection) -> Result<bool> {
    if c.k() != 2 {
        return Err(Error::Unsupported(format!("defined for k = 2, got k = {}", c.k())));
    }
    let edges = boundary_sets(2, c.n());
    let chords: Vec<(u8, u8)> = c
        .sets()
        .iter()
        .filter(|s| !is_boundary(s))
        .map(|s| (s.min_elem().expect("2-set"), s.max_elem().expect("2-set")))
        .collect();
    let inside = |(a, b): (u8, u8), e: &KSubset| e.iter().all(|x| a < x && x < b);
    let separated = |e: &KSubset, f: &KSubset| {
        chords.iter().any(|&(a, b)| {
            let chord = KSubset::new(c.n(), [a, b]).expect("in range");
            chord.intersection(e).is_empty()
                && chord.intersection(f).is_empty()
                && inside((a, b), e) != inside((a, b), f)
        })
    };
    Ok(edges.iter().any(|e| edges.iter().all(|f| f == e || !separated(e, f))))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "2 1r 1 2 3 2r 2 1 4 1r 3 2 1";

    fn example() -> ReducedWord {
        ReducedWord::parse(EXAMPLE, 3, 5).unwrap()
    }

    fn labels(cs: &[Chamber], level: u8) -> Vec<(String, String)> {
        let s = |v: &[u8]| v.iter().map(|x| x.to_string()).collect::<String>();
        cs.iter().filter(|c| c.level == level).map(|c| (s(&c.red), s(&c.black))).collect()
    }

    #[test]
    fn example_word_is_valid_and_optimal() {
        let w = example();
        assert!(validate_word(&w) && is_optimal(&w));
        assert_eq!(w.to_string(), EXAMPLE);
        assert_eq!(ReducedWord::parse_inferred(EXAMPLE).unwrap(), w);
        assert!(!validate_word(&ReducedWord::parse("1 1", 1, 2).unwrap()));
        assert!(ReducedWord::parse("5", 3, 5).is_err());
    }

    #[test]
    fn example_chamber_labels() {
        let cs = chambers(&example()).unwrap();
        assert_eq!(cs.len(), 15);
        let pair = |a: &str, b: &str| (a.to_string(), b.to_string());
        assert_eq!(
            labels(&cs, 1),
            vec![pair("3", "1"), pair("2", "1"), pair("2", "3"), pair("2", "4"), pair("1", "4"), pair("1", "5")]
        );
        assert_eq!(labels(&cs, 3), vec![pair("123", "123"), pair("123", "234"), pair("123", "345")]);
        assert_eq!(cs[0].span, (0, 1));
        assert_eq!(cs[5].span, (13, 13));
    }

    #[test]
    fn example_collection() {
        let c = word_collection(&example()).unwrap();
        assert_eq!((c.k(), c.n(), c.len()), (3, 8, 16));
        assert!(c.is_maximal());
    }

    #[test]
    fn square_case_is_always_optimal() {
        for w in all_reduced_words(3, 3) {
            assert!(is_optimal(&w));
        }
        assert_eq!(longest_words(4).len(), 16);
    }

    #[test]
    fn parametrizability_of_fans_and_pentagons() {
        use crate::collection::base_collection;
        for n in 4..=8 {
            assert!(is_wiring_parametrizable(&base_collection(2, n).unwrap()).unwrap());
        }
        assert!(is_wiring_parametrizable(&base_collection(3, 6).unwrap()).is_err());
    }
}
