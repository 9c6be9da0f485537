use std::collections::BTreeMap;

use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasiminor::laurent::LaurentInt;
use quasiminor::ncpoly::{Gen, NCPoly, Word};
use quasiminor::oracle::{plucker_realize, quantum_minor, quasi_commutation_exponent, verify_embedding};
use quasiminor::subset::{all_minors, KSubset, MinorIndex};

fn x(r: u8, c: u8) -> Gen {
    Gen::new(r, c)
}

fn word(k: u8, m: u8, w: &[Gen]) -> NCPoly {
    NCPoly::normalize(k, m, w, &LaurentInt::one()).unwrap()
}

fn term(k: u8, m: u8, w: &[Gen], c: LaurentInt) -> NCPoly {
    NCPoly::normalize(k, m, w, &c).unwrap()
}

#[test]
fn defining_relations() {
    assert_eq!(word(2, 2, &[x(1, 2), x(1, 1)]), term(2, 2, &[x(1, 1), x(1, 2)], LaurentInt::q_pow(1)));
    assert_eq!(word(2, 2, &[x(2, 1), x(1, 1)]), term(2, 2, &[x(1, 1), x(2, 1)], LaurentInt::q_pow(1)));
    assert_eq!(word(2, 2, &[x(2, 1), x(1, 2)]), word(2, 2, &[x(1, 2), x(2, 1)]));
    let cross = word(2, 2, &[x(1, 1), x(2, 2)])
        .add(&term(2, 2, &[x(1, 2), x(2, 1)], LaurentInt::q_minus_q_inv()))
        .unwrap();
    assert_eq!(word(2, 2, &[x(2, 2), x(1, 1)]), cross);
}

#[test]
fn minor_expansions() {
    let mi = |a: &[u8], b: &[u8]| quantum_minor(&MinorIndex::from_slices(a, b, 2, 3).unwrap());
    let minus_q_inv = LaurentInt::monomial(-1, -1);
    let want = word(2, 3, &[x(1, 1), x(2, 2)]).add(&term(2, 3, &[x(1, 2), x(2, 1)], minus_q_inv.clone())).unwrap();
    assert_eq!(mi(&[1, 2], &[1, 2]), want);
    let want = word(2, 3, &[x(1, 1), x(2, 3)]).add(&term(2, 3, &[x(1, 3), x(2, 1)], minus_q_inv)).unwrap();
    assert_eq!(mi(&[1, 2], &[1, 3]), want);
    let p = plucker_realize(&KSubset::new(4, [1u8, 2]).unwrap(), 2, 4).unwrap();
    assert_eq!(p.len(), 2);
}

fn sign(perm: &[usize]) -> i64 {
    let inv = (0..perm.len()).tuple_combinations().filter(|&(i, j)| perm[i] > perm[j]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Leibniz expansion with commuting variables.
fn classical_minor(mi: &MinorIndex) -> BTreeMap<Word, i64> {
    let rows = mi.rows().to_vec();
    let cols = mi.cols().to_vec();
    let mut out = BTreeMap::new();
    for perm in (0..rows.len()).permutations(rows.len()) {
        let mut w: Word = rows.iter().zip(&perm).map(|(&r, &p)| x(r, cols[p])).collect();
        w.sort();
        *out.entry(w).or_insert(0) += sign(&perm);
    }
    out
}

#[test]
fn minors_specialize_to_determinants() {
    for (k, m) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        for mi in all_minors(k, m, 1..=k.min(m)) {
            let shadow: BTreeMap<Word, i64> = quantum_minor(&mi)
                .at_q_one()
                .into_iter()
                .map(|(mut w, c)| {
                    w.sort();
                    (w, c)
                })
                .collect();
            assert_eq!(shadow, classical_minor(&mi), "{mi:?}");
        }
    }
}

#[test]
fn exponent_examples() {
    let mi = |a: &[u8], b: &[u8]| quantum_minor(&MinorIndex::from_slices(a, b, 2, 2).unwrap());
    assert_eq!(quasi_commutation_exponent(&mi(&[1], &[1]), &mi(&[1], &[2])).unwrap(), Some(1));
    assert_eq!(quasi_commutation_exponent(&mi(&[1], &[1]), &mi(&[2], &[2])).unwrap(), None);
    let p = |e: [u8; 2]| plucker_realize(&KSubset::new(4, e).unwrap(), 2, 4).unwrap();
    assert_eq!(quasi_commutation_exponent(&p([1, 2]), &p([3, 4])).unwrap(), Some(2));
    assert_eq!(quasi_commutation_exponent(&p([1, 3]), &p([2, 4])).unwrap(), None);
}

#[test]
fn square_embedding() {
    let c = verify_embedding(&MinorIndex::from_slices(&[1, 2], &[1, 2], 2, 2).unwrap()).unwrap();
    assert!(c.holds());
}

fn gen_word(k: u8, m: u8, len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((1..=k, 1..=m).prop_map(|(r, c)| Gen::new(r, c)), 0..=len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_independent_of_rewrite_order(w in gen_word(2, 3, 6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random_pick = move |choices: &[usize]| rng.gen_range(0..choices.len());
        let a = NCPoly::normalize(2, 3, &w, &LaurentInt::one()).unwrap();
        let b = NCPoly::normalize_with(2, 3, &w, &LaurentInt::one(), random_pick).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn multiplication_is_associative(a in gen_word(2, 2, 3), b in gen_word(2, 2, 3), c in gen_word(2, 2, 3)) {
        let (a, b, c) = (word(2, 2, &a), word(2, 2, &b), word(2, 2, &c));
        prop_assert_eq!(a.multiply(&b).unwrap().multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
    }
}
