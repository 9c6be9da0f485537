use std::collections::BTreeSet;

use quasiminor::collection::{base_collection, pure_size, WSCollection};
use quasiminor::dihedral::DihedralElement;
use quasiminor::enumerate::enumerate;
use quasiminor::exec::Execution;
use quasiminor::subset::KSubset;
use quasiminor::wiring::{
    all_reduced_words, all_word_collections, chamber_minors, chambers, is_optimal, is_wiring_parametrizable,
    optimal_words, validate_word, word_collection, Letter, ReducedWord,
};

fn precedes(x: &KSubset, y: &KSubset) -> bool {
    x.iter().all(|a| y.iter().all(|b| a < b))
}

fn closure(cs: &[WSCollection]) -> BTreeSet<WSCollection> {
    cs.iter().flat_map(|c| DihedralElement::all(c.n()).map(move |g| c.transformed(&g))).collect()
}

#[test]
fn word_round_trip_and_validity() {
    let text = "2 1r 1 2 3 2r 2 1 4 1r 3 2 1";
    let w = ReducedWord::parse(text, 3, 5).unwrap();
    assert_eq!(w.to_string(), text);
    assert!(ReducedWord::parse("1 1r 9", 3, 5).is_err());
    assert!(!validate_word(&ReducedWord::parse("1 1", 2, 2).unwrap()));
    let cs = chambers(&w).unwrap();
    assert_eq!(cs.len(), 15);
    assert!(cs.iter().all(|c| c.red.len() == c.level as usize && c.black.len() == c.level as usize));
}

#[test]
fn optimal_words_give_maximal_collections() {
    for m in 1..=4u8 {
        for k in 1..=m {
            let words = optimal_words(k, m);
            assert!(!words.is_empty());
            let mut seen = BTreeSet::new();
            for w in &words {
                assert!(validate_word(w) && is_optimal(w));
                let c = word_collection(w).unwrap();
                assert_eq!(c.len(), (k * m) as usize + 1, "{w}");
                if seen.insert(c.clone()) {
                    assert!(c.is_maximal(), "{w}");
                    assert_eq!(c.len(), pure_size(k, k + m));
                }
            }
        }
    }
}

#[test]
fn chamber_minors_are_oppositely_ordered() {
    for (k, m) in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)] {
        for w in optimal_words(k, m) {
            let minors = chamber_minors(&w).unwrap();
            for p in &minors {
                for r in &minors {
                    let (a, b, i, j) = (p.rows(), p.cols(), r.rows(), r.cols());
                    let first = precedes(&a.difference(&i), &i.difference(&a))
                        && precedes(&j.difference(&b), &b.difference(&j));
                    let second = precedes(&i.difference(&a), &a.difference(&i))
                        && precedes(&b.difference(&j), &j.difference(&b));
                    assert!(first || second, "{w}: {p:?} {r:?}");
                }
            }
        }
    }
}

#[test]
fn labels_swap_under_the_mirrored_word() {
    // Reading the word backwards with the colours exchanged swaps the labels.
    for w in all_reduced_words(3, 3) {
        let letters = w
            .letters()
            .iter()
            .rev()
            .map(|l| match *l {
                Letter::Black(i) => Letter::Red(i),
                Letter::Red(i) => Letter::Black(i),
            })
            .collect();
        let swapped = ReducedWord::new(3, 3, letters).unwrap();
        let pairs = |w: &ReducedWord| -> BTreeSet<(Vec<u8>, Vec<u8>)> {
            chambers(w).unwrap().into_iter().map(|c| (c.red, c.black)).collect()
        };
        let flipped: BTreeSet<(Vec<u8>, Vec<u8>)> = pairs(&w).into_iter().map(|(r, b)| (b, r)).collect();
        assert_eq!(pairs(&swapped), flipped, "{w}");
    }
}

#[test]
fn square_words_close_to_w36() {
    let words = all_word_collections(3, 3, Execution::default()).unwrap();
    let w36: BTreeSet<WSCollection> = enumerate(3, 6, Execution::default()).unwrap().into_iter().collect();
    assert_eq!(closure(&words), w36);
}

#[test]
fn parametrizability_matches_word_collections() {
    for n in 4..=7u8 {
        let words = all_word_collections(2, n - 2, Execution::default()).unwrap();
        let from_words = closure(&words);
        for c in enumerate(2, n, Execution::default()).unwrap() {
            assert_eq!(is_wiring_parametrizable(&c).unwrap(), from_words.contains(&c), "{c:?}");
        }
    }
    for n in 4..=9 {
        assert!(is_wiring_parametrizable(&base_collection(2, n).unwrap()).unwrap());
    }
    for c in enumerate(2, 5, Execution::Sequential).unwrap() {
        assert!(is_wiring_parametrizable(&c).unwrap());
    }
}

#[test]
fn some_nonagon_triangulation_is_not_parametrizable() {
    let all = enumerate(2, 9, Execution::default()).unwrap();
    let witness = all.iter().find(|c| !is_wiring_parametrizable(c).unwrap()).expect("a witness exists");
    assert!(witness.is_maximal());
    assert_eq!(witness.non_boundary().count(), 6);
    let chords: Vec<String> = witness.non_boundary().map(|s| s.to_string()).collect();
    println!("non-parametrizable triangulation: {chords:?}");
}
