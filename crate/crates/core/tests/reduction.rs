use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasiminor::collection::{base_collection, complete_randomly, WSCollection};
use quasiminor::dihedral::{diameter, DihedralElement};
use quasiminor::enumerate::enumerate;
use quasiminor::error::Error;
use quasiminor::exec::Execution;
use quasiminor::reduction3::{f_set, generate_w3, lift, pinch_point, project};
use quasiminor::subset::KSubset;
use quasiminor::transitivity::{height, reduce_to_base};

fn ks(n: u8, e: &[u8]) -> KSubset {
    KSubset::new(n, e.iter().copied()).unwrap()
}

#[test]
fn lifting_sets_are_never_empty() {
    for n in 4..=7 {
        for c in enumerate(3, n, Execution::default()).unwrap() {
            let fs = f_set(&c).unwrap();
            assert!(!fs.is_empty(), "{c:?}");
            assert!(fs.iter().all(|&b| (2..n).contains(&b)));
            assert!(fs.iter().all(|&b| c.contains(&ks(n, &[1, b, n]))));
        }
    }
}

#[test]
fn every_collection_has_an_almost_boundary_set() {
    for n in 5..=8 {
        for c in enumerate(3, n, Execution::default()).unwrap() {
            assert!(c.sets().iter().any(|s| diameter(s) == 4), "{c:?}");
        }
    }
}

#[test]
fn some_translate_contains_the_near_boundary_set() {
    for n in 5..=7u8 {
        for c in enumerate(3, n, Execution::default()).unwrap() {
            let g = DihedralElement::all(n).find(|g| c.transformed(g).contains(&ks(n, &[1, n - 2, n - 1])));
            let g = g.unwrap_or_else(|| panic!("no normalizing symmetry for {c:?}"));
            let d = c.transformed(&g);
            assert_eq!(lift(&project(&d).unwrap(), pinch_point(&d).unwrap()).unwrap(), d);
        }
    }
}

#[test]
fn generation_agrees_with_enumeration() {
    for n in 5..=7 {
        let a = generate_w3(n, Execution::Sequential).unwrap();
        let b = generate_w3(n, Execution::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, enumerate(3, n, Execution::default()).unwrap());
    }
}

#[test]
fn worked_example_projects_back() {
    let c = WSCollection::with_boundary(3, 6, &[[1, 3, 6], [1, 4, 6], [2, 3, 6], [3, 4, 6]]).unwrap();
    let c2 = WSCollection::with_boundary(3, 7, &[[1, 2, 6], [1, 3, 6], [1, 4, 6], [1, 5, 6], [2, 3, 6], [3, 4, 6]])
        .unwrap();
    assert_eq!(project(&c2).unwrap(), c);
    assert_eq!(pinch_point(&c2).unwrap(), 2);
    assert!(matches!(lift(&c, 4), Err(Error::Precondition(_))));
}

#[test]
fn reductions_replay_to_the_base() {
    for n in 5..=7 {
        let a = base_collection(3, n).unwrap();
        assert_eq!(height(&a), 0);
        for c in enumerate(3, n, Execution::default()).unwrap() {
            let red = reduce_to_base(&c).unwrap();
            let path = red.replay(&c).unwrap();
            assert_eq!(path.last().unwrap(), &a);
            assert_eq!(path.len(), red.moves.len() + 1);
        }
    }
}

fn random_k3() -> impl Strategy<Value = WSCollection> {
    (5u8..=10, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        complete_randomly(&WSCollection::empty(3, n).unwrap(), &mut rng).unwrap()
    })
}

fn random_k2() -> impl Strategy<Value = WSCollection> {
    (4u8..=14, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        complete_randomly(&WSCollection::empty(2, n).unwrap(), &mut rng).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_k3_collections_reduce(c in random_k3()) {
        let red = reduce_to_base(&c).unwrap();
        let path = red.replay(&c).unwrap();
        prop_assert_eq!(path.last().unwrap(), &base_collection(3, c.n()).unwrap());
    }

    #[test]
    fn random_triangulations_reduce(c in random_k2()) {
        let red = reduce_to_base(&c).unwrap();
        prop_assert_eq!(red.endpoint(&c).unwrap(), base_collection(2, c.n()).unwrap());
    }

    #[test]
    fn projection_round_trips_on_random_collections(c in random_k3()) {
        let n = c.n();
        if let Some(g) = DihedralElement::all(n).find(|g| c.transformed(g).contains(&ks(n, &[1, n - 2, n - 1]))) {
            let d = c.transformed(&g);
            let (p, b) = (project(&d).unwrap(), pinch_point(&d).unwrap());
            prop_assert!(p.is_maximal());
            prop_assert_eq!(lift(&p, b).unwrap(), d);
        }
    }
}
