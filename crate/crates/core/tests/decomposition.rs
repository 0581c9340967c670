mod common;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ainf_core::cyclic::connes_homology;
use ainf_core::modelzoo::{directed_category, exceptional_endomorphism, trivial_k, UpperHomData};
use ainf_core::word::enumerate_words;
use ainf_core::{Exec, Field};

const MAX_LEN: usize = 8;

fn k_table() -> BTreeMap<i64, usize> {
    connes_homology(&trivial_k(Field::Rational), MAX_LEN, None, Exec::Serial).unwrap().reliable_dims()
}

fn assert_copies(data: &ainf_core::ainfty::AInftyData, copies: usize) {
    let k = k_table();
    let rep = connes_homology(data, MAX_LEN, None, Exec::Serial).unwrap();
    let got = rep.reliable_dims();
    assert!(!got.is_empty());
    for (d, n) in &got {
        assert_eq!(*n, copies * k.get(d).copied().unwrap_or(0), "degree {d}");
    }
}

#[test]
fn directed_categories_split_into_copies_of_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for r in 1..=4 {
        for _ in 0..3 {
            let upper = common::random_upper(&mut rng, r, &[-1, 0, 1, 2]);
            let d = directed_category(Field::Rational, r, &upper).unwrap();
            assert_copies(&d, r);
        }
    }
}

#[test]
fn exceptional_collections_split_into_copies_of_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for size in 2..=4 {
        for _ in 0..3 {
            let upper = common::random_upper(&mut rng, size, &[0]);
            let d = exceptional_endomorphism(Field::Rational, size, &upper).unwrap();
            assert_copies(&d, size);
        }
        let d = exceptional_endomorphism(Field::Rational, size, &UpperHomData::beilinson(2, size)).unwrap();
        assert_copies(&d, size);
    }
}

#[test]
fn directed_cyclic_words_are_identity_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let upper = common::random_upper(&mut rng, 3, &[0, 1]);
    let d = directed_category(Field::Rational, 3, &upper).unwrap();
    let space = enumerate_words(&d, 5, None, usize::MAX).unwrap();
    for w in space.words() {
        let first = w.letters()[0];
        assert!(w.letters().iter().all(|a| *a == first));
        assert_eq!(d.source(first), d.target(first));
        assert_eq!(d.info(first).degree, 0);
    }
}
