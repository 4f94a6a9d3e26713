use std::collections::BTreeSet;

use num::BigRational;
use proptest::prelude::*;

use qcat_core::fock::{apply_word, deformed_inner, BasisWord, FockState, TestVector};
use qcat_core::pairings::{
    all_words, counterpart, enumerate_ncpp, enumerate_pp_of, glue, plus_sequences, EpsilonClass,
    EpsilonSequence, PairPartition,
};
use qcat_core::QPolynomial;

fn catalan_u64(n: usize) -> usize {
    // C_{k+1} = C_k * 2(2k+1) / (k+2)
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[test]
fn round_trip_up_to_length_14() {
    for n in 1..=7 {
        for eps in plus_sequences(n) {
            assert_eq!(counterpart(&eps).unwrap().tau(), eps);
        }
    }
}

#[test]
fn plus_words_counted_by_catalan() {
    for n in 1..=7 {
        let filtered = all_words(2 * n)
            .filter(|w| w.classify().map(EpsilonClass::is_plus).unwrap_or(false))
            .count();
        assert_eq!(filtered, catalan_u64(n));
        assert_eq!(enumerate_ncpp(n).count(), catalan_u64(n));
    }
}

#[test]
fn counterpart_is_unique_up_to_length_10() {
    for n in 1..=5 {
        for eps in plus_sequences(n) {
            let lefts: BTreeSet<i64> = eps.left_positions().iter().map(|&l| l as i64).collect();
            let matches: Vec<_> = enumerate_ncpp(n)
                .filter(|t| t.left_labels().into_iter().collect::<BTreeSet<_>>() == lefts)
                .collect();
            assert_eq!(matches, vec![counterpart(&eps).unwrap()], "{eps}");
        }
    }
}

#[test]
fn component_count_matches_zero_prefix_sums() {
    for n in 1..=6 {
        for theta in enumerate_ncpp(n) {
            let comps = theta.closed_components().unwrap();
            assert_eq!(
                comps.components.len(),
                theta.tau().n_epsilon().unwrap(),
                "{theta}"
            );
            assert_eq!(comps.boundaries.first(), Some(&0));
            assert_eq!(comps.boundaries.last(), Some(&n));
            assert_eq!(glue(&comps.components).unwrap(), theta);
        }
    }
}

#[test]
fn plus_star_iff_outer_pair() {
    for n in 1..=6 {
        for eps in plus_sequences(n) {
            let theta = counterpart(&eps).unwrap();
            let star = eps.classify().unwrap() == EpsilonClass::PlusStar;
            assert_eq!(star, theta.pairs()[0].1 == 2 * n as i64, "{eps}");
        }
    }
}

#[test]
fn minus_words_vanish_up_to_length_8() {
    let tests: Vec<TestVector> = ["1,2", "-1,1/2", "3,0", "0,1", "2,2", "1,-1", "1/3,1", "5,1"]
        .iter()
        .map(|s| TestVector::parse(s).unwrap())
        .collect();
    for len in 1..=8 {
        for w in all_words(len) {
            if w.classify().unwrap() == EpsilonClass::Minus {
                let state = apply_word(&w, &tests[..len]).unwrap();
                assert!(state.vacuum_coefficient().is_zero(), "{w}");
            }
        }
    }
}

fn shifted_partition(offset: i64, choice: usize, n: usize) -> PairPartition {
    let ground: Vec<i64> = (0..2 * n as i64).map(|i| offset + 3 * i).collect();
    let all: Vec<_> = enumerate_pp_of(ground).collect();
    all[choice % all.len()].clone()
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn test_vector() -> impl Strategy<Value = TestVector> {
    prop::collection::vec(small_rational(), 3).prop_map(|c| TestVector::new(c).unwrap())
}

fn state(level: usize) -> impl Strategy<Value = FockState> {
    prop::collection::vec(
        (prop::collection::vec(1usize..=3, level), small_rational()),
        1..4,
    )
    .prop_map(|terms| {
        FockState::from_terms(
            terms
                .into_iter()
                .map(|(w, c)| (BasisWord(w), QPolynomial::constant(c))),
        )
    })
}

fn plus_word() -> impl Strategy<Value = EpsilonSequence> {
    (1usize..=5, any::<prop::sample::Index>()).prop_map(|(n, idx)| {
        let words = plus_sequences(n);
        words[idx.index(words.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn glue_is_associative(a in 0usize..15, b in 0usize..15, c in 0usize..15) {
        // offsets 0, 1, 2 with stride 3 give disjoint interleaved grounds
        let x = shifted_partition(0, a, 2);
        let y = shifted_partition(1, b, 2);
        let z = shifted_partition(2, c, 2);
        let left = glue(&[glue(&[x.clone(), y.clone()]).unwrap(), z.clone()]).unwrap();
        let right = glue(&[x.clone(), glue(&[y.clone(), z.clone()]).unwrap()]).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, glue(&[x, y, z]).unwrap());
    }

    #[test]
    fn annihilation_is_adjoint_to_creation(
        (g, h) in (0usize..=4).prop_flat_map(|level| (state(level), state(level + 1))),
        f in test_vector(),
    ) {
        prop_assert_eq!(
            deformed_inner(&g.create(&f), &h).unwrap(),
            deformed_inner(&g, &h.annihilate(&f)).unwrap()
        );
    }

    #[test]
    fn plus_words_collapse_to_scalars(eps in plus_word(), vs in prop::collection::vec(test_vector(), 10)) {
        let state = apply_word(&eps, &vs[..eps.len()]).unwrap();
        prop_assert!(state.is_scalar());
    }
}
