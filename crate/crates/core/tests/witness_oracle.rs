//! The pruned witness search against plain enumeration of every reduced word.

use twistfree::freeword::{Letter, Word};
use twistfree::intlat::CanonicalInvolution;
use twistfree::realize::{find_witness, realizable_general, Verdict};
use twistfree::twistgrp::{OrientationHom, TwistedGroup};

/// Reduced words of length exactly `len`, in length-lexicographic order.
fn words_of_length(rank: usize, len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (1..=rank).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect();
    let mut out: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet
                    .iter()
                    .filter(|&&a| w.last().map_or(true, |&l| l != a.inverse()))
                    .map(|&a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out.into_iter().map(|l| Word::reduce(l, rank).unwrap()).collect()
}

fn brute_force(group: &TwistedGroup, phi: &OrientationHom, max_len: usize) -> Option<Word> {
    (1..=max_len).find_map(|len| {
        words_of_length(group.rank(), len).into_iter().find(|g| {
            phi.on_word(g) && group.theta().apply(g).unwrap() == g.invert()
        })
    })
}

fn groups() -> Vec<TwistedGroup> {
    let mut out: Vec<TwistedGroup> = (1..=3)
        .flat_map(CanonicalInvolution::all_of_dim)
        .map(TwistedGroup::standard)
        .collect();
    for images in [
        vec!["x2 x1^-1 x2^-1", "x2^-1"],
        vec!["x2^-1 x1^-1 x2", "x2^-1"],
        vec!["x1^-1", "x1 x2 x1^-1"],
        vec!["x2", "x1", "x1 x2^-1 x3^-1 x2 x1^-1"],
        vec!["x2^-1", "x1^-1", "x3"],
    ] {
        let theta = twistfree::freeword::FreeAutomorphism::parse(&images).unwrap();
        out.push(TwistedGroup::new(theta).unwrap());
    }
    out
}

#[test]
fn witness_search_matches_enumeration() {
    for group in groups() {
        for phi in OrientationHom::all(group.rank()).filter(|p| group.validate_orientation(p)) {
            for max_len in [1, 4] {
                assert_eq!(
                    find_witness(&group, &phi, max_len),
                    brute_force(&group, &phi, max_len),
                    "theta {:?} phi {:?}",
                    group.theta().images(),
                    phi.bits()
                );
            }
        }
    }
}

#[test]
fn general_decider_is_consistent_with_enumeration() {
    for group in groups() {
        for phi in OrientationHom::all(group.rank()).filter(|p| group.validate_orientation(p)) {
            let d = realizable_general(&group, &phi).unwrap();
            let found = brute_force(&group, &phi, 5);
            match d.verdict {
                // No word of any length can pass, so short ones cannot either.
                Verdict::Realizable => assert!(found.is_none(), "{:?}", group.theta().images()),
                Verdict::NotRealizable(w) => {
                    if let Some(f) = found {
                        assert_eq!(w.word(), &f, "first witness in canonical order");
                    }
                }
                Verdict::Unknown { .. } => panic!("unexpected unknown for {:?}", group.theta().images()),
            }
        }
    }
}
