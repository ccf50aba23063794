//! Randomized checks of the algebraic identities across modules.

use proptest::prelude::*;
use sl2_fusion::dualmodel::{dual_char_limit, dual_dimension_at_t};
use sl2_fusion::fusion::fusion_character;
use sl2_fusion::ideals::{build_i0, gens_ja_limit, gens_ja_t, opp, quotient_char, saturation_zdeg, shift_ideal};
use sl2_fusion::qchar::{char_closed_form, char_recurrence, BProfile};
use sl2_fusion::Rat;

fn multiset(max_part: u32, max_len: usize, max_sum: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_part, 1..=max_len)
        .prop_filter("sum bound", move |a| a.iter().sum::<u32>() <= max_sum)
        .prop_map(|mut a| {
            a.sort_unstable();
            a
        })
}

fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// `n` pairwise distinct rationals with small numerators and denominators.
fn distinct_points(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), n)
        .prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect::<Vec<_>>())
        .prop_filter("distinct", |v| (0..v.len()).all(|i| (0..i).all(|j| v[i] != v[j])))
}

fn product(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).product()
}

fn with_points(max_sum: u32) -> impl Strategy<Value = (Vec<u32>, Vec<Rat>)> {
    multiset(4, 3, max_sum).prop_flat_map(|a| {
        let n = a.len();
        (Just(a), distinct_points(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_matches_closed_form(a in multiset(5, 4, 10)) {
        let rec = char_recurrence(&a);
        prop_assert_eq!(rec.total(), product(&a));
        prop_assert_eq!(rec.get(0, 0), 1);
        prop_assert_eq!(&rec, &char_closed_form(&BProfile::from_multiset(&a).unwrap()));
    }

    #[test]
    fn limit_quotient_and_dual_match_recurrence(a in multiset(4, 3, 6)) {
        let kmax = saturation_zdeg(&a);
        let rec = char_recurrence(&a);
        let q = quotient_char(&gens_ja_limit::<Rat>(&a).unwrap(), kmax).unwrap();
        prop_assert_eq!(q.bigraded(), Some(&rec));
        prop_assert_eq!(&dual_char_limit::<Rat>(&a, kmax), &rec);
    }

    #[test]
    fn origin_ideal_is_the_mirror(a in multiset(4, 3, 6)) {
        let kmax = saturation_zdeg(&a);
        let ja = gens_ja_limit::<Rat>(&a).unwrap();
        let i0 = quotient_char(&build_i0::<Rat>(&a).unwrap(), kmax).unwrap();
        let mirrored = char_recurrence(&a).mirror(a.len() as u32);
        prop_assert_eq!(i0.bigraded(), Some(&mirrored));
        // reversal is an involution and preserves every component's rank
        let twice = quotient_char(&opp(&opp(&ja)), kmax).unwrap();
        prop_assert_eq!(twice.bigraded(), Some(&char_recurrence(&a)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fusion_character_ignores_the_points((a, z) in with_points(6)) {
        let reference: Vec<Rat> = (1..=a.len() as i64).map(|i| rat(i, 1)).collect();
        let got = fusion_character(&a, &z).unwrap();
        prop_assert_eq!(got.total(), product(&a));
        prop_assert_eq!(&got, &fusion_character(&a, &reference).unwrap());
    }

    #[test]
    fn generic_points_keep_the_dimension((a, t) in with_points(6), c in (-3i64..=3, 1i64..=2)) {
        let kmax = saturation_zdeg(&a);
        let spec = gens_ja_t(&a, &t).unwrap();
        let q = quotient_char(&spec, kmax).unwrap();
        prop_assert_eq!(q.total(), product(&a));
        let shifted = quotient_char(&shift_ideal(&spec, &rat(c.0, c.1)), kmax).unwrap();
        prop_assert_eq!(shifted.total(), product(&a));
        let limit = char_recurrence(&a).zdims();
        for (k, d) in q.zdims().iter().enumerate() {
            prop_assert_eq!(*d, limit.get(k).copied().unwrap_or(0));
        }
    }

    #[test]
    fn dual_at_points_matches_limit_zdims((a, t) in with_points(5)) {
        let zdims = char_recurrence(&a).zdims();
        for (k, d) in zdims.iter().enumerate() {
            prop_assert_eq!(dual_dimension_at_t(&a, &t, k).unwrap() as u64, *d);
        }
    }
}
