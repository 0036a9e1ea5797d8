//! Randomized cross-cutting invariants: word evaluation, Lagrange,
//! regularity of power images, Darboux bases, augmentation-ideal
//! nilpotency, and serialization round trips.

use proptest::prelude::*;
use rand::Rng;

use pgroup_units::algebra::GroupAlgebra;
use pgroup_units::catalog::format::{catalog_file, entries_from_file, parse_json, to_json, Ranges};
use pgroup_units::catalog::{admissible_entries, build_entry, Params, TypeId};
use pgroup_units::pcgroup::enumeration::Enumeration;
use pgroup_units::pcgroup::fingerprint::fingerprint;
use pgroup_units::pcgroup::inner_abelian::{abelian, mp, mp1};
use pgroup_units::pcgroup::presentation::{GroupElement, PcPresentation};
use pgroup_units::pcgroup::symplectic::darboux_pairs;
use pgroup_units::rng::{seeded, sub_seed};

fn presentations() -> Vec<PcPresentation> {
    vec![
        mp1(3, 1, 1).unwrap(),
        mp(3, 2, 1).unwrap(),
        mp(3, 2, 2).unwrap(),
        mp1(3, 2, 1).unwrap(),
        abelian(3, &[2, 1, 1]).unwrap(),
        build_entry(TypeId::T1_3, Params { p: 3, n: 1, m: 1, k: 1, r: 2 })
            .unwrap()
            .presentation,
        mp1(5, 1, 1).unwrap(),
    ]
}

fn eval_fold(pres: &PcPresentation, word: &[(usize, i64)]) -> GroupElement {
    let mut acc = pres.identity();
    for &(g, e) in word {
        acc = pres.mul(&acc, &pres.gen_power(g, e));
    }
    acc
}

fn eval_split(pres: &PcPresentation, word: &[(usize, i64)]) -> GroupElement {
    match word.len() {
        0 => pres.identity(),
        1 => pres.gen_power(word[0].0, word[0].1),
        n => {
            let (left, right) = word.split_at(n / 2);
            pres.mul(&eval_split(pres, left), &eval_split(pres, right))
        }
    }
}

#[test]
fn long_words_reduce_independently_of_bracketing() {
    for pres in presentations() {
        let mut rng = seeded(sub_seed(1, "words"));
        for _ in 0..10 {
            let word: Vec<(usize, i64)> = (0..1000)
                .map(|_| {
                    (
                        rng.random_range(0..pres.num_gens()),
                        rng.random_range(-6..7),
                    )
                })
                .collect();
            let folded = eval_fold(&pres, &word);
            let split = eval_split(&pres, &word);
            assert_eq!(folded, split, "bracketing changed a word value");

            let inverted: Vec<(usize, i64)> =
                word.iter().rev().map(|&(g, e)| (g, -e)).collect();
            let product = pres.mul(&folded, &eval_fold(&pres, &inverted));
            assert!(pres.is_identity(&product), "word times reversed inverse is not 1");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn word_values_match_under_bracketings(
        which in 0usize..7,
        word in prop::collection::vec((0usize..4, -8i64..9), 0..120),
    ) {
        let pres = &presentations()[which];
        let word: Vec<(usize, i64)> =
            word.into_iter().map(|(g, e)| (g % pres.num_gens(), e)).collect();
        let folded = eval_fold(pres, &word);
        prop_assert_eq!(&folded, &eval_split(pres, &word));
        // Inverse of the value equals the value of the reversed inverse word.
        let inverted: Vec<(usize, i64)> = word.iter().rev().map(|&(g, e)| (g, -e)).collect();
        prop_assert_eq!(&pres.inverse(&folded), &eval_fold(pres, &inverted));
    }

    #[test]
    fn generated_subgroups_obey_lagrange(
        which in 0usize..7,
        picks in prop::collection::vec(0u64..10_000, 0..4),
    ) {
        let pres = &presentations()[which];
        let en = Enumeration::new(pres, 1 << 10).unwrap();
        let gens: Vec<u64> = picks.iter().map(|&i| i % en.order()).collect();
        let sub = en.closure_of_indices(&gens);
        prop_assert_eq!(en.order() % sub.order(), 0);
        for &g in &gens {
            prop_assert!(sub.contains(g));
            prop_assert_eq!(en.order() % en.order_of_idx(g), 0);
        }
    }

    #[test]
    fn catalog_subsets_round_trip_through_json(subset in prop::collection::vec(0usize..24, 1..6)) {
        let all = admissible_entries(3, 2, 2, 2, 3, None, 243).unwrap();
        let picked: Vec<_> = subset.iter().map(|&i| all[i % all.len()].clone()).collect();
        let ranges = Ranges { n_max: 2, m_max: 2, k_max: 2, r_max: 3 };
        let file = catalog_file(3, ranges, &picked);
        let text = to_json(&file);
        let parsed = parse_json(&text).unwrap();
        prop_assert_eq!(&to_json(&parsed), &text);
        let rebuilt = entries_from_file(&parsed).unwrap();
        // The file stores entries deduplicated and sorted; every picked entry
        // must come back with an identical presentation.
        for entry in &picked {
            let twin = rebuilt
                .iter()
                .find(|e| e.type_id == entry.type_id && e.params == entry.params)
                .expect("entry survived the round trip");
            prop_assert_eq!(&twin.presentation, &entry.presentation);
        }
    }
}

#[test]
fn power_images_are_already_subgroups() {
    // Class 2 < p makes these groups regular, so the set of p^l-th powers
    // is closed under multiplication without taking any closure.
    for pres in presentations() {
        let en = Enumeration::new(&pres, 1 << 10).unwrap();
        for l in 1..=2 {
            let mut raw = en.power_image(l);
            raw.sort_unstable();
            raw.dedup();
            assert_eq!(
                raw,
                en.power_subgroup(l).indices().to_vec(),
                "power image differs from its closure at l={l}"
            );
        }
    }
}

#[test]
fn darboux_pairs_pair_up_exactly() {
    let cases = [
        build_entry(TypeId::T1_5, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }).unwrap(),
        build_entry(TypeId::T1_5, Params { p: 3, n: 1, m: 1, k: 2, r: 2 }).unwrap(),
        build_entry(TypeId::T1_3, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }).unwrap(),
        build_entry(TypeId::T1_11, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }).unwrap(),
    ];
    for entry in &cases {
        let en = Enumeration::new(&entry.presentation, 729).unwrap();
        let pres = en.presentation();
        let pairs = darboux_pairs(&en).expect("nondegenerate form");
        assert_eq!(pairs.len(), entry.params.k as usize);
        for (i, (xi, yi)) in pairs.iter().enumerate() {
            assert!(!pres.is_central_element(xi));
            assert!(!pres.is_central_element(yi));
            assert_eq!(pres.comm_exp_elements(xi, yi), 1, "diagonal pair is not a c-pair");
            for (j, (xj, yj)) in pairs.iter().enumerate() {
                if i != j {
                    assert_eq!(pres.comm_exp_elements(xi, xj), 0);
                    assert_eq!(pres.comm_exp_elements(yi, yj), 0);
                    assert_eq!(pres.comm_exp_elements(xi, yj), 0);
                }
            }
        }
    }
}

#[test]
fn augmentation_zero_elements_are_nilpotent_units_away_from_one() {
    for pres in [mp1(3, 1, 1).unwrap(), mp(3, 2, 1).unwrap()] {
        let en = Enumeration::new(&pres, 27).unwrap();
        let alg = GroupAlgebra::new(&en, 27).unwrap();
        let mut rng = seeded(sub_seed(2, "nilpotency"));
        for _ in 0..50 {
            let mut x = alg.random_element(&mut rng);
            // Force augmentation zero by adjusting the identity coefficient.
            let eps = alg.epsilon(&x);
            let adjusted = alg
                .sub(&x, &alg.scalar_mul(eps, &alg.one()))
                .unwrap();
            x = adjusted;
            assert_eq!(alg.epsilon(&x), 0);
            assert!(alg.pow(&x, 27).unwrap().is_zero(), "augmentation ideal element not nilpotent");
            let unit = alg.add(&alg.one(), &x).unwrap();
            let inv = alg.normalized_inverse(&unit).unwrap();
            assert_eq!(alg.mul(&unit, &inv).unwrap(), alg.one());
        }
    }
}

#[test]
fn fingerprints_survive_serialization() {
    let all = admissible_entries(3, 1, 1, 1, 2, None, 729).unwrap();
    let ranges = Ranges { n_max: 1, m_max: 1, k_max: 1, r_max: 2 };
    let file = catalog_file(3, ranges, &all);
    let rebuilt = entries_from_file(&parse_json(&to_json(&file)).unwrap()).unwrap();
    assert_eq!(rebuilt.len(), all.len());
    for (a, b) in all.iter().zip(&rebuilt) {
        let ea = Enumeration::new(&a.presentation, 729).unwrap();
        let eb = Enumeration::new(&b.presentation, 729).unwrap();
        assert_eq!(fingerprint(&ea), fingerprint(&eb));
    }
}
