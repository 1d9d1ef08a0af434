mod common;

use acfu_core::privacy::{pa_joint, renyi2_conditional, security_distance, JointSource};
use acfu_core::verify::{balanced_epsilon, min_epsilon, HashClass};
use acfu_core::{AbelianGroup, FunctionTable};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_all_classes(f: &FunctionTable) {
    assert_eq!(min_epsilon(f, HashClass::Au).unwrap().eps, naive_eps_au(f));
    assert_eq!(min_epsilon(f, HashClass::Acfu).ok().map(|e| e.eps), naive_eps_acfu(f));
    assert_eq!(min_epsilon(f, HashClass::Asu).ok().map(|e| e.eps), naive_eps_asu(f));
    if f.a_group().is_some() {
        assert_eq!(balanced_epsilon(f).unwrap().eps, naive_eps_difference(f));
    }
    if f.x_group().is_some() && f.a_group().is_some() {
        if let Ok(e) = min_epsilon(f, HashClass::Balanced) {
            assert_eq!(e.eps, naive_eps_homomorphic(f));
        }
    }
}

fn check_distance(src: &JointSource, f: &FunctionTable) {
    let measured = pa_joint(src, f).ok().and_then(|j| security_distance(&j).ok()).map(|d| d.value);
    assert_eq!(measured, naive_distance(src, f));
}

#[test]
fn builtins_match_oracles() {
    for (name, f) in builtins() {
        if f.x_size() <= 12 && f.s_size() <= 12 {
            check_all_classes(&f);
        } else {
            eprintln!("skipping {name}");
        }
    }
}

#[test]
fn distance_matches_oracle_on_builtins() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (_, f) in builtins() {
        if f.x_size() <= 12 && f.s_size() <= 12 {
            for nz in 1..=3 {
                check_distance(&random_source(&mut rng, f.x_size(), nz), &f);
            }
        }
    }
}

#[test]
fn renyi_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for nx in 1..=6 {
        for nz in 1..=4 {
            let src = random_source(&mut rng, nx, nz);
            assert_eq!(renyi2_conditional(&src).inner, naive_renyi_inner(&src));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_tables_match_oracles(seed in any::<u64>(), nx in 1usize..=12, ns in 1usize..=12, na in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_table(&mut rng, nx, ns, na)
            .with_groups(None, Some(AbelianGroup::cyclic(na as u32)))
            .unwrap();
        check_all_classes(&f);
    }

    #[test]
    fn regular_tables_match_oracles(seed in any::<u64>(), nx in 2usize..=12, blocks in 1usize..=4, na in 2usize..=3) {
        // each row is a shuffled balanced word, so the table is regular
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ns = blocks * na;
        prop_assume!(ns <= 12);
        let mut entries = Vec::new();
        for _ in 0..nx {
            let mut row: Vec<u32> = (0..ns).map(|i| (i % na) as u32).collect();
            row.shuffle(&mut rng);
            entries.extend(row);
        }
        let f = FunctionTable::from_indices(nx, ns, na, entries).unwrap();
        prop_assert!(naive_eps_acfu(&f).is_some());
        check_all_classes(&f);
    }

    #[test]
    fn random_distances_match_oracle(seed in any::<u64>(), nx in 1usize..=8, ns in 1usize..=8, na in 1usize..=3, nz in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_table(&mut rng, nx, ns, na);
        let src = random_source(&mut rng, nx, nz);
        check_distance(&src, &f);
    }
}
