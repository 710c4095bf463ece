use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use ugt::efr::{efr, efr_oracle};
use ugt::generate::{generate_random_game, GenParams};
use ugt::io::{parse_game, to_canonical_json};
use ugt::UgtError;

fn params(seed: u64, max_profiles: usize) -> GenParams {
    GenParams {
        players: 1 + (seed % 3) as usize,
        depth: 2 + (seed % 2) as usize,
        trees: 1 + (seed % 3) as usize,
        nature: seed.is_multiple_of(4),
        max_profiles,
        ..GenParams::default()
    }
}

fn subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x7567), failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn rounds_shrink_to_a_nonempty_fixpoint(seed in 0u64..10_000) {
        let g = generate_random_game(params(seed, 512), seed).unwrap();
        let t = efr(&g).unwrap();
        for w in t.rounds.windows(2) {
            for (a, b) in w[1].iter().zip(&w[0]) {
                prop_assert!(subset(a, b));
            }
        }
        prop_assert!(t.result().iter().all(|l| !l.is_empty()));
        prop_assert_eq!(&t.rounds[t.fixpoint_round], &t.rounds[t.fixpoint_round + 1]);
        prop_assert!(t.fixpoint_round <= t.rounds.len());
    }

    #[test]
    fn serialization_does_not_change_the_result(seed in 0u64..10_000) {
        let g = generate_random_game(params(seed, 256), seed).unwrap();
        let back = parse_game(&to_canonical_json(&g)).unwrap();
        let (a, b) = (efr(&g).unwrap(), efr(&back).unwrap());
        prop_assert_eq!(a.result(), b.result());
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn engine_matches_oracle(seed in 0u64..10_000) {
        let g = generate_random_game(params(seed, 128), seed).unwrap();
        let t = efr(&g).unwrap();
        match efr_oracle(&g) {
            Ok(rounds) => prop_assert_eq!(rounds.last().unwrap(), t.result()),
            Err(UgtError::Budget(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}
