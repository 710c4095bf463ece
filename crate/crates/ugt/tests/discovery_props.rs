use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ugt::discovery::{
    build_supergame, discovered_version, discovery_relations, path_classes, run_discovery, self_confirming_games,
    trace_bound, uniform_strategy, Policy,
};
use ugt::game::validate_game;
use ugt::generate::{generate_random_game, GenParams};
use ugt::strategy::{Ctx, Profile};

fn params(seed: u64) -> GenParams {
    GenParams {
        players: 1 + (seed % 3) as usize,
        depth: 2 + (seed % 2) as usize,
        trees: 1 + (seed % 3) as usize,
        nature: seed.is_multiple_of(5),
        max_profiles: 1024,
        ..GenParams::default()
    }
}

fn random_profile(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Profile {
    ctx.all_plans().into_iter().map(|l| l[rng.gen_range(0..l.len())].clone()).collect()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x7567), failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn discovered_versions_are_valid_and_more_aware(seed in 0u64..100_000) {
        let g = generate_random_game(params(seed), seed).unwrap();
        let ctx = Ctx::new(&g);
        let s = random_profile(&ctx, &mut ChaCha8Rng::seed_from_u64(seed));
        let d = discovered_version(&ctx, &s);
        prop_assert!(validate_game(&d).passes());
        let r = discovery_relations(&g, &d).unwrap();
        prop_assert!(r.more_awareness && r.preserves_information);
    }

    #[test]
    fn discovery_is_idempotent_along_a_path(seed in 0u64..100_000) {
        let g = generate_random_game(params(seed), seed).unwrap();
        let ctx = Ctx::new(&g);
        for class in path_classes(&ctx, &ctx.all_plans()) {
            let d = discovered_version(&ctx, &class.profile);
            let dctx = Ctx::new(&d);
            let again = path_classes(&dctx, &dctx.all_plans()).into_iter().find(|c| c.path == class.path).unwrap();
            prop_assert_eq!(discovered_version(&dctx, &again.profile), d);
        }
    }

    #[test]
    fn runs_stay_within_the_bound(seed in 0u64..100_000, policy in 0usize..3) {
        let g = generate_random_game(params(seed), seed).unwrap();
        let policy = [Policy::All, Policy::Rational, Policy::Efr][policy].clone();
        let tr = run_discovery(&g, &policy, &uniform_strategy, seed).unwrap();
        prop_assert!(tr.states.len() <= trace_bound(&g));
        prop_assert_eq!(tr.absorbing, tr.states.len() - 1);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn supergames_have_self_confirming_games(seed in 0u64..100_000) {
        let g = generate_random_game(params(seed), seed).unwrap();
        for policy in [Policy::All, Policy::Efr] {
            let sg = build_supergame(&g, &policy).unwrap();
            prop_assert!(!self_confirming_games(&sg).is_empty());
            prop_assert_eq!(sg.find(&g), Some(0));
        }
    }
}
