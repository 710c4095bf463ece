use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ugt::discovery::{run_discovery, uniform_strategy, Policy};
use ugt::efr::{efr, efr_profiles};
use ugt::equilibrium::{check_sce_behavior, check_sce_efr, check_sce_pure, construct_sce_efr, lift_profile};
use ugt::generate::{generate_random_game, GenParams};
use ugt::strategy::{kuhn_convert, reach_probability, Behavior, Converted, Ctx, Mixed, Profile, Strat};
use ugt::{Game, UgtError, Q};

fn params(seed: u64) -> GenParams {
    GenParams {
        players: 1 + (seed % 3) as usize,
        depth: 2 + (seed % 2) as usize,
        trees: 1 + (seed % 3) as usize,
        nature: seed.is_multiple_of(3),
        max_profiles: 256,
        ..GenParams::default()
    }
}

fn weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    let w = if w.iter().all(|&x| x == 0) { vec![1; n] } else { w };
    let tot: i64 = w.iter().sum();
    w.into_iter().map(|x| Q::new(x.into(), tot.into())).collect()
}

fn same_reach(ctx: &Ctx, g: &Game, i: usize, a: Strat, b: Strat, others: &Profile) -> Result<(), TestCaseError> {
    for l in g.locs() {
        prop_assert_eq!(reach_probability(ctx, i, a, others, l), reach_probability(ctx, i, b, others, l));
    }
    Ok(())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x7567), failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn kuhn_conversion_preserves_reach(seed in 0u64..100_000) {
        let g = generate_random_game(params(seed), seed).unwrap();
        let ctx = Ctx::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = ctx.all_plans();
        for i in 0..=g.num_players() {
            if ctx.st.space(i).cps.is_empty() {
                continue;
            }
            let others: Profile = all.iter().map(|l| l[rng.gen_range(0..l.len())].clone()).collect();
            let b = Behavior(ctx.st.space(i).cps.iter().map(|cp| weights(&mut rng, cp.actions.len())).collect());
            let Converted::Mixed(m) = kuhn_convert(&ctx, i, Strat::Behavior(&b)) else { panic!("expected a mixture") };
            prop_assert!(m.0.values().fold(Q::zero(), |a, w| a + w).is_one());
            same_reach(&ctx, &g, i, Strat::Behavior(&b), Strat::Mixed(&m), &others)?;

            let w = weights(&mut rng, all[i].len());
            let m = Mixed(all[i].iter().cloned().zip(w).collect());
            let Converted::Behavior(b) = kuhn_convert(&ctx, i, Strat::Mixed(&m)) else { panic!("expected kernels") };
            prop_assert!(b.is_valid());
            same_reach(&ctx, &g, i, Strat::Mixed(&m), Strat::Behavior(&b), &others)?;
        }
    }

    #[test]
    fn pure_and_lifted_verdicts_agree(seed in 0u64..100_000) {
        let g = generate_random_game(params(seed), seed).unwrap();
        let ctx = Ctx::new(&g);
        for s in efr_profiles(&efr(&g).unwrap()).into_iter().take(4) {
            let pure = check_sce_pure(&g, &s).unwrap();
            let lifted = check_sce_behavior(&g, &lift_profile(&ctx, &s)).unwrap();
            prop_assert_eq!(pure.holds, lifted.holds);
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn constructed_equilibria_pass_both_checks(seed in 0u64..100_000) {
        let g0 = generate_random_game(params(seed), seed).unwrap();
        let tr = run_discovery(&g0, &Policy::Efr, &uniform_strategy, seed).unwrap();
        let g = &tr.states[tr.absorbing];
        let (pi, v) = match construct_sce_efr(g) {
            Err(UgtError::Unsupported(_)) => return Ok(()),
            r => r.unwrap(),
        };
        prop_assert!(v.holds);
        prop_assert!(check_sce_efr(g, &pi).unwrap().holds);
        prop_assert!(check_sce_behavior(g, &pi).unwrap().holds);
    }
}
