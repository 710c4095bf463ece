use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use ugt::fixtures;
use ugt::generate::{generate_random_game, GenParams};
use ugt::io::json::parse_json;
use ugt::io::text::parse_text;
use ugt::io::{load_game, to_canonical_json, to_text};

fn params(seed: u64) -> GenParams {
    GenParams {
        players: 1 + (seed % 4) as usize,
        depth: 2 + (seed % 3) as usize,
        trees: 1 + (seed % 4) as usize,
        nature: seed.is_multiple_of(3),
        ..GenParams::default()
    }
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x7567), failure_persistence: None, ..ProptestConfig::default() }
}

#[test]
fn committed_fixture_files_match_the_builders() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (name, g) in fixtures::all() {
        let json = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        let text = std::fs::read_to_string(dir.join(format!("{name}.game"))).unwrap();
        assert_eq!(json, to_canonical_json(&g), "{name}.json is stale; rerun the export_fixtures example");
        assert_eq!(text, to_text(&g), "{name}.game is stale; rerun the export_fixtures example");
        assert_eq!(load_game(&dir.join(format!("{name}.game"))).unwrap(), g);
        assert_eq!(load_game(&dir.join(format!("{name}.json"))).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn json_round_trip_is_stable(seed in 0u64..100_000) {
        let g = generate_random_game(params(seed), seed).unwrap();
        let s = to_canonical_json(&g);
        let (back, _) = parse_json(&s).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_canonical_json(&back), s);
    }

    #[test]
    fn text_round_trip_is_stable(seed in 0u64..100_000) {
        let g = generate_random_game(params(seed), seed).unwrap();
        let s = to_text(&g);
        let (back, _) = parse_text(&s).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_text(&back), s);
    }
}
