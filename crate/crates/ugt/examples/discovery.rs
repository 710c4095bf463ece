//! Discovered versions and a sampled discovery process on the two-stage
//! example, under each policy.
//!
//! `cargo run --example discovery [SEED]`

use ugt::discovery::{discovered_version, path_classes, run_discovery, trace_bound, uniform_strategy, Policy};
use ugt::fixtures::by_name;
use ugt::io::dot::{path_label, state_label};
use ugt::strategy::Ctx;

fn main() -> ugt::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let g = by_name("ex2_initial").expect("fixture");
    let ctx = Ctx::new(&g);
    for class in path_classes(&ctx, &ctx.all_plans()) {
        let d = discovered_version(&ctx, &class.profile);
        println!("path {} discovers {}", path_label(&g, &class.path), state_label(&d));
    }
    println!("at most {} states per run", trace_bound(&g));
    for policy in [Policy::All, Policy::Rational, Policy::Efr] {
        let tr = run_discovery(&g, &policy, &uniform_strategy, seed)?;
        let states: Vec<String> = tr.states.iter().map(state_label).collect();
        println!("{policy:?}: {} after {} stages", states.join(" -> "), tr.steps.len());
    }
    Ok(())
}
