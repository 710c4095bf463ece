//! Extensive-form rationalizable plans of a fixture, round by round, checked
//! against the brute-force oracle.
//!
//! `cargo run --example rationalizability [FIXTURE]`

use ugt::efr::{efr_ctx, efr_oracle};
use ugt::fixtures::by_name;
use ugt::strategy::Ctx;

fn main() -> ugt::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "bos_aware".into());
    let g = by_name(&name).ok_or_else(|| ugt::UgtError::Invalid(format!("no fixture {name}")))?;
    let ctx = Ctx::new(&g);
    let t = efr_ctx(&ctx)?;
    for (k, round) in t.rounds.iter().enumerate().take(t.fixpoint_round + 1) {
        println!("round {k}");
        for i in g.players() {
            println!("  player {i}: {} plans", round[i].len());
        }
    }
    for i in g.players() {
        for p in &t.result()[i] {
            println!("survives: {}", ctx.show_plan(i, p));
        }
    }
    let oracle = efr_oracle(&g)?;
    println!("oracle agrees: {}", oracle.last().map(|r| r.as_slice()) == Some(t.result()));
    Ok(())
}
