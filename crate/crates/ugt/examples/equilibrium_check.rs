//! Checks pure and behavior profiles for self-confirming equilibrium and
//! prints the verdicts with their witnesses.
//!
//! `cargo run --example equilibrium_check`

use ugt::efr::{efr_ctx, efr_profiles};
use ugt::equilibrium::{check_sce_behavior, check_sce_efr, check_sce_pure, lift_profile};
use ugt::fixtures::by_name;
use ugt::io::report;
use ugt::strategy::{Behavior, Ctx};

fn main() -> ugt::Result<()> {
    // Initial awareness changes along every rationalizable path.
    let g = by_name("ex1_initial").expect("fixture");
    let ctx = Ctx::new(&g);
    let s = efr_profiles(&efr_ctx(&ctx)?).remove(0);
    let v = check_sce_pure(&g, &s)?;
    println!("ex1_initial: {}", report::verdict(&g, &v));

    let g = by_name("ex1_discovered").expect("fixture");
    let ctx = Ctx::new(&g);
    let s = efr_profiles(&efr_ctx(&ctx)?).remove(0);
    println!("ex1_discovered, pure: {}", check_sce_pure(&g, &s)?.holds);
    println!("ex1_discovered, efr: {}", check_sce_efr(&g, &lift_profile(&ctx, &s))?.holds);

    let g = by_name("matching_pennies").expect("fixture");
    let ctx = Ctx::new(&g);
    let pi: Vec<Behavior> = (0..=g.num_players()).map(|j| Behavior::uniform(&ctx, j)).collect();
    let v = check_sce_behavior(&g, &pi)?;
    println!("matching pennies, uniform: {}", serde_json::to_string_pretty(&report::verdict(&g, &v)).unwrap());
    Ok(())
}
