//! Runs rationalizable discovery to its end and constructs an equilibrium in
//! rationalizable conjectures there, with awareness diagnostics.
//!
//! `cargo run --example construct_equilibrium [FIXTURE]`

use ugt::discovery::{run_discovery, uniform_strategy, Policy};
use ugt::equilibrium::{awareness_diagnostics, construct_sce_efr};
use ugt::fixtures::by_name;
use ugt::io::dot::state_label;
use ugt::io::report;
use ugt::strategy::Ctx;

fn main() -> ugt::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "bos_repeated".into());
    let g0 = by_name(&name).ok_or_else(|| ugt::UgtError::Invalid(format!("no fixture {name}")))?;
    let tr = run_discovery(&g0, &Policy::Efr, &uniform_strategy, 0)?;
    let g = &tr.states[tr.absorbing];
    println!("self-confirming game: {}", state_label(g));
    let (pi, v) = construct_sce_efr(g)?;
    let ctx = Ctx::new(g);
    println!("profile: {}", serde_json::to_string_pretty(&report::behavior_profile(&ctx, &pi)).unwrap());
    println!("holds: {}", v.holds);
    let d = awareness_diagnostics(g, &pi)?;
    println!("awareness: {}", report::awareness(g, &d));
    Ok(())
}
