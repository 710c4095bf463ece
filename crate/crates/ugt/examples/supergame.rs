//! Builds the discovery supergame of a fixture and prints it as DOT with
//! its self-confirming games marked.
//!
//! `cargo run --example supergame [FIXTURE] [all|rational|efr]`

use ugt::discovery::{build_supergame, self_confirming_games, Policy};
use ugt::fixtures::by_name;
use ugt::io::dot::{state_label, supergame_dot};

fn main() -> ugt::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "ex2_initial".into());
    let policy = Policy::parse(&args.next().unwrap_or_else(|| "all".into()))?;
    let g = by_name(&name).ok_or_else(|| ugt::UgtError::Invalid(format!("no fixture {name}")))?;
    let sg = build_supergame(&g, &policy)?;
    for k in self_confirming_games(&sg) {
        eprintln!("self-confirming: {}", state_label(&sg.states[k]));
    }
    print!("{}", supergame_dot(&sg));
    Ok(())
}
