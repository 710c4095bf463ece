//! Generates a random valid game and writes it in the text format.
//!
//! `cargo run --example generate [SEED] [PLAYERS] [TREES]`

use ugt::generate::{generate_random_game, GenParams};
use ugt::io::to_text;

fn main() -> ugt::Result<()> {
    let arg = |k: usize, d: u64| std::env::args().nth(k).and_then(|s| s.parse().ok()).unwrap_or(d);
    let params = GenParams { players: arg(2, 2) as usize, trees: arg(3, 3) as usize, ..GenParams::default() };
    let g = generate_random_game(params, arg(1, 0))?;
    print!("{}", to_text(&g));
    Ok(())
}
