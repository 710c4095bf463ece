//! Validates a game written in the text format, first intact and then with
//! one information set moved above the copy it governs.
//!
//! `cargo run --example validate`

use ugt::io::parse_document;

const GAME: &str = "\
game entry
players 2
node r 1=out|in
  out -> z0
  in -> a
node a 2=x|y
  x -> zx
  y -> zy
leaf z0 1 1
leaf zx 2 0
leaf zy 0 2
tree Tbar all
tree T without a zx zy
info 1 T r at r@T r@Tbar
singletons
";

fn main() -> ugt::Result<()> {
    let ok = parse_document(GAME)?;
    println!("intact game:\n{}", ok.report);

    let broken = GAME.replace("info 1 T r at r@T r@Tbar", "info 1 Tbar r at r@T r@Tbar");
    let bad = parse_document(&broken)?;
    println!("broken game passes: {}", bad.report.passes());
    for d in bad.diagnostics() {
        println!("  {d}");
    }
    Ok(())
}
