//! Writes every named game to `fixtures/` as canonical JSON and as text.
//!
//! `cargo run --example export_fixtures [DIR]`

use std::path::PathBuf;

use ugt::fixtures;
use ugt::io::{to_canonical_json, to_text};

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    std::fs::create_dir_all(&dir)?;
    for (name, g) in fixtures::all() {
        std::fs::write(dir.join(format!("{name}.json")), to_canonical_json(&g))?;
        std::fs::write(dir.join(format!("{name}.game")), to_text(&g))?;
        println!("{name}");
    }
    Ok(())
}
