//! Reading and writing games: canonical JSON, the text front-end and DOT.

pub mod dot;
pub mod json;
pub mod profile;
pub mod report;
pub mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::error::{GameError, Result, UgtError};
use crate::game::{validate_game, Game, Player, ValidationReport, Witness};

pub use json::{parse_json, to_canonical_json, FORMAT_VERSION};
pub use text::{parse_text, to_text};

/// A source position with a message.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based line.
    pub line: usize,
    /// 1-based column.
    pub col: usize,
    /// What went wrong.
    pub message: String,
}

impl Diagnostic {
    fn at(line: usize, col: usize) -> Self {
        Diagnostic { line, col, message: String::new() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

/// Where declarations sit in the source document.
#[derive(Clone, Debug, Default)]
pub struct Positions {
    /// Node declarations by name.
    pub nodes: BTreeMap<String, Diagnostic>,
    /// Information-set declarations by `(node, tree, player)` they govern.
    pub info: BTreeMap<(String, String, Player), Diagnostic>,
}

impl Positions {
    /// Best position for a validator witness: the set governing the copy,
    /// else the node, else the start of the document.
    pub fn locate(&self, w: &Witness) -> Diagnostic {
        let set = w.player.and_then(|p| self.info.get(&(w.node.clone(), w.tree.clone(), p)));
        let mut d = set.or_else(|| self.nodes.get(&w.node)).cloned().unwrap_or_else(|| Diagnostic::at(1, 1));
        d.message = w.detail.clone();
        d
    }

    fn of_error(&self, e: &GameError) -> Option<&Diagnostic> {
        let node = match e {
            GameError::DuplicateNode(n)
            | GameError::UnknownNode(n)
            | GameError::Unreachable(n)
            | GameError::BadNode { node: n, .. }
            | GameError::NonBijective { node: n, .. } => n,
            GameError::MissingInfoSet { player, node, tree }
            | GameError::ConflictingInfoSet { player, node, tree }
            | GameError::ExtraInfoSet { player, node, tree } => {
                return self.info.get(&(node.clone(), tree.clone(), *player)).or_else(|| self.nodes.get(node));
            }
            GameError::MemberNotInHost { node, .. } | GameError::NoCopy { node, .. } => node,
            _ => return None,
        };
        self.nodes.get(node)
    }
}

/// A parsed document: the game, where things were declared, and the
/// validator's verdict.
#[derive(Clone, Debug)]
pub struct Parsed {
    /// The canonical game.
    pub game: Game,
    /// Declaration positions.
    pub positions: Positions,
    /// Axiom checks.
    pub report: ValidationReport,
}

impl Parsed {
    /// One positioned diagnostic per axiom failure.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for c in &self.report.checks {
            for w in &c.failures {
                let mut d = self.positions.locate(w);
                let p = w.player.map(|p| format!(" player {p}")).unwrap_or_default();
                d.message = format!("{} failed at {}@{}{}: {}", c.axiom.name(), w.node, w.tree, p, w.detail);
                out.push(d);
            }
        }
        out
    }
}

/// True if the document looks like JSON rather than the text front-end.
pub fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Parses either format and validates. Structural errors become
/// [`UgtError::Parse`] at the offending declaration when it can be found.
pub fn parse_document(text: &str) -> Result<Parsed> {
    let (game, positions) = if is_json(text) { parse_json(text)? } else { parse_text(text)? };
    let report = validate_game(&game);
    Ok(Parsed { game, positions, report })
}

/// Parses and insists that every axiom holds.
pub fn parse_game(text: &str) -> Result<Game> {
    let p = parse_document(text)?;
    if p.report.passes() {
        return Ok(p.game);
    }
    let lines: Vec<String> = p.diagnostics().iter().map(|d| d.to_string()).collect();
    Err(UgtError::Invalid(format!("axiom check failed:\n{}", lines.join("\n"))))
}

/// Reads and parses a file with [`parse_game`].
pub fn load_game(path: &Path) -> Result<Game> {
    parse_game(&read(path)?)
}

/// Reads a file to a string.
pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| UgtError::Invalid(format!("{}: {e}", path.display())))
}

fn positioned(e: GameError, pos: &Positions) -> UgtError {
    match pos.of_error(&e) {
        Some(d) => UgtError::Parse { line: d.line, col: d.col, msg: e.to_string() },
        None => UgtError::Game(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Axiom;

    #[test]
    fn both_formats_load_the_same_game() {
        for (name, g) in fixtures::all() {
            assert_eq!(parse_game(&to_canonical_json(&g)).unwrap(), g, "{name}");
            assert_eq!(parse_game(&to_text(&g)).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn host_above_the_copy_fails_confined_awareness() {
        let src = "game u0\nplayers 1\nnode r 1=a|b\n  a -> za\n  b -> zb\nleaf za 1\nleaf zb 0\n\
                   tree Tbar all\ntree T r za\ninfo 1 Tbar r at r@T\nsingletons\n";
        let p = parse_document(src).unwrap();
        assert!(p.report.failed().contains(&Axiom::U0), "{}", p.report);
        let d = p.diagnostics();
        let u0 = d.iter().find(|d| d.message.starts_with("U0")).unwrap();
        assert_eq!((u0.line, u0.col), (10, 1));
        assert!(matches!(parse_game(src), Err(UgtError::Invalid(m)) if m.contains("10:1: U0")));
    }

    #[test]
    fn missing_set_names_node_and_player() {
        let g = fixtures::by_name("single_decision").unwrap();
        let src: String = to_text(&g).lines().filter(|l| !l.starts_with("info")).map(|l| format!("{l}\n")).collect();
        match parse_game(&src) {
            Err(UgtError::Parse { msg, .. }) => assert!(msg.contains("player 1 has no information set"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
