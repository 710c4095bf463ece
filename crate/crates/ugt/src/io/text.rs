//! Line-oriented text front-end.
//!
//! ```text
//! # comment
//! game ex1
//! players 2
//! node r 1=l1|r1          # decision node: player=actions, one group per mover
//!   l1 -> a               # indented edges: profile (comma-joined) -> child
//!   r1 -> zr
//! leaf zr 1 1             # terminal node with payoffs (integers or p/q)
//! tree Tbar all
//! tree T without zm       # or an explicit node list
//! info 1 T r at r@Tbar    # player host members(comma-joined) at node@tree...
//! singletons              # own-tree singletons for every copy left unassigned
//! quoted zm = (0, 10)
//! constructed zr = (1, 1)
//! note free text
//! ```

use std::fmt::Write as _;

use super::{positioned, Diagnostic, Positions};
use crate::error::{Result, UgtError};
use crate::game::{Game, GameBuilder, Player};
use crate::num::{fmt_q_short, parse_q};

struct Tok<'a> {
    s: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, (b, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((b, k)),
            (true, Some((s, col))) => {
                out.push(Tok { s: &line[s..b], col: col + 1 });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, col)) = start {
        out.push(Tok { s: &line[s..], col: col + 1 });
    }
    out
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> UgtError {
    UgtError::Parse { line, col, msg: msg.into() }
}

fn rest_of<'a>(raw: &'a str, t: &Tok) -> &'a str {
    let b = raw.char_indices().nth(t.col - 1).map(|(b, _)| b).unwrap_or(raw.len());
    raw[b..].trim_start().split_once(char::is_whitespace).map(|(_, r)| r.trim()).unwrap_or("")
}

/// Parses a text document into a game without running the validator.
pub fn parse_text(src: &str) -> Result<(Game, Positions)> {
    let mut name: Option<String> = None;
    let mut players: Option<usize> = None;
    let mut b: Option<GameBuilder> = None;
    let mut pos = Positions::default();
    let mut current: Option<(String, usize)> = None;
    let mut last = 0;
    for (k, raw) in src.lines().enumerate() {
        let ln = k + 1;
        last = ln;
        let code = raw.split('#').next().unwrap_or("");
        let toks = tokens(code);
        let Some(head) = toks.first() else { continue };
        if code.starts_with(char::is_whitespace) {
            let Some((from, arity)) = &current else {
                return Err(err(ln, head.col, "edge line outside a node declaration"));
            };
            if toks.len() != 3 || toks[1].s != "->" {
                return Err(err(ln, head.col, "expected `PROFILE -> CHILD`"));
            }
            let prof: Vec<&str> = toks[0].s.split(',').collect();
            if prof.len() != *arity {
                return Err(err(ln, head.col, format!("profile needs {arity} comma-separated actions")));
            }
            let b = b.as_mut().expect("node seen");
            b.edge(from, &prof, toks[2].s);
            continue;
        }
        current = None;
        match head.s {
            "game" => {
                if b.is_some() {
                    return Err(err(ln, head.col, "`game` must come before any declaration"));
                }
                name = Some(rest_of(code, head).to_string());
                continue;
            }
            "players" => {
                if b.is_some() || toks.len() != 2 {
                    return Err(err(ln, head.col, "expected `players N` before any declaration"));
                }
                let n = toks[1].s.parse().map_err(|_| err(ln, toks[1].col, "expected a player count"))?;
                players = Some(n);
                continue;
            }
            _ => {}
        }
        let builder = match &mut b {
            Some(x) => x,
            None => {
                let Some(n) = players else {
                    return Err(err(ln, head.col, "expected `players N` first"));
                };
                b.insert(GameBuilder::new(name.as_deref().unwrap_or("game"), n))
            }
        };
        match head.s {
            "node" => {
                let Some(nm) = toks.get(1) else { return Err(err(ln, head.col, "expected a node name")) };
                if toks.len() < 3 {
                    return Err(err(ln, head.col, "expected at least one `PLAYER=ACTION|...` group"));
                }
                let mut groups: Vec<(Player, Vec<&str>)> = Vec::new();
                for t in &toks[2..] {
                    let (p, acts) =
                        t.s.split_once('=').ok_or_else(|| err(ln, t.col, "expected `PLAYER=ACTION|...`"))?;
                    let p: Player = p.parse().map_err(|_| err(ln, t.col, "expected a player number"))?;
                    groups.push((p, acts.split('|').collect()));
                }
                let g: Vec<(Player, &[&str])> = groups.iter().map(|(p, a)| (*p, a.as_slice())).collect();
                builder.decision(nm.s, &g);
                pos.nodes.insert(nm.s.to_string(), Diagnostic::at(ln, head.col));
                current = Some((nm.s.to_string(), groups.len()));
            }
            "leaf" => {
                let Some(nm) = toks.get(1) else { return Err(err(ln, head.col, "expected a node name")) };
                let mut pay = Vec::new();
                for t in &toks[2..] {
                    pay.push(parse_q(t.s).map_err(|m| err(ln, t.col, m))?);
                }
                builder.terminal(nm.s, &pay);
                pos.nodes.insert(nm.s.to_string(), Diagnostic::at(ln, head.col));
            }
            "tree" => {
                let Some(nm) = toks.get(1) else { return Err(err(ln, head.col, "expected a tree name")) };
                let rest: Vec<&str> = toks[2..].iter().map(|t| t.s).collect();
                match rest.first() {
                    Some(&"all") if rest.len() == 1 => builder.tree_all(nm.s),
                    Some(&"without") => builder.tree_without(nm.s, &rest[1..]),
                    Some(_) => builder.tree(nm.s, &rest),
                    None => return Err(err(ln, head.col, "expected `all`, `without NODE...` or a node list")),
                };
            }
            "info" => {
                if toks.len() < 6 || toks[4].s != "at" {
                    return Err(err(ln, head.col, "expected `info PLAYER HOST MEMBERS at NODE@TREE...`"));
                }
                let p: Player = toks[1].s.parse().map_err(|_| err(ln, toks[1].col, "expected a player number"))?;
                let members: Vec<&str> = toks[3].s.split(',').collect();
                let mut at = Vec::new();
                for t in &toks[5..] {
                    let (n, tr) = t.s.split_once('@').ok_or_else(|| err(ln, t.col, "expected `NODE@TREE`"))?;
                    pos.info.insert((n.to_string(), tr.to_string(), p), Diagnostic::at(ln, head.col));
                    at.push((n, tr));
                }
                builder.info(p, toks[2].s, &members, &at);
            }
            "singletons" => {
                builder.default_singletons(true);
            }
            "quoted" => {
                builder.quoted(rest_of(code, head));
            }
            "constructed" => {
                builder.constructed(rest_of(code, head));
            }
            "note" => {
                builder.note(rest_of(code, head));
            }
            other => {
                return Err(err(
                    ln,
                    head.col,
                    format!(
                        "unknown keyword `{other}`; expected one of game, players, node, leaf, tree, info, \
                         singletons, quoted, constructed, note"
                    ),
                ))
            }
        }
    }
    let Some(b) = b else { return Err(err(last.max(1), 1, "document declares no nodes")) };
    let g = b.build().map_err(|e| positioned(e, &pos))?;
    Ok((g, pos))
}

/// Text rendering that [`parse_text`] reads back to an equal game.
pub fn to_text(g: &Game) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "game {}", g.name);
    let _ = writeln!(s, "players {}", g.num_players());
    for n in g.nodes() {
        if n.is_terminal() {
            let pay: Vec<String> = n.payoffs.iter().map(fmt_q_short).collect();
            let _ = writeln!(s, "leaf {} {}", n.name, pay.join(" "));
            continue;
        }
        let groups: Vec<String> = n.actions.iter().map(|(p, a)| format!("{p}={}", a.join("|"))).collect();
        let _ = writeln!(s, "node {} {}", n.name, groups.join(" "));
        for (prof, &c) in &n.children {
            let _ = writeln!(s, "  {} -> {}", prof.join(","), g.node(c).name);
        }
    }
    for t in g.trees() {
        let names: Vec<&str> = t.nodes.iter().map(|&n| g.node(n).name.as_str()).collect();
        let _ = writeln!(s, "tree {} {}", t.name, names.join(" "));
    }
    for (h, set) in g.info_sets().iter().enumerate() {
        let members: Vec<&str> = set.members.iter().map(|&n| g.node(n).name.as_str()).collect();
        let at: Vec<String> = g.governed(h).into_iter().map(|l| g.loc_name(l)).collect();
        let _ =
            writeln!(s, "info {} {} {} at {}", set.player, g.trees()[set.host].name, members.join(","), at.join(" "));
    }
    for q in &g.provenance.quoted {
        let _ = writeln!(s, "quoted {q}");
    }
    for c in &g.provenance.constructed {
        let _ = writeln!(s, "constructed {c}");
    }
    for n in &g.provenance.notes {
        let _ = writeln!(s, "note {n}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "\
# example
game tiny
players 1
node r 1=a|b
  a -> za
  b -> zb
leaf za 1/2
leaf zb 0
tree T all
singletons
quoted za = 1/2
";

    #[test]
    fn parses_a_small_document() {
        let (g, pos) = parse_text(EX).unwrap();
        assert_eq!(g.name, "tiny");
        assert_eq!(g.nodes().len(), 3);
        assert_eq!(pos.nodes["za"], Diagnostic::at(7, 1));
        assert_eq!(g.provenance.quoted, vec!["za = 1/2".to_string()]);
        assert_eq!(parse_text(&to_text(&g)).unwrap().0, g);
    }

    #[test]
    fn errors_carry_line_and_column() {
        let bad = EX.replace("leaf zb 0", "leaf zb x");
        assert!(matches!(parse_text(&bad), Err(UgtError::Parse { line: 8, col: 9, .. })));
        let bad = EX.replace("tree T all", "  tree T all");
        assert!(matches!(parse_text(&bad), Err(UgtError::Parse { line: 9, col: 3, .. })));
        let bad = EX.replace("singletons", "frobnicate");
        match parse_text(&bad) {
            Err(UgtError::Parse { line: 10, col: 1, msg }) => assert!(msg.contains("expected one of")),
            other => panic!("{other:?}"),
        }
        let bad = EX.replace("  b -> zb", "  b -> zz");
        assert!(matches!(parse_text(&bad), Err(UgtError::Game(_)) | Err(UgtError::Parse { .. })));
        assert!(matches!(parse_text("{ not text"), Err(UgtError::Parse { line: 1, col: 1, .. })));
    }

    #[test]
    fn structural_errors_point_at_the_node() {
        let bad = EX.replace("node r 1=a|b", "node r 1=a|b|c");
        match parse_text(&bad) {
            Err(UgtError::Parse { line: 4, col: 1, msg }) => assert!(msg.contains("bijection"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
