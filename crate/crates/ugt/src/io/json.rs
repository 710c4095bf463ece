//! Canonical JSON interchange.
//!
//! Keys are sorted, numbers that are payoffs are `"p/q"` strings, and ids
//! are the canonical ones, so equal games serialize to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Diagnostic, Positions};
use crate::error::{Result, UgtError};
use crate::game::{Game, GameBuilder, Player, Provenance};
use crate::num::{fmt_q, parse_q};

/// Version written into every document.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    format_version: u32,
    name: String,
    players: usize,
    nodes: Vec<NodeDoc>,
    trees: Vec<TreeDoc>,
    information_sets: Vec<InfoDoc>,
    provenance: ProvDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: usize,
    name: String,
    parent: Option<usize>,
    #[serde(default)]
    actions: BTreeMap<Player, Vec<String>>,
    #[serde(default)]
    children: Vec<EdgeDoc>,
    #[serde(default)]
    payoffs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    profile: Vec<String>,
    child: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDoc {
    id: usize,
    name: String,
    nodes: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InfoDoc {
    player: Player,
    host: usize,
    members: Vec<usize>,
    at: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ProvDoc {
    #[serde(default)]
    quoted: Vec<String>,
    #[serde(default)]
    constructed: Vec<String>,
    #[serde(default)]
    notes: Vec<String>,
}

fn doc(g: &Game) -> Doc {
    let nodes = g
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, n)| NodeDoc {
            id,
            name: n.name.clone(),
            parent: n.parent,
            actions: n.actions.clone(),
            children: n.children.iter().map(|(p, &c)| EdgeDoc { profile: p.clone(), child: c }).collect(),
            payoffs: n.payoffs.iter().map(fmt_q).collect(),
        })
        .collect();
    let trees = g
        .trees()
        .iter()
        .enumerate()
        .map(|(id, t)| TreeDoc { id, name: t.name.clone(), nodes: t.nodes.iter().copied().collect() })
        .collect();
    let information_sets = g
        .info_sets()
        .iter()
        .enumerate()
        .map(|(h, s)| InfoDoc {
            player: s.player,
            host: s.host,
            members: s.members.clone(),
            at: g.governed(h).into_iter().map(|l| (l.node, l.tree)).collect(),
        })
        .collect();
    let p = &g.provenance;
    Doc {
        format_version: FORMAT_VERSION,
        name: g.name.clone(),
        players: g.num_players(),
        nodes,
        trees,
        information_sets,
        provenance: ProvDoc { quoted: p.quoted.clone(), constructed: p.constructed.clone(), notes: p.notes.clone() },
    }
}

/// Canonical JSON text of `g`, newline-terminated.
pub fn to_canonical_json(g: &Game) -> String {
    // Going through `Value` sorts every object's keys.
    let v = serde_json::to_value(doc(g)).expect("documents serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

/// Parses a JSON document into a game without running the validator.
pub fn parse_json(text: &str) -> Result<(Game, Positions)> {
    let d: Doc = serde_json::from_str(text).map_err(|e| UgtError::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    if d.format_version != FORMAT_VERSION {
        return Err(UgtError::Invalid(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            d.format_version
        )));
    }
    let name_of = |id: usize| -> Result<&str> {
        d.nodes
            .get(id)
            .filter(|n| n.id == id)
            .map(|n| n.name.as_str())
            .ok_or_else(|| UgtError::Invalid(format!("node id {id} is missing or out of order")))
    };
    let tree_of = |id: usize| -> Result<&str> {
        d.trees
            .get(id)
            .filter(|t| t.id == id)
            .map(|t| t.name.as_str())
            .ok_or_else(|| UgtError::Invalid(format!("tree id {id} is missing or out of order")))
    };
    let mut b = GameBuilder::new(&d.name, d.players);
    for (k, n) in d.nodes.iter().enumerate() {
        name_of(k)?;
        if let Some(p) = n.parent {
            name_of(p)?;
        }
        if n.children.is_empty() {
            let pay = n.payoffs.iter().map(|s| parse_q(s)).collect::<std::result::Result<Vec<_>, _>>();
            let pay = pay.map_err(|m| UgtError::Invalid(format!("node `{}`: {m}", n.name)))?;
            b.terminal(&n.name, &pay);
            continue;
        }
        let acts: Vec<(Player, Vec<&str>)> =
            n.actions.iter().map(|(p, a)| (*p, a.iter().map(|s| s.as_str()).collect())).collect();
        let acts: Vec<(Player, &[&str])> = acts.iter().map(|(p, a)| (*p, a.as_slice())).collect();
        b.decision(&n.name, &acts);
        for e in &n.children {
            let prof: Vec<&str> = e.profile.iter().map(|s| s.as_str()).collect();
            let child = name_of(e.child)?;
            if d.nodes[e.child].parent != Some(k) {
                return Err(UgtError::Invalid(format!("node `{child}` does not name `{}` as its parent", n.name)));
            }
            b.edge(&n.name, &prof, child);
        }
    }
    for (k, t) in d.trees.iter().enumerate() {
        tree_of(k)?;
        let names: Vec<&str> = t.nodes.iter().map(|&n| name_of(n)).collect::<Result<_>>()?;
        b.tree(&t.name, &names);
    }
    for s in &d.information_sets {
        let members: Vec<&str> = s.members.iter().map(|&n| name_of(n)).collect::<Result<_>>()?;
        let at: Vec<(&str, &str)> = s.at.iter().map(|&(n, t)| Ok((name_of(n)?, tree_of(t)?))).collect::<Result<_>>()?;
        b.info(s.player, tree_of(s.host)?, &members, &at);
    }
    let p = &d.provenance;
    b.set_provenance(Provenance {
        quoted: p.quoted.clone(),
        constructed: p.constructed.clone(),
        notes: p.notes.clone(),
    });
    let g = b.build()?;
    Ok((g, positions(text)))
}

/// Positions of node entries, found by the canonical `"name": "..."` line.
fn positions(text: &str) -> Positions {
    let mut pos = Positions::default();
    let mut in_nodes = false;
    for (k, line) in text.lines().enumerate() {
        let t = line.trim_start();
        if t.starts_with("\"nodes\": [") && line.len() - t.len() == 2 {
            in_nodes = true;
        } else if line.len() - t.len() == 2 {
            in_nodes = false;
        }
        if !in_nodes {
            continue;
        }
        if let Some(rest) = t.strip_prefix("\"name\": ") {
            if let Ok(name) = serde_json::from_str::<String>(rest.trim_end_matches(',')) {
                pos.nodes.insert(name, Diagnostic::at(k + 1, line.len() - t.len() + 1));
            }
        }
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_round_trip_byte_for_byte() {
        for (name, g) in fixtures::all() {
            let s = to_canonical_json(&g);
            let (back, _) = parse_json(&s).unwrap();
            assert_eq!(back, g, "{name}");
            assert_eq!(back.provenance, g.provenance, "{name}");
            assert_eq!(to_canonical_json(&back), s, "{name}");
        }
    }

    #[test]
    fn keys_are_sorted_and_rationals_are_strings() {
        let s = to_canonical_json(&fixtures::by_name("ex1_initial").unwrap());
        let top: Vec<&str> = s.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim()).collect();
        let mut sorted = top.clone();
        sorted.sort();
        assert_eq!(top, sorted);
        assert!(s.contains("\"10/1\""));
        assert!(s.contains("\"format_version\": 1"));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse_json("{\n  \"name\": ]") {
            Err(UgtError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn node_positions_are_found() {
        let s = to_canonical_json(&fixtures::by_name("ex1_initial").unwrap());
        let (_, pos) = parse_json(&s).unwrap();
        let d = &pos.nodes["r"];
        assert!(s.lines().nth(d.line - 1).unwrap().contains("\"name\": \"r\""));
    }
}
