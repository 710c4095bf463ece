//! Graphviz renderings. Output depends only on the canonical game, so equal
//! games give identical text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::json::to_canonical_json;
use crate::discovery::{DiscoveryTrace, Supergame};
use crate::fixtures;
use crate::game::{Game, Loc, NodeId};
use crate::num::fmt_q_short;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn id(l: Loc) -> String {
    format!("\"t{}n{}\"", l.tree, l.node)
}

/// The forest: one cluster per tree, information sets as dashed links and
/// sets hosted in another tree as dotted arrows to their first member.
pub fn game_dot(g: &Game) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(&g.name));
    let _ = writeln!(s, "  node [shape=circle, fontsize=10];");
    for (t, tree) in g.trees().iter().enumerate() {
        let _ = writeln!(s, "  subgraph \"cluster_{t}\" {{");
        let _ = writeln!(s, "    label={};", quote(&tree.name));
        for &n in &tree.nodes {
            let l = Loc::new(n, t);
            let nd = g.node(n);
            let label = if g.is_leaf(l) {
                let p: Vec<String> = nd.payoffs.iter().map(fmt_q_short).collect();
                format!("{}\\n({})", nd.name, p.join(","))
            } else {
                let who: Vec<String> =
                    nd.active.iter().map(|p| if *p == 0 { "N".into() } else { p.to_string() }).collect();
                format!("{}\\n{}", nd.name, who.join("+"))
            };
            let shape = if g.is_leaf(l) { ", shape=box" } else { "" };
            let _ = writeln!(s, "    {} [label=\"{}\"{}];", id(l), label.replace('"', "\\\""), shape);
        }
        for &n in &tree.nodes {
            for &c in g.children_in(Loc::new(n, t)) {
                let lab = g.incoming(c).map(|p| p.join(",")).unwrap_or_default();
                let _ = writeln!(s, "    {} -> {} [label={}];", id(Loc::new(n, t)), id(Loc::new(c, t)), quote(&lab));
            }
        }
        let _ = writeln!(s, "  }}");
    }
    for (h, set) in g.info_sets().iter().enumerate() {
        if !g.is_decision_set(h) {
            continue;
        }
        let first = Loc::new(set.members[0], set.host);
        for w in set.members.windows(2) {
            let _ = writeln!(
                s,
                "  {} -> {} [style=dashed, dir=none, constraint=false, label=\"{}\"];",
                id(Loc::new(w[0], set.host)),
                id(Loc::new(w[1], set.host)),
                set.player
            );
        }
        for l in g.governed(h) {
            if l.tree != set.host {
                let _ = writeln!(
                    s,
                    "  {} -> {} [style=dotted, color=gray40, constraint=false, label=\"{}\"];",
                    id(l),
                    id(first),
                    set.player
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Short stable digest of the structure (FNV-1a over the canonical JSON
/// with name and provenance cleared, 32 bits shown).
pub fn game_hash(g: &Game) -> String {
    let mut bare = g.clone();
    bare.name.clear();
    bare.provenance = Default::default();
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in to_canonical_json(&bare).bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{:08x}", h >> 32)
}

/// Fixture name of a structurally equal fixture, else `#hash`.
pub fn state_label(g: &Game) -> String {
    fixtures::all()
        .into_iter()
        .find(|(_, f)| f == g)
        .map(|(n, _)| n.to_string())
        .unwrap_or_else(|| format!("#{}", game_hash(g)))
}

/// Action labels along an upmost-tree path.
pub fn path_label(g: &Game, path: &[NodeId]) -> String {
    path.iter().skip(1).filter_map(|&n| g.incoming(n).map(|p| p.join(","))).collect::<Vec<_>>().join(" ")
}

/// States labelled by [`state_label`], edges by representative path.
pub fn supergame_dot(sg: &Supergame) -> String {
    let mut s = String::from("digraph supergame {\n  node [shape=box];\n");
    for (k, g) in sg.states.iter().enumerate() {
        let _ = writeln!(s, "  s{k} [label={}];", quote(&state_label(g)));
    }
    for e in &sg.edges {
        let lab = path_label(&sg.states[e.from], &e.class.path);
        let _ = writeln!(s, "  s{} -> s{} [label={}];", e.from, e.to, quote(&lab));
    }
    s.push_str("}\n");
    s
}

/// Visited states and sampled transitions, each labelled with the stages
/// at which it was taken.
pub fn trace_dot(tr: &DiscoveryTrace) -> String {
    let mut s = String::from("digraph discovery {\n  node [shape=box];\n");
    for (k, g) in tr.states.iter().enumerate() {
        let extra = if k == tr.absorbing { ", peripheries=2" } else { "" };
        let _ = writeln!(s, "  s{k} [label={}{extra}];", quote(&state_label(g)));
    }
    let mut edges: BTreeMap<(usize, usize, String), Vec<usize>> = BTreeMap::new();
    for (k, st) in tr.steps.iter().enumerate() {
        let lab = path_label(&tr.states[st.state], &st.path);
        edges.entry((st.state, st.next, lab)).or_default().push(k + 1);
    }
    for ((a, b, lab), stages) in edges {
        let when = if stages.len() > 3 {
            format!("{}..{} ({}x)", stages[0], stages[stages.len() - 1], stages.len())
        } else {
            stages.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        let _ = writeln!(s, "  s{a} -> s{b} [label={}];", quote(&format!("{lab} @{when}")));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discovery::{build_supergame, Policy};
    use crate::fixtures::by_name;

    #[test]
    fn game_dot_is_deterministic_and_complete() {
        let g = by_name("ex1_initial").unwrap();
        let a = game_dot(&g);
        assert_eq!(a, game_dot(&by_name("ex1_initial").unwrap()));
        assert!(a.starts_with("digraph \"ex1_initial\" {"));
        assert_eq!(a.matches("subgraph").count(), g.trees().len());
        assert!(a.contains("style=dotted"));
        assert!(a.contains("[label=\"m2\"]"));
    }

    #[test]
    fn supergame_states_use_fixture_names() {
        let sg = build_supergame(&by_name("ex2_initial").unwrap(), &Policy::Efr).unwrap();
        let d = supergame_dot(&sg);
        assert!(d.contains("label=\"ex2_initial\""));
        assert!(d.contains("label=\"ex2_rsc\""));
        let mut g = by_name("ex1_initial").unwrap();
        g.name = "other".into();
        assert_eq!(state_label(&g), "ex1_initial");
        assert!(state_label(&by_name("ex1_initial").unwrap()).len() > 1);
        assert_eq!(game_hash(&g), game_hash(&by_name("ex1_initial").unwrap()));
        assert_ne!(game_hash(&g), game_hash(&by_name("ex1_discovered").unwrap()));
    }
}
