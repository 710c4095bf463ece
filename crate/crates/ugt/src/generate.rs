//! Seeded random games for property tests.
//!
//! Trees form a chain obtained by pruning actions at single-mover nodes.
//! Every player has, at every node, an awareness cap in the chain that
//! never decreases along a path; a copy's set is the singleton of the same
//! node in the lower of the cap and the copy's tree. Action labels carry the
//! node name, so distinct nodes never share labels.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, UgtError};
use crate::game::{validate_game, Game, GameBuilder, NATURE};
use crate::strategy::Strategies;

/// Shape of generated games.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    /// Real players.
    pub players: usize,
    /// Maximum depth of the upmost tree.
    pub depth: usize,
    /// Maximum actions per mover.
    pub branching: usize,
    /// Number of trees in the chain.
    pub trees: usize,
    /// Allow chance nodes.
    pub nature: bool,
    /// Allow simultaneous moves by two players.
    pub simultaneous: bool,
    /// Give every copy in the upmost tree a set hosted there.
    pub full_awareness: bool,
    /// Reject games with more pure profiles than this.
    pub max_profiles: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            players: 2,
            depth: 3,
            branching: 2,
            trees: 3,
            nature: false,
            simultaneous: true,
            full_awareness: false,
            max_profiles: 4096,
        }
    }
}

/// Limits on [`GenParams`].
pub const MAX_PLAYERS: usize = 4;
/// Maximum depth.
pub const MAX_DEPTH: usize = 5;
/// Maximum branching.
pub const MAX_BRANCHING: usize = 4;
/// Maximum number of trees.
pub const MAX_TREES: usize = 6;
/// Maximum number of nodes.
pub const MAX_NODES: usize = 400;
const RETRIES: usize = 256;

struct Raw {
    name: String,
    parent: Option<usize>,
    active: Vec<(usize, Vec<String>)>,
    children: Vec<(Vec<String>, usize)>,
    payoffs: Vec<i64>,
}

/// A valid game determined by `params` and `seed`.
pub fn generate_random_game(params: GenParams, seed: u64) -> Result<Game> {
    let p = params;
    if p.players == 0
        || p.players > MAX_PLAYERS
        || p.depth == 0
        || p.depth > MAX_DEPTH
        || !(2..=MAX_BRANCHING).contains(&p.branching)
        || p.trees == 0
        || p.trees > MAX_TREES
    {
        return Err(UgtError::Invalid(format!("generator parameters out of range: {p:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRIES {
        let Some(raw) = full_tree(&p, &mut rng) else { continue };
        let g = assemble(&p, &raw, &mut rng, seed)?;
        if small_enough(&g, p.max_profiles) && validate_game(&g).passes() {
            return Ok(g);
        }
    }
    Err(UgtError::Internal(format!("no valid game after {RETRIES} attempts for seed {seed}")))
}

fn small_enough(g: &Game, max: usize) -> bool {
    let st = Strategies::new(g);
    let mut total = 1usize;
    for j in 0..=g.num_players() {
        if st.space(j).cps.len() > 24 {
            return false;
        }
        total = total.saturating_mul(st.plans(j, None).len());
        if total > max {
            return false;
        }
    }
    true
}

fn full_tree(p: &GenParams, rng: &mut ChaCha8Rng) -> Option<Vec<Raw>> {
    let mut nodes = vec![Raw { name: "r".into(), parent: None, active: vec![], children: vec![], payoffs: vec![] }];
    let mut k = 0;
    while k < nodes.len() {
        let depth = {
            let mut d = 0;
            let mut c = k;
            while let Some(q) = nodes[c].parent {
                d += 1;
                c = q;
            }
            d
        };
        let stop = depth >= p.depth || (depth > 0 && rng.gen_bool(0.25));
        if stop {
            nodes[k].payoffs = (0..p.players).map(|_| rng.gen_range(-3..=3)).collect();
            k += 1;
            continue;
        }
        let name = nodes[k].name.clone();
        let movers: Vec<usize> = if p.nature && rng.gen_bool(0.15) {
            vec![NATURE]
        } else if p.simultaneous && p.players >= 2 && rng.gen_bool(0.25) {
            let mut v: Vec<usize> = (1..=p.players).collect();
            v.shuffle(rng);
            let mut v = v[..2].to_vec();
            v.sort();
            v
        } else {
            vec![rng.gen_range(1..=p.players)]
        };
        let mut active = Vec::new();
        for &m in &movers {
            let n = rng.gen_range(2..=p.branching);
            active.push((m, (0..n).map(|a| format!("{name}/{}", (b'a' + a as u8) as char)).collect::<Vec<_>>()));
        }
        let mut profiles: Vec<Vec<String>> = vec![vec![]];
        for (_, acts) in &active {
            profiles = profiles
                .into_iter()
                .flat_map(|pre| {
                    acts.iter().map(move |a| {
                        let mut v = pre.clone();
                        v.push(a.clone());
                        v
                    })
                })
                .collect();
        }
        for prof in profiles {
            let id = nodes.len();
            let child = format!("{name}.{}", prof.iter().map(|a| &a[name.len() + 1..]).collect::<String>());
            nodes.push(Raw { name: child, parent: Some(k), active: vec![], children: vec![], payoffs: vec![] });
            nodes[k].children.push((prof, id));
        }
        nodes[k].active = active;
        if nodes.len() > MAX_NODES {
            return None;
        }
        k += 1;
    }
    Some(nodes)
}

/// Nodes kept when pruning `keep` further.
fn prune(raw: &[Raw], keep: &BTreeSet<usize>, rng: &mut ChaCha8Rng) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut stack = vec![0usize];
    while let Some(n) = stack.pop() {
        out.insert(n);
        let kids: Vec<usize> = raw[n].children.iter().map(|c| c.1).filter(|c| keep.contains(c)).collect();
        if raw[n].active.len() == 1 && kids.len() > 1 && rng.gen_bool(0.4) {
            let mut k = kids.clone();
            k.shuffle(rng);
            let m = rng.gen_range(1..k.len());
            stack.extend(&k[..m]);
        } else {
            stack.extend(kids);
        }
    }
    out
}

fn assemble(p: &GenParams, raw: &[Raw], rng: &mut ChaCha8Rng, seed: u64) -> Result<Game> {
    let all: BTreeSet<usize> = (0..raw.len()).collect();
    // chain[0] is the full tree, later entries shrink.
    let mut chain = vec![all.clone()];
    for _ in 1..p.trees {
        let next = prune(raw, chain.last().unwrap(), rng);
        if !chain.contains(&next) {
            chain.push(next);
        }
    }
    let tname = |k: usize| if k == 0 { "Tbar".to_string() } else { format!("T{k}") };
    let mut b = GameBuilder::new(&format!("gen{seed}"), p.players);
    for (n, r) in raw.iter().enumerate() {
        if r.children.is_empty() {
            b.terminal_i(&r.name, &r.payoffs);
            continue;
        }
        let act: Vec<(usize, Vec<&str>)> =
            r.active.iter().map(|(m, a)| (*m, a.iter().map(|s| s.as_str()).collect())).collect();
        let act_ref: Vec<(usize, &[&str])> = act.iter().map(|(m, a)| (*m, a.as_slice())).collect();
        b.decision(&r.name, &act_ref);
        for (prof, c) in &raw[n].children {
            let pr: Vec<&str> = prof.iter().map(|s| s.as_str()).collect();
            b.edge(&r.name, &pr, &raw[*c].name);
        }
    }
    for (k, t) in chain.iter().enumerate() {
        let names: Vec<&str> = t.iter().map(|&n| raw[n].name.as_str()).collect();
        b.tree(&tname(k), &names);
    }
    b.default_singletons(true).note("generated");
    // Chain index of the smallest tree containing the node.
    let lowest = |n: usize| (0..chain.len()).rev().find(|&k| chain[k].contains(&n)).unwrap();
    for i in 1..=p.players {
        let mut cap = vec![0usize; raw.len()];
        for n in 0..raw.len() {
            let inherited = match raw[n].parent {
                None => rng.gen_range(0..chain.len()),
                Some(q) if !p.full_awareness && rng.gen_bool(0.7) => cap[q],
                Some(q) => rng.gen_range(0..=cap[q]),
            };
            let c = if p.full_awareness { 0 } else { inherited.min(lowest(n)) };
            cap[n] = c;
            let has_set = raw[n].children.is_empty() || raw[n].active.iter().any(|(m, _)| *m == i);
            if !has_set {
                continue;
            }
            for t in 0..chain.len() {
                if !chain[t].contains(&n) {
                    continue;
                }
                let host = t.max(c);
                if host != t {
                    let nm = raw[n].name.as_str();
                    b.info(i, &tname(host), &[nm], &[(nm, &tname(t))]);
                }
            }
        }
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_in_seed() {
        let p = GenParams::default();
        assert_eq!(generate_random_game(p, 0).unwrap(), generate_random_game(p, 0).unwrap());
    }

    #[test]
    fn many_seeds_validate() {
        for seed in 0..200 {
            let p = GenParams { players: 1 + (seed as usize % 3), nature: seed % 2 == 0, ..GenParams::default() };
            let g = generate_random_game(p, seed).unwrap();
            assert!(validate_game(&g).passes(), "seed {seed}");
        }
    }

    #[test]
    fn some_games_have_unawareness() {
        let n = (0..50)
            .filter(|&s| {
                let g = generate_random_game(GenParams::default(), s).unwrap();
                g.info_sets().iter().any(|h| h.host != g.tbar())
                    && g.assignment().iter().any(|(&(_, t, _), &h)| t == g.tbar() && g.info_set(h).host != t)
            })
            .count();
        assert!(n > 10, "{n}");
    }

    #[test]
    fn rejects_bad_params() {
        let p = GenParams { players: 0, ..GenParams::default() };
        assert!(generate_random_game(p, 0).is_err());
    }
}
