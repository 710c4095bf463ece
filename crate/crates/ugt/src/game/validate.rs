//! Axiom checks on a structurally well-formed game.

use std::collections::BTreeSet;
use std::fmt;

use super::{Game, Loc, Player};

/// The thirteen checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Leaves of every tree are terminal in the upmost tree.
    Prop1,
    /// Restricted action profiles biject onto successors in each tree.
    Prop2,
    /// Overlapping action sets within a tree coincide.
    Prop3,
    /// Confined awareness.
    U0,
    /// Generalized reflexivity.
    U1,
    /// Introspection.
    I2,
    /// No divining of unimaginable paths.
    I3,
    /// No imaginary actions.
    I4,
    /// Distinct action names in disjoint sets.
    I5,
    /// Perfect recall.
    I6,
    /// Subtrees preserve ignorance.
    U4,
    /// Subtrees preserve knowledge.
    U5,
    /// Terminal sets agree with own payoff.
    I7,
}

impl Axiom {
    /// All checks in report order.
    pub const ALL: [Axiom; 13] = [
        Axiom::Prop1,
        Axiom::Prop2,
        Axiom::Prop3,
        Axiom::U0,
        Axiom::U1,
        Axiom::I2,
        Axiom::I3,
        Axiom::I4,
        Axiom::I5,
        Axiom::I6,
        Axiom::U4,
        Axiom::U5,
        Axiom::I7,
    ];

    /// Short name.
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Prop1 => "prop1",
            Axiom::Prop2 => "prop2",
            Axiom::Prop3 => "prop3",
            Axiom::U0 => "U0",
            Axiom::U1 => "U1",
            Axiom::I2 => "I2",
            Axiom::I3 => "I3",
            Axiom::I4 => "I4",
            Axiom::I5 => "I5",
            Axiom::I6 => "I6",
            Axiom::U4 => "U4",
            Axiom::U5 => "U5",
            Axiom::I7 => "I7",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Node name.
    pub node: String,
    /// Tree name.
    pub tree: String,
    /// Player concerned, if any.
    pub player: Option<Player>,
    /// What went wrong.
    pub detail: String,
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    /// The check.
    pub axiom: Axiom,
    /// Every failure found; empty on success.
    pub failures: Vec<Witness>,
}

impl CheckResult {
    /// True if no failure was found.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All check results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// One entry per axiom, in [`Axiom::ALL`] order.
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    /// True if every check passed.
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    /// Result of one check.
    pub fn get(&self, a: Axiom) -> &CheckResult {
        self.checks.iter().find(|c| c.axiom == a).expect("all checks present")
    }

    /// Names of failed checks.
    pub fn failed(&self) -> Vec<Axiom> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.axiom).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed() {
                writeln!(f, "{:<6} ok", c.axiom.name())?;
            } else {
                writeln!(f, "{:<6} FAIL ({})", c.axiom.name(), c.failures.len())?;
                for w in &c.failures {
                    let p = w.player.map(|p| format!(" player {p}")).unwrap_or_default();
                    writeln!(f, "       {}@{}{}: {}", w.node, w.tree, p, w.detail)?;
                }
            }
        }
        Ok(())
    }
}

struct Ctx<'a> {
    g: &'a Game,
    out: Vec<Witness>,
}

impl Ctx<'_> {
    fn fail(&mut self, l: Loc, p: Option<Player>, detail: String) {
        self.out.push(Witness {
            node: self.g.node(l.node).name.clone(),
            tree: self.g.trees()[l.tree].name.clone(),
            player: p,
            detail,
        });
    }
}

/// Runs every check and reports all failures.
pub fn validate_game(g: &Game) -> ValidationReport {
    let checks = Axiom::ALL
        .iter()
        .map(|&a| {
            let mut c = Ctx { g, out: Vec::new() };
            match a {
                Axiom::Prop1 => prop1(&mut c),
                Axiom::Prop2 => prop2(&mut c),
                Axiom::Prop3 => prop3(&mut c),
                Axiom::U0 => u0(&mut c),
                Axiom::U1 => u1(&mut c),
                Axiom::I2 => i2(&mut c),
                Axiom::I3 => i3(&mut c),
                Axiom::I4 => i4(&mut c),
                Axiom::I5 => i5(&mut c),
                Axiom::I6 => i6(&mut c),
                Axiom::U4 => u4(&mut c),
                Axiom::U5 => u5(&mut c),
                Axiom::I7 => i7(&mut c),
            }
            CheckResult { axiom: a, failures: c.out }
        })
        .collect();
    ValidationReport { checks }
}

/// Every (copy, player, set) triple.
fn triples(g: &Game) -> Vec<(Loc, Player, usize)> {
    g.assignment().iter().map(|(&(n, t, i), &h)| (Loc::new(n, t), i, h)).collect()
}

fn prop1(c: &mut Ctx) {
    let g = c.g;
    for l in g.locs() {
        if g.is_leaf(l) && !g.node(l.node).is_terminal() {
            c.fail(l, None, "leaf of this tree is not terminal".into());
        }
    }
}

fn prop2(c: &mut Ctx) {
    let g = c.g;
    for l in g.locs() {
        let nd = g.node(l.node);
        if nd.is_terminal() {
            continue;
        }
        let mut product = 1usize;
        for &i in &nd.active {
            let a = g.actions_at(l, i);
            if a.is_empty() {
                c.fail(l, Some(i), "no action available in this tree".into());
            }
            product *= a.len();
        }
        if product != g.children_in(l).len() {
            c.fail(l, None, format!("{} successors for {} restricted profiles", g.children_in(l).len(), product));
        }
    }
}

fn prop3(c: &mut Ctx) {
    let g = c.g;
    for t in g.tree_ids() {
        let dec: Vec<Loc> = g.locs_in(t).filter(|&l| !g.is_leaf(l)).collect();
        for (x, &a) in dec.iter().enumerate() {
            for &b in &dec[x + 1..] {
                for &i in &g.node(a.node).active {
                    if !g.acts(b.node, i) {
                        continue;
                    }
                    let sa: BTreeSet<&String> = g.actions_at(a, i).iter().collect();
                    let sb: BTreeSet<&String> = g.actions_at(b, i).iter().collect();
                    if !sa.is_disjoint(&sb) && sa != sb {
                        c.fail(a, Some(i), format!("overlaps but differs from {}", g.loc_name(b)));
                    }
                }
            }
        }
    }
}

fn u0(c: &mut Ctx) {
    let g = c.g;
    for (l, i, h) in triples(g) {
        let host = g.info_set(h).host;
        if !g.leq(host, l.tree) {
            c.fail(l, Some(i), format!("set hosted in {} which is not below", g.trees()[host].name));
        }
    }
}

fn u1(c: &mut Ctx) {
    let g = c.g;
    for (l, i, h) in triples(g) {
        let s = g.info_set(h);
        if g.leq(s.host, l.tree) && g.in_tree(l.node, s.host) && !s.members.contains(&l.node) {
            c.fail(l, Some(i), format!("own copy missing from {}", g.set_name(h)));
        }
    }
}

fn i2(c: &mut Ctx) {
    let g = c.g;
    for (l, i, h) in triples(g) {
        let s = g.info_set(h);
        for m in s.locs() {
            match g.h(m, i) {
                Some(k) if k == h => {}
                Some(k) => c.fail(l, Some(i), format!("member {} has set {}", g.loc_name(m), g.set_name(k))),
                None => c.fail(l, Some(i), format!("member {} has no set for this player", g.loc_name(m))),
            }
        }
    }
}

fn i3(c: &mut Ctx) {
    let g = c.g;
    for (h, s) in g.info_sets().iter().enumerate() {
        let i = s.player;
        for m in s.locs() {
            if !g.acts(m.node, i) {
                continue;
            }
            for n2 in g.trees()[s.host].nodes.iter().copied() {
                if n2 == m.node || !g.precedes_eq(m.node, n2) {
                    continue;
                }
                let l2 = Loc::new(n2, s.host);
                let active = g.acts(n2, i) || g.node(n2).is_terminal();
                if !active {
                    continue;
                }
                match g.h(l2, i) {
                    Some(k) if g.info_set(k).host == s.host => {}
                    Some(k) => c.fail(
                        l2,
                        Some(i),
                        format!("follows {} but has set {} in another tree", g.set_name(h), g.set_name(k)),
                    ),
                    None => {}
                }
            }
        }
    }
}

fn i4(c: &mut Ctx) {
    let g = c.g;
    for (l, i, h) in triples(g) {
        let own: BTreeSet<&String> = g.actions_at(l, i).iter().collect();
        for m in g.info_set(h).locs() {
            let theirs: BTreeSet<&String> = g.actions_at(m, i).iter().collect();
            if !theirs.is_subset(&own) {
                c.fail(l, Some(i), format!("member {} offers actions not available here", g.loc_name(m)));
            }
        }
    }
}

fn i5(c: &mut Ctx) {
    let g = c.g;
    for t in g.tree_ids() {
        let dec: Vec<Loc> = g.locs_in(t).filter(|&l| !g.node(l.node).is_terminal()).collect();
        for (x, &a) in dec.iter().enumerate() {
            for &b in &dec[x + 1..] {
                for i in g.info_players(a) {
                    if !g.acts(b.node, i) || g.actions_at(a, i) != g.actions_at(b, i) {
                        continue;
                    }
                    if g.h(a, i) != g.h(b, i) {
                        c.fail(a, Some(i), format!("same actions as {} but different set", g.loc_name(b)));
                    }
                }
            }
        }
    }
}

/// Action of `i` at `anc` on the way to `n` within the upmost tree.
fn action_toward(g: &Game, anc: usize, n: usize, i: Player) -> Option<String> {
    let mut cur = n;
    while let Some(p) = g.node(cur).parent {
        if p == anc {
            return g.action_into(cur, i).map(|s| s.to_string());
        }
        cur = p;
    }
    None
}

fn i6(c: &mut Ctx) {
    let g = c.g;
    for (lk, i, hk) in triples(g) {
        for n1 in g.path_to(lk) {
            if !g.acts(n1, i) {
                continue;
            }
            let l1 = Loc::new(n1, lk.tree);
            let Some(h1) = g.h(l1, i) else { continue };
            let a = action_toward(g, n1, lk.node, i).expect("ancestor");
            for m in g.info_set(hk).locs() {
                let ok = g.path_to(m).into_iter().any(|p| {
                    g.acts(p, i)
                        && g.h(Loc::new(p, m.tree), i) == Some(h1)
                        && action_toward(g, p, m.node, i).as_deref() == Some(a.as_str())
                });
                if !ok {
                    c.fail(
                        lk,
                        Some(i),
                        format!(
                            "member {} of its set does not recall {} taken at {}",
                            g.loc_name(m),
                            a,
                            g.loc_name(l1)
                        ),
                    );
                }
            }
        }
    }
}

fn u4(c: &mut Ctx) {
    let g = c.g;
    for (l, i, h) in triples(g) {
        let host = g.info_set(h).host;
        for t in g.tree_ids() {
            if t == l.tree || !g.leq(host, t) || !g.leq(t, l.tree) || !g.in_tree(l.node, t) {
                continue;
            }
            let lt = Loc::new(l.node, t);
            if g.h(lt, i) != Some(h) {
                c.fail(lt, Some(i), format!("differs from the set {} at {}", g.set_name(h), g.loc_name(l)));
            }
        }
    }
}

fn u5(c: &mut Ctx) {
    let g = c.g;
    for (l, i, h) in triples(g) {
        let s = g.info_set(h);
        for t in g.tree_ids() {
            if !g.leq(t, s.host) || !g.in_tree(l.node, t) {
                continue;
            }
            let lt = Loc::new(l.node, t);
            let want: Vec<usize> = s.members.iter().copied().filter(|&m| g.in_tree(m, t)).collect();
            let ok = g.h(lt, i).is_some_and(|k| {
                let ks = g.info_set(k);
                ks.host == t && ks.members == want
            });
            if !ok {
                c.fail(lt, Some(i), format!("set is not the restriction of {} from {}", g.set_name(h), g.loc_name(l)));
            }
        }
    }
}

fn i7(c: &mut Ctx) {
    let g = c.g;
    for (l, i, h) in triples(g) {
        let z = g.node(l.node);
        if !z.is_terminal() {
            continue;
        }
        let s = g.info_set(h);
        for m in s.locs() {
            if !g.is_leaf(m) {
                c.fail(l, Some(i), format!("member {} is not terminal in its tree", g.loc_name(m)));
            } else if g.node(m.node).payoffs[i - 1] != z.payoffs[i - 1] {
                c.fail(l, Some(i), format!("member {} has a different own payoff", g.loc_name(m)));
            }
        }
    }
}
