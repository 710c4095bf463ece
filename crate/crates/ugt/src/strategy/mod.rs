//! Pure strategies, play, and the reach / occur semantics.
//!
//! Pure strategies are stored in reduced form ([`Plan`]): a choice is
//! recorded exactly at the choice points the player's own moves can reach in
//! some tree. Strategies that differ only at choice points their own moves
//! exclude behave identically in every tree against every opponent, so this
//! is the quotient by realization equivalence.

pub mod behavior;
pub mod belief;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Result, UgtError};
use crate::game::{Game, Loc, NodeId, Player, TreeId, NATURE};

pub use behavior::{
    behavior_to_mixed, expected_payoff_in, expected_tbar_payoff, kuhn_convert, mixed_to_behavior,
    occurring_sets_behavior, reach_probability, reach_probability_profile, Behavior, BehaviorProfile, Converted, Mixed,
    Strat,
};
pub use belief::{
    column_reaches, continuations, expected_payoff_at, is_rational_at, local_sets, payoff_in, payoff_row, BeliefSystem,
    Partial,
};

/// A reduced pure strategy: one optional action index per choice point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Plan(pub Vec<Option<usize>>);

/// One plan per player, indexed by player (`0` is nature).
pub type Profile = Vec<Plan>;

/// What a choice point stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CpKind {
    /// A decision information set of a real player.
    Set(usize),
    /// A decision copy of nature.
    Nature(Loc),
}

/// A place where a player picks an action.
#[derive(Clone, Debug)]
pub struct ChoicePoint {
    /// Origin.
    pub kind: CpKind,
    /// Available labels, sorted.
    pub actions: Vec<String>,
    /// Copies at which this choice is executed.
    pub governs: Vec<Loc>,
}

/// Choice points and precomputed own-move constraints of one player.
#[derive(Clone, Debug)]
pub struct PlayerSpace {
    /// Owner.
    pub player: Player,
    /// Choice points in canonical order.
    pub cps: Vec<ChoicePoint>,
    cp_at: Vec<Option<usize>>,
    own: Vec<Vec<(usize, usize)>>,
}

/// Strategy spaces of all players of a game.
#[derive(Clone, Debug)]
pub struct Strategies {
    nn: usize,
    trees: usize,
    /// Index `0` is nature (possibly with no choice points).
    pub spaces: Vec<PlayerSpace>,
}

impl Strategies {
    /// Builds the choice points of every player.
    pub fn new(g: &Game) -> Strategies {
        let nn = g.nodes().len();
        let nt = g.trees().len();
        let idx = |l: Loc| l.tree * nn + l.node;
        let mut spaces = Vec::new();
        for j in 0..=g.num_players() {
            let mut cps: Vec<ChoicePoint> = Vec::new();
            let mut cp_at = vec![None; nn * nt];
            if j == NATURE {
                for l in g.locs() {
                    if g.acts(l.node, NATURE) && !g.is_leaf(l) {
                        cp_at[idx(l)] = Some(cps.len());
                        cps.push(ChoicePoint {
                            kind: CpKind::Nature(l),
                            actions: g.actions_at(l, NATURE).to_vec(),
                            governs: vec![l],
                        });
                    }
                }
            } else {
                for h in g.decision_sets_of(j) {
                    let governs: Vec<Loc> =
                        g.governed(h).into_iter().filter(|l| g.acts(l.node, j) && !g.is_leaf(*l)).collect();
                    for &l in &governs {
                        cp_at[idx(l)] = Some(cps.len());
                    }
                    cps.push(ChoicePoint { kind: CpKind::Set(h), actions: g.set_actions(h).to_vec(), governs });
                }
            }
            let mut own = vec![Vec::new(); nn * nt];
            for l in g.locs() {
                let mut cons = Vec::new();
                for p in g.path_to(l) {
                    if !g.acts(p, j) {
                        continue;
                    }
                    let pl = Loc::new(p, l.tree);
                    let Some(c) = cp_at[idx(pl)] else { continue };
                    let label = action_toward(g, p, l.node, j);
                    // An action missing from the set's labels can never be
                    // chosen; encode it as out of range.
                    let a = cps[c].actions.iter().position(|x| *x == label).unwrap_or(usize::MAX);
                    cons.push((c, a));
                }
                own[idx(l)] = cons;
            }
            spaces.push(PlayerSpace { player: j, cps, cp_at, own });
        }
        Strategies { nn, trees: nt, spaces }
    }

    fn idx(&self, l: Loc) -> usize {
        l.tree * self.nn + l.node
    }

    /// Number of trees of the underlying game.
    pub fn num_trees(&self) -> usize {
        self.trees
    }

    /// Space of player `j`.
    pub fn space(&self, j: Player) -> &PlayerSpace {
        &self.spaces[j]
    }

    /// Choice point of `j` governing the copy.
    pub fn cp(&self, j: Player, l: Loc) -> Option<usize> {
        self.spaces[j].cp_at[self.idx(l)]
    }

    /// `(choice point, action)` pairs `j` must play on the way to `l`.
    pub fn own_constraints(&self, j: Player, l: Loc) -> &[(usize, usize)] {
        &self.spaces[j].own[self.idx(l)]
    }

    /// True if the plan's own moves lead to `l`.
    pub fn reached_by(&self, j: Player, plan: &Plan, l: Loc) -> bool {
        self.own_constraints(j, l).iter().all(|&(c, a)| plan.0[c] == Some(a))
    }

    /// True if the plan reaches some copy governed by `c` within `trees`.
    pub fn cp_reached(&self, j: Player, plan: &Plan, c: usize, trees: Option<&BTreeSet<TreeId>>) -> bool {
        self.spaces[j].cps[c]
            .governs
            .iter()
            .filter(|l| trees.is_none_or(|t| t.contains(&l.tree)))
            .any(|&l| self.reached_by(j, plan, l))
    }

    /// Drops choices the plan's own moves cannot reach within `trees`.
    pub fn reduce(&self, j: Player, plan: &Plan, trees: Option<&BTreeSet<TreeId>>) -> Plan {
        let n = self.spaces[j].cps.len();
        Plan(
            (0..n)
                .map(|c| if plan.0[c].is_some() && self.cp_reached(j, plan, c, trees) { plan.0[c] } else { None })
                .collect(),
        )
    }

    /// All reduced plans of `j` counting only copies in `trees`.
    pub fn plans(&self, j: Player, trees: Option<&BTreeSet<TreeId>>) -> Vec<Plan> {
        let n = self.spaces[j].cps.len();
        let free = vec![true; n];
        self.complete(j, &Plan(vec![None; n]), &free, trees)
    }

    /// Every way to fill the `free` choice points of `base` that the
    /// resulting plan's own moves reach (within `trees`). Non-free entries of
    /// `base` are kept.
    pub fn complete(&self, j: Player, base: &Plan, free: &[bool], trees: Option<&BTreeSet<TreeId>>) -> Vec<Plan> {
        let mut out = Vec::new();
        let mut cur = base.clone();
        for (c, f) in free.iter().enumerate() {
            if *f {
                cur.0[c] = None;
            }
        }
        let mut done = vec![false; free.len()];
        self.complete_rec(j, &mut cur, free, &mut done, trees, &mut out);
        out
    }

    fn complete_rec(
        &self,
        j: Player,
        cur: &mut Plan,
        free: &[bool],
        done: &mut Vec<bool>,
        trees: Option<&BTreeSet<TreeId>>,
        out: &mut Vec<Plan>,
    ) {
        let next = (0..free.len()).find(|&c| free[c] && !done[c] && self.cp_reached(j, cur, c, trees));
        match next {
            None => out.push(cur.clone()),
            Some(c) => {
                done[c] = true;
                for a in 0..self.spaces[j].cps[c].actions.len() {
                    cur.0[c] = Some(a);
                    self.complete_rec(j, cur, free, done, trees, out);
                }
                cur.0[c] = None;
                done[c] = false;
            }
        }
    }

    /// Label chosen by `j` at copy `l`, if the plan specifies one.
    pub fn label_at<'a>(&'a self, j: Player, plan: &Plan, l: Loc) -> Option<&'a str> {
        let c = self.cp(j, l)?;
        let a = plan.0[c]?;
        self.spaces[j].cps[c].actions.get(a).map(|s| s.as_str())
    }

    /// Converts a total assignment keyed by choice point into a plan.
    pub fn plan_from_labels(&self, j: Player, labels: &BTreeMap<usize, String>) -> Result<Plan> {
        let sp = &self.spaces[j];
        let mut raw = vec![None; sp.cps.len()];
        for (&c, lab) in labels {
            let a = sp.cps[c]
                .actions
                .iter()
                .position(|x| x == lab)
                .ok_or_else(|| UgtError::Invalid(format!("player {j}: `{lab}` not available")))?;
            raw[c] = Some(a);
        }
        let plan = Plan(raw);
        for c in 0..sp.cps.len() {
            if plan.0[c].is_none() && self.cp_reached(j, &plan, c, None) {
                return Err(UgtError::Invalid(format!(
                    "player {j}: no action given at a reachable choice point ({})",
                    c
                )));
            }
        }
        Ok(self.reduce(j, &plan, None))
    }
}

/// Label of `i` on the way from `anc` to its descendant `n`.
pub(crate) fn action_toward(g: &Game, anc: NodeId, n: NodeId, i: Player) -> String {
    let mut cur = n;
    while let Some(p) = g.node(cur).parent {
        if p == anc {
            return g.action_into(cur, i).unwrap_or_default().to_string();
        }
        cur = p;
    }
    String::new()
}

/// Play of a profile in one tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    /// Visited nodes from the root.
    pub nodes: Vec<NodeId>,
    /// Final leaf, if play is fully determined.
    pub terminal: Option<NodeId>,
}

/// Context bundling a game with its strategy spaces.
#[derive(Clone, Debug)]
pub struct Ctx<'a> {
    /// The game.
    pub g: &'a Game,
    /// Its strategy spaces.
    pub st: Strategies,
}

impl<'a> Ctx<'a> {
    /// Builds the context.
    pub fn new(g: &'a Game) -> Self {
        Ctx { g, st: Strategies::new(g) }
    }

    /// Successor of copy `l` under the chosen labels, if all are specified.
    pub fn step(&self, profile: &[Option<&Plan>], l: Loc) -> Option<NodeId> {
        let nd = self.g.node(l.node);
        let mut labels = Vec::with_capacity(nd.active.len());
        for &j in &nd.active {
            let plan = profile.get(j).copied().flatten()?;
            labels.push(self.st.label_at(j, plan, l)?.to_string());
        }
        let c = self.g.successor(l.node, &labels)?;
        self.g.in_tree(c, l.tree).then_some(c)
    }

    /// Play in `tree` from its root until a leaf or an unspecified move.
    pub fn play(&self, profile: &Profile, tree: TreeId) -> Play {
        let p: Vec<Option<&Plan>> = profile.iter().map(Some).collect();
        self.play_partial(&p, tree)
    }

    /// Play with possibly missing players.
    pub fn play_partial(&self, profile: &[Option<&Plan>], tree: TreeId) -> Play {
        let mut n = self.g.tree_root(tree);
        let mut nodes = vec![n];
        loop {
            let l = Loc::new(n, tree);
            if self.g.is_leaf(l) {
                return Play { nodes, terminal: Some(n) };
            }
            match self.step(profile, l) {
                Some(c) => {
                    n = c;
                    nodes.push(n);
                }
                None => return Play { nodes, terminal: None },
            }
        }
    }

    /// Realized path in the upmost tree.
    pub fn tbar_path(&self, profile: &Profile) -> Vec<NodeId> {
        self.play(profile, self.g.tbar()).nodes
    }

    /// Subjective reach of a copy. Missing players (`None`) are quantified
    /// existentially.
    pub fn reaches_loc(&self, profile: &[Option<&Plan>], l: Loc) -> bool {
        (0..profile.len()).all(|j| match profile[j] {
            Some(plan) => j >= self.st.spaces.len() || self.st.reached_by(j, plan, l),
            None => true,
        })
    }

    /// Subjective reach of an information set: some member is reached.
    pub fn reaches_set(&self, profile: &[Option<&Plan>], h: usize) -> bool {
        self.g.info_set(h).locs().any(|l| self.reaches_loc(profile, l))
    }

    /// Objective occurrence of a copy: its node lies on the realized path of
    /// the upmost tree.
    pub fn occurs_loc(&self, profile: &Profile, l: Loc) -> bool {
        self.tbar_path(profile).contains(&l.node)
    }

    /// Objective occurrence of an information set: it is the set of some
    /// node on the realized path of the upmost tree.
    pub fn occurs_set(&self, profile: &Profile, h: usize) -> bool {
        let i = self.g.info_set(h).player;
        let t = self.g.tbar();
        self.tbar_path(profile).iter().any(|&n| self.g.h(Loc::new(n, t), i) == Some(h))
    }

    /// `H̃_i(s)`: sets of `i` met along the realized path.
    pub fn occurring_sets(&self, profile: &Profile, i: Player) -> BTreeSet<usize> {
        let t = self.g.tbar();
        self.tbar_path(profile).iter().filter_map(|&n| self.g.h(Loc::new(n, t), i)).collect()
    }

    /// `H_i(s)`: sets of `i` reached by the profile.
    pub fn reached_sets(&self, profile: &Profile, i: Player) -> BTreeSet<usize> {
        let p: Vec<Option<&Plan>> = profile.iter().map(Some).collect();
        self.g.sets_of(i).into_iter().filter(|&h| self.reaches_set(&p, h)).collect()
    }

    /// Full plans of every player (nature included).
    pub fn all_plans(&self) -> Vec<Vec<Plan>> {
        (0..=self.g.num_players()).map(|j| self.st.plans(j, None)).collect()
    }

    /// Renders a plan as `set=label` pairs.
    pub fn show_plan(&self, j: Player, plan: &Plan) -> String {
        let sp = self.st.space(j);
        let mut parts = Vec::new();
        for (c, a) in plan.0.iter().enumerate() {
            if let Some(a) = a {
                let at = match &sp.cps[c].kind {
                    CpKind::Set(h) => self.g.set_name(*h),
                    CpKind::Nature(l) => self.g.loc_name(*l),
                };
                parts.push(format!("{at}={}", sp.cps[c].actions[*a]));
            }
        }
        parts.join(" ")
    }

    /// Action label chosen at `h` by a plan, if any.
    pub fn choice_at_set(&self, plan: &Plan, h: usize) -> Option<&str> {
        let j = self.g.info_set(h).player;
        let c = self.st.space(j).cps.iter().position(|cp| cp.kind == CpKind::Set(h))?;
        plan.0[c].map(|a| self.st.space(j).cps[c].actions[a].as_str())
    }

    /// Choice point index of a decision set.
    pub fn cp_of_set(&self, h: usize) -> Option<usize> {
        let j = self.g.info_set(h).player;
        self.st.space(j).cps.iter().position(|cp| cp.kind == CpKind::Set(h))
    }

    /// Builds a plan from `(node, tree) -> label` pairs, resolving each copy
    /// to the choice point governing it.
    pub fn plan_from_copies(&self, j: Player, choices: &[(&str, &str, &str)]) -> Result<Plan> {
        let mut labels = BTreeMap::new();
        for &(n, t, a) in choices {
            let node = self.g.node_by_name(n).ok_or_else(|| UgtError::Invalid(format!("unknown node `{n}`")))?;
            let tree = self.g.tree_by_name(t).ok_or_else(|| UgtError::Invalid(format!("unknown tree `{t}`")))?;
            let c = self
                .st
                .cp(j, Loc::new(node, tree))
                .ok_or_else(|| UgtError::Invalid(format!("player {j} does not move at {n}@{t}")))?;
            if let Some(prev) = labels.insert(c, a.to_string()) {
                if prev != a {
                    return Err(UgtError::Invalid(format!("conflicting choices for player {j} at {n}@{t}")));
                }
            }
        }
        self.plan_with_defaults(j, &labels)
    }

    /// Completes a partial assignment: unspecified reachable choice points
    /// get their first action.
    fn plan_with_defaults(&self, j: Player, labels: &BTreeMap<usize, String>) -> Result<Plan> {
        let sp = self.st.space(j);
        let mut raw = vec![None; sp.cps.len()];
        for (&c, lab) in labels {
            let a = sp.cps[c]
                .actions
                .iter()
                .position(|x| x == lab)
                .ok_or_else(|| UgtError::Invalid(format!("player {j}: `{lab}` not available")))?;
            raw[c] = Some(a);
        }
        let mut plan = Plan(raw);
        loop {
            let missing = (0..sp.cps.len()).find(|&c| plan.0[c].is_none() && self.st.cp_reached(j, &plan, c, None));
            match missing {
                Some(c) => plan.0[c] = Some(0),
                None => break,
            }
        }
        Ok(self.st.reduce(j, &plan, None))
    }
}
