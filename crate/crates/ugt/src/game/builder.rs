use std::collections::{BTreeMap, BTreeSet};

use super::{Game, InfoSet, Loc, Node, NodeId, Player, Provenance, Tree, TreeId};
use crate::error::GameError;
use crate::num::Q;

#[derive(Clone, Debug)]
enum TreeSpec {
    Nodes(Vec<String>),
    Without(Vec<String>),
}

#[derive(Clone, Debug, Default)]
struct NodeSpec {
    name: String,
    active: Vec<(Player, Vec<String>)>,
    edges: Vec<(Vec<String>, String)>,
    payoffs: Option<Vec<Q>>,
}

#[derive(Clone, Debug)]
struct InfoSpec {
    player: Player,
    host: String,
    members: Vec<String>,
    at: Vec<(String, String)>,
}

/// Name-based construction of a [`Game`].
///
/// ```
/// use ugt::game::GameBuilder;
/// let mut b = GameBuilder::new("tiny", 1);
/// b.decision("r", &[(1, &["a", "b"])]);
/// b.edge("r", &["a"], "za").edge("r", &["b"], "zb");
/// b.terminal_i("za", &[1]).terminal_i("zb", &[0]);
/// b.tree_all("T");
/// b.default_singletons(true);
/// let g = b.build().unwrap();
/// assert_eq!(g.nodes().len(), 3);
/// ```
#[derive(Clone, Debug)]
pub struct GameBuilder {
    name: String,
    players: usize,
    nodes: Vec<NodeSpec>,
    trees: Vec<(String, TreeSpec)>,
    info: Vec<InfoSpec>,
    default_singleton: bool,
    provenance: Provenance,
}

impl GameBuilder {
    /// Starts an empty game with `players` real players.
    pub fn new(name: &str, players: usize) -> Self {
        GameBuilder {
            name: name.to_string(),
            players,
            nodes: Vec::new(),
            trees: Vec::new(),
            info: Vec::new(),
            default_singleton: false,
            provenance: Provenance::default(),
        }
    }

    fn spec(&mut self, name: &str) -> &mut NodeSpec {
        if let Some(i) = self.nodes.iter().position(|n| n.name == name) {
            return &mut self.nodes[i];
        }
        self.nodes.push(NodeSpec { name: name.to_string(), ..Default::default() });
        self.nodes.last_mut().unwrap()
    }

    /// Declares a decision node with action labels per active player.
    pub fn decision(&mut self, name: &str, active: &[(Player, &[&str])]) -> &mut Self {
        let s = self.spec(name);
        s.active = active.iter().map(|(p, a)| (*p, a.iter().map(|x| x.to_string()).collect())).collect();
        self
    }

    /// Adds a successor edge labelled by a profile ordered by ascending player.
    pub fn edge(&mut self, from: &str, profile: &[&str], to: &str) -> &mut Self {
        let prof = profile.iter().map(|x| x.to_string()).collect();
        self.spec(from).edges.push((prof, to.to_string()));
        self.spec(to);
        self
    }

    /// Declares a terminal node with exact payoffs.
    pub fn terminal(&mut self, name: &str, payoffs: &[Q]) -> &mut Self {
        self.spec(name).payoffs = Some(payoffs.to_vec());
        self
    }

    /// Declares a terminal node with integer payoffs.
    pub fn terminal_i(&mut self, name: &str, payoffs: &[i64]) -> &mut Self {
        let v: Vec<Q> = payoffs.iter().map(|&x| crate::num::q(x)).collect();
        self.terminal(name, &v)
    }

    /// Adds a tree given by its nodes.
    pub fn tree(&mut self, name: &str, nodes: &[&str]) -> &mut Self {
        let v = nodes.iter().map(|x| x.to_string()).collect();
        self.trees.push((name.to_string(), TreeSpec::Nodes(v)));
        self
    }

    /// Adds the tree of all nodes.
    pub fn tree_all(&mut self, name: &str) -> &mut Self {
        self.trees.push((name.to_string(), TreeSpec::Without(Vec::new())));
        self
    }

    /// Adds the tree obtained by cutting the subtrees rooted at `cut`.
    pub fn tree_without(&mut self, name: &str, cut: &[&str]) -> &mut Self {
        let v = cut.iter().map(|x| x.to_string()).collect();
        self.trees.push((name.to_string(), TreeSpec::Without(v)));
        self
    }

    /// Adds an information set of `player` with `members` in `host`,
    /// assigned to the copies listed in `at` as `(node, tree)`.
    pub fn info(&mut self, player: Player, host: &str, members: &[&str], at: &[(&str, &str)]) -> &mut Self {
        self.info.push(InfoSpec {
            player,
            host: host.to_string(),
            members: members.iter().map(|x| x.to_string()).collect(),
            at: at.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect(),
        });
        self
    }

    /// When set, every copy without an explicit set gets the singleton of
    /// itself in its own tree.
    pub fn default_singletons(&mut self, on: bool) -> &mut Self {
        self.default_singleton = on;
        self
    }

    /// Records a quoted value.
    pub fn quoted(&mut self, s: &str) -> &mut Self {
        self.provenance.quoted.push(s.to_string());
        self
    }

    /// Records a constructed value.
    pub fn constructed(&mut self, s: &str) -> &mut Self {
        self.provenance.constructed.push(s.to_string());
        self
    }

    /// Adds a note.
    pub fn note(&mut self, s: &str) -> &mut Self {
        self.provenance.notes.push(s.to_string());
        self
    }

    /// Replaces the provenance block.
    pub fn set_provenance(&mut self, p: Provenance) -> &mut Self {
        self.provenance = p;
        self
    }

    /// Builder reproducing an existing game.
    pub fn from_game(g: &Game) -> Self {
        let mut b = GameBuilder::new(&g.name, g.players);
        b.provenance = g.provenance.clone();
        for nd in &g.nodes {
            let s = b.spec(&nd.name);
            s.active = nd.actions.iter().map(|(p, a)| (*p, a.clone())).collect();
            if nd.is_terminal() {
                s.payoffs = Some(nd.payoffs.clone());
            }
        }
        for nd in &g.nodes {
            for (prof, &c) in &nd.children {
                let cname = g.nodes[c].name.clone();
                b.spec(&nd.name).edges.push((prof.clone(), cname));
            }
        }
        for t in &g.trees {
            let v = t.nodes.iter().map(|&n| g.nodes[n].name.clone()).collect();
            b.trees.push((t.name.clone(), TreeSpec::Nodes(v)));
        }
        for (h, s) in g.info_sets.iter().enumerate() {
            let at = g
                .governed(h)
                .into_iter()
                .map(|l| (g.nodes[l.node].name.clone(), g.trees[l.tree].name.clone()))
                .collect();
            b.info.push(InfoSpec {
                player: s.player,
                host: g.trees[s.host].name.clone(),
                members: s.members.iter().map(|&n| g.nodes[n].name.clone()).collect(),
                at,
            });
        }
        b
    }

    /// Builder for the game on tree `t` with the trees in `keep` (which must
    /// contain `t` and only trees below it).
    pub(crate) fn partial_of(g: &Game, t: TreeId, keep: &BTreeSet<TreeId>) -> Self {
        let mut b = GameBuilder::new(&g.name, g.players);
        b.provenance = g.provenance.clone();
        for &n in &g.trees[t].nodes {
            let l = Loc::new(n, t);
            let nd = &g.nodes[n];
            let s = b.spec(&nd.name);
            if g.is_leaf(l) {
                if nd.is_terminal() {
                    s.payoffs = Some(nd.payoffs.clone());
                }
            } else {
                s.active = nd.active.iter().map(|&i| (i, g.actions_at(l, i).to_vec())).collect();
            }
        }
        for &n in &g.trees[t].nodes {
            for (prof, &c) in &g.nodes[n].children {
                if g.in_tree(c, t) {
                    let cname = g.nodes[c].name.clone();
                    b.spec(&g.nodes[n].name).edges.push((prof.clone(), cname));
                }
            }
        }
        for &k in keep {
            let v = g.trees[k].nodes.iter().map(|&n| g.nodes[n].name.clone()).collect();
            b.trees.push((g.trees[k].name.clone(), TreeSpec::Nodes(v)));
        }
        for (h, s) in g.info_sets.iter().enumerate() {
            if !keep.contains(&s.host) {
                continue;
            }
            let at: Vec<(String, String)> = g
                .governed(h)
                .into_iter()
                .filter(|l| keep.contains(&l.tree))
                .map(|l| (g.nodes[l.node].name.clone(), g.trees[l.tree].name.clone()))
                .collect();
            if at.is_empty() {
                continue;
            }
            b.info.push(InfoSpec {
                player: s.player,
                host: g.trees[s.host].name.clone(),
                members: s.members.iter().map(|&n| g.nodes[n].name.clone()).collect(),
                at,
            });
        }
        b
    }

    /// Drops trees whose name fails the predicate, together with every
    /// information set hosted in or assigned to them.
    pub fn retain_trees(&mut self, keep: impl Fn(&str) -> bool) -> &mut Self {
        self.trees.retain(|(n, _)| keep(n));
        self.info.retain(|s| keep(&s.host));
        for s in &mut self.info {
            s.at.retain(|(_, t)| keep(t));
        }
        self.info.retain(|s| !s.at.is_empty());
        self
    }

    /// Checks structure and produces the canonical game.
    pub fn build(&self) -> Result<Game, GameError> {
        let nn = self.nodes.len();
        let mut idx: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, s) in self.nodes.iter().enumerate() {
            if idx.insert(&s.name, i).is_some() {
                return Err(GameError::DuplicateNode(s.name.clone()));
            }
        }
        let bad = |n: &str, m: &str| GameError::BadNode { node: n.to_string(), msg: m.to_string() };
        let nonbij = |n: &str, m: String| GameError::NonBijective { node: n.to_string(), msg: m };

        // Raw nodes in declaration order.
        let mut parent: Vec<Option<usize>> = vec![None; nn];
        let mut raw: Vec<Node> = Vec::with_capacity(nn);
        let mut raw_children: Vec<BTreeMap<Vec<String>, usize>> = vec![BTreeMap::new(); nn];
        for (i, s) in self.nodes.iter().enumerate() {
            let mut actions: BTreeMap<Player, Vec<String>> = BTreeMap::new();
            for (p, a) in &s.active {
                if *p > self.players {
                    return Err(GameError::BadPlayer(*p));
                }
                let set: BTreeSet<&String> = a.iter().collect();
                if a.is_empty() || set.len() != a.len() {
                    return Err(bad(&s.name, &format!("player {p} needs distinct, non-empty labels")));
                }
                if actions.insert(*p, a.clone()).is_some() {
                    return Err(bad(&s.name, &format!("player {p} listed twice")));
                }
            }
            let active: Vec<Player> = actions.keys().copied().collect();
            for (prof, to) in &s.edges {
                if prof.len() != active.len() {
                    return Err(nonbij(&s.name, format!("profile {prof:?} has wrong length")));
                }
                for (k, &i) in active.iter().enumerate() {
                    if !actions[&i].contains(&prof[k]) {
                        return Err(nonbij(&s.name, format!("`{}` is not an action of player {i}", prof[k])));
                    }
                }
                let c = *idx.get(to.as_str()).ok_or_else(|| GameError::UnknownNode(to.clone()))?;
                if raw_children[i].insert(prof.clone(), c).is_some() {
                    return Err(nonbij(&s.name, format!("profile {prof:?} used twice")));
                }
                if parent[c].is_some() {
                    return Err(bad(to, "has two parents"));
                }
                parent[c] = Some(i);
            }
            let expected: usize = actions.values().map(|a| a.len()).product();
            if !active.is_empty() && raw_children[i].len() != expected {
                return Err(nonbij(
                    &s.name,
                    format!("{} of {} profiles have successors", raw_children[i].len(), expected),
                ));
            }
            if active.is_empty() && !raw_children[i].is_empty() {
                return Err(bad(&s.name, "has successors but no active player"));
            }
            let payoffs = match (&s.payoffs, active.is_empty()) {
                (Some(p), true) => {
                    if p.len() != self.players {
                        return Err(bad(&s.name, "payoff vector has wrong length"));
                    }
                    p.clone()
                }
                (Some(_), false) => return Err(bad(&s.name, "decision node with payoffs")),
                (None, true) => return Err(bad(&s.name, "neither decision nor terminal")),
                (None, false) => Vec::new(),
            };
            let mut sorted_actions = BTreeMap::new();
            for (p, mut a) in actions {
                a.sort();
                sorted_actions.insert(p, a);
            }
            raw.push(Node {
                name: s.name.clone(),
                parent: None,
                active,
                actions: sorted_actions,
                children: BTreeMap::new(),
                payoffs,
            });
        }
        let roots: Vec<usize> = (0..nn).filter(|&i| parent[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(GameError::Roots(roots.len()));
        }

        // Canonical ids: preorder, children by profile.
        let mut order = Vec::with_capacity(nn);
        let mut stack = vec![roots[0]];
        while let Some(i) = stack.pop() {
            order.push(i);
            for (_, &c) in raw_children[i].iter().rev() {
                stack.push(c);
            }
        }
        if order.len() != nn {
            let seen: BTreeSet<usize> = order.iter().copied().collect();
            let lost = (0..nn).find(|i| !seen.contains(i)).unwrap();
            return Err(GameError::Unreachable(self.nodes[lost].name.clone()));
        }
        let mut newid = vec![0; nn];
        for (k, &i) in order.iter().enumerate() {
            newid[i] = k;
        }
        let mut nodes: Vec<Node> = order.iter().map(|&i| raw[i].clone()).collect();
        for (k, &i) in order.iter().enumerate() {
            nodes[k].parent = parent[i].map(|p| newid[p]);
            nodes[k].children = raw_children[i].iter().map(|(p, &c)| (p.clone(), newid[c])).collect();
        }
        let by_name: BTreeMap<&str, NodeId> = nodes.iter().enumerate().map(|(k, n)| (n.name.as_str(), k)).collect();
        let look = |s: &str| by_name.get(s).copied().ok_or_else(|| GameError::UnknownNode(s.to_string()));

        // Trees.
        let mut trees: Vec<Tree> = Vec::new();
        let mut names = BTreeSet::new();
        for (name, spec) in &self.trees {
            if !names.insert(name.clone()) {
                return Err(GameError::DuplicateTreeName(name.clone()));
            }
            let set: BTreeSet<NodeId> = match spec {
                TreeSpec::Nodes(v) => v.iter().map(|s| look(s)).collect::<Result<_, _>>()?,
                TreeSpec::Without(cut) => {
                    let cut: Vec<NodeId> = cut.iter().map(|s| look(s)).collect::<Result<_, _>>()?;
                    (0..nn).filter(|&n| !cut.iter().any(|&c| under(&nodes, c, n))).collect()
                }
            };
            if let Some(t) = trees.iter().find(|t| t.nodes == set) {
                return Err(GameError::DuplicateTree(t.name.clone(), name.clone()));
            }
            trees.push(Tree { name: name.clone(), nodes: set });
        }
        trees.sort_by(|a, b| {
            (a.nodes.len(), a.nodes.iter().collect::<Vec<_>>())
                .cmp(&(b.nodes.len(), b.nodes.iter().collect::<Vec<_>>()))
        });
        let tree_id: BTreeMap<&str, TreeId> = trees.iter().enumerate().map(|(k, t)| (t.name.as_str(), k)).collect();
        let tlook = |s: &str| tree_id.get(s).copied().ok_or_else(|| GameError::UnknownTree(s.to_string()));

        // Information.
        let carries = |n: NodeId, p: Player| -> bool {
            if nodes[n].children.is_empty() {
                (1..=self.players).contains(&p)
            } else {
                p != 0 && nodes[n].active.contains(&p)
            }
        };
        let mut assign: BTreeMap<(NodeId, TreeId, Player), InfoSet> = BTreeMap::new();
        for s in &self.info {
            if s.player == 0 || s.player > self.players {
                return Err(GameError::BadPlayer(s.player));
            }
            if s.members.is_empty() {
                return Err(GameError::EmptyInfoSet(s.player));
            }
            let host = tlook(&s.host)?;
            let mut members = Vec::new();
            for m in &s.members {
                let n = look(m)?;
                if !trees[host].nodes.contains(&n) {
                    return Err(GameError::MemberNotInHost { player: s.player, host: s.host.clone(), node: m.clone() });
                }
                members.push(n);
            }
            members.sort();
            members.dedup();
            let set = InfoSet { player: s.player, host, members };
            for (nname, tname) in &s.at {
                let n = look(nname)?;
                let t = tlook(tname)?;
                if !trees[t].nodes.contains(&n) {
                    return Err(GameError::NoCopy { node: nname.clone(), tree: tname.clone() });
                }
                if !carries(n, s.player) {
                    return Err(GameError::ExtraInfoSet { player: s.player, node: nname.clone(), tree: tname.clone() });
                }
                if let Some(prev) = assign.insert((n, t, s.player), set.clone()) {
                    if prev != set {
                        return Err(GameError::ConflictingInfoSet {
                            player: s.player,
                            node: nname.clone(),
                            tree: tname.clone(),
                        });
                    }
                }
            }
        }
        for (t, tr) in trees.iter().enumerate() {
            for &n in &tr.nodes {
                for p in 1..=self.players {
                    if !carries(n, p) || assign.contains_key(&(n, t, p)) {
                        continue;
                    }
                    if self.default_singleton {
                        assign.insert((n, t, p), InfoSet { player: p, host: t, members: vec![n] });
                    } else {
                        return Err(GameError::MissingInfoSet {
                            player: p,
                            node: nodes[n].name.clone(),
                            tree: tr.name.clone(),
                        });
                    }
                }
            }
        }
        let nature = nodes.iter().any(|n| n.active.contains(&0));
        Game::assemble(self.name.clone(), self.provenance.clone(), self.players, nature, nodes, trees, assign)
    }
}

fn under(nodes: &[Node], anc: NodeId, n: NodeId) -> bool {
    let mut cur = Some(n);
    while let Some(c) = cur {
        if c == anc {
            return true;
        }
        cur = nodes[c].parent;
    }
    false
}
