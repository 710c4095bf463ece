//! Game forests: the upmost tree, its join-semilattice of subtrees, node
//! copies, information sets and payoffs.
//!
//! A node of any tree is addressed by a [`Loc`]: the global node id of the
//! upmost tree plus the tree it lives in. Copies therefore commute by
//! construction.

mod builder;
pub mod partial;
pub mod validate;

use std::collections::{BTreeMap, BTreeSet};

pub use builder::GameBuilder;
pub use partial::{info_arborescence, t_partial_game, InfoForest};
pub use validate::{validate_game, Axiom, CheckResult, ValidationReport, Witness};

use crate::error::GameError;
use crate::num::Q;

/// Global node id: index into the canonical node list of the upmost tree.
pub type NodeId = usize;
/// Tree id: index into the canonical tree list.
pub type TreeId = usize;
/// Player index. `0` is nature, real players are `1..=n`.
pub type Player = usize;
/// Nature's player index.
pub const NATURE: Player = 0;

/// A node copy `n_T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Loc {
    /// Global node id.
    pub node: NodeId,
    /// Tree containing this copy.
    pub tree: TreeId,
}

impl Loc {
    /// Shorthand constructor.
    pub fn new(node: NodeId, tree: TreeId) -> Self {
        Loc { node, tree }
    }
}

/// Physical data of a node of the upmost tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Human-readable name, unique within the game.
    pub name: String,
    /// Parent in the upmost tree.
    pub parent: Option<NodeId>,
    /// Active players at a decision node, sorted; empty at terminal nodes.
    pub active: Vec<Player>,
    /// Sorted action labels per active player.
    pub actions: BTreeMap<Player, Vec<String>>,
    /// Successor map: action profile (ordered like `active`) to child.
    pub children: BTreeMap<Vec<String>, NodeId>,
    /// Payoffs of real players `1..=n` (terminal nodes only).
    pub payoffs: Vec<Q>,
}

impl Node {
    /// True for terminal nodes of the upmost tree.
    pub fn is_terminal(&self) -> bool {
        self.children.is_empty()
    }
}

/// A subtree, given by its node set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    /// Display name.
    pub name: String,
    /// Global ids of the nodes present.
    pub nodes: BTreeSet<NodeId>,
}

/// An information set: a host tree and members inside it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InfoSet {
    /// Owner.
    pub player: Player,
    /// Host tree `T_h`.
    pub host: TreeId,
    /// Sorted member node ids (copies in `host`).
    pub members: Vec<NodeId>,
}

impl InfoSet {
    /// Member copies.
    pub fn locs(&self) -> impl Iterator<Item = Loc> + '_ {
        self.members.iter().map(move |&n| Loc::new(n, self.host))
    }

    /// True if `l` is a member.
    pub fn contains(&self, l: Loc) -> bool {
        l.tree == self.host && self.members.binary_search(&l.node).is_ok()
    }
}

/// Which payoffs were quoted from a source and which were constructed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    /// Values taken verbatim from a written description.
    pub quoted: Vec<String>,
    /// Values chosen to satisfy qualitative constraints.
    pub constructed: Vec<String>,
    /// Free-form remarks.
    pub notes: Vec<String>,
}

/// Derived lookup tables, recomputed on construction.
#[derive(Clone, Debug)]
struct Derived {
    tbar: TreeId,
    in_tree: Vec<Vec<bool>>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<TreeId>>,
    tree_root: Vec<NodeId>,
    kids: Vec<Vec<Vec<NodeId>>>,
    ractions: Vec<Vec<BTreeMap<Player, Vec<String>>>>,
    incoming: Vec<Option<Vec<String>>>,
    depth: Vec<usize>,
}

/// An extensive-form game with unawareness in canonical form.
#[derive(Clone, Debug)]
pub struct Game {
    /// Display name (not part of structural equality).
    pub name: String,
    /// Provenance block (not part of structural equality).
    pub provenance: Provenance,
    players: usize,
    nature: bool,
    nodes: Vec<Node>,
    trees: Vec<Tree>,
    info_sets: Vec<InfoSet>,
    assign: BTreeMap<(NodeId, TreeId, Player), usize>,
    d: Derived,
}

impl PartialEq for Game {
    fn eq(&self, o: &Self) -> bool {
        self.players == o.players
            && self.nature == o.nature
            && self.nodes == o.nodes
            && self.trees == o.trees
            && self.info_sets == o.info_sets
            && self.assign == o.assign
    }
}
impl Eq for Game {}

impl Game {
    /// Number of real players.
    pub fn num_players(&self) -> usize {
        self.players
    }

    /// Real players `1..=n`.
    pub fn players(&self) -> std::ops::RangeInclusive<Player> {
        1..=self.players
    }

    /// Whether nature moves anywhere.
    pub fn has_nature(&self) -> bool {
        self.nature
    }

    /// All nodes of the upmost tree in canonical order.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Node data.
    pub fn node(&self, n: NodeId) -> &Node {
        &self.nodes[n]
    }

    /// Looks up a node by name.
    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.name == name)
    }

    /// Trees in canonical order; the last one is the upmost tree.
    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    /// Looks up a tree by name.
    pub fn tree_by_name(&self, name: &str) -> Option<TreeId> {
        self.trees.iter().position(|t| t.name == name)
    }

    /// Tree ids.
    pub fn tree_ids(&self) -> std::ops::Range<TreeId> {
        0..self.trees.len()
    }

    /// The upmost tree.
    pub fn tbar(&self) -> TreeId {
        self.d.tbar
    }

    /// Root of the upmost tree.
    pub fn root(&self) -> NodeId {
        self.d.tree_root[self.d.tbar]
    }

    /// Root of a tree.
    pub fn tree_root(&self, t: TreeId) -> NodeId {
        self.d.tree_root[t]
    }

    /// Whether `n` has a copy in `t`.
    pub fn in_tree(&self, n: NodeId, t: TreeId) -> bool {
        self.d.in_tree[t][n]
    }

    /// `a ⪯ b`.
    pub fn leq(&self, a: TreeId, b: TreeId) -> bool {
        self.d.leq[a][b]
    }

    /// Least upper bound.
    pub fn join(&self, a: TreeId, b: TreeId) -> TreeId {
        self.d.join[a][b]
    }

    /// Children of a copy within its tree.
    pub fn children_in(&self, l: Loc) -> &[NodeId] {
        &self.d.kids[l.tree][l.node]
    }

    /// True if the copy has no successors in its tree.
    pub fn is_leaf(&self, l: Loc) -> bool {
        self.d.kids[l.tree][l.node].is_empty()
    }

    /// Restricted action set `A_n^{i,T}`; empty for inactive players and leaves.
    pub fn actions_at(&self, l: Loc, i: Player) -> &[String] {
        self.d.ractions[l.tree][l.node].get(&i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Action profile leading from the parent to `n`.
    pub fn incoming(&self, n: NodeId) -> Option<&[String]> {
        self.d.incoming[n].as_deref()
    }

    /// Depth of `n` in the upmost tree.
    pub fn depth(&self, n: NodeId) -> usize {
        self.d.depth[n]
    }

    /// Label played by `i` on the edge into `n`, if `i` is active at the parent.
    pub fn action_into(&self, n: NodeId, i: Player) -> Option<&str> {
        let p = self.nodes[n].parent?;
        let pos = self.nodes[p].active.iter().position(|&j| j == i)?;
        self.d.incoming[n].as_ref().map(|v| v[pos].as_str())
    }

    /// Successor of `n` under a profile of labels (ordered like `active`).
    pub fn successor(&self, n: NodeId, profile: &[String]) -> Option<NodeId> {
        self.nodes[n].children.get(profile).copied()
    }

    /// Real players carrying an information set at a copy: the active real
    /// players at decision nodes, every real player at terminal nodes.
    pub fn info_players(&self, l: Loc) -> Vec<Player> {
        let nd = &self.nodes[l.node];
        if nd.is_terminal() {
            self.players().collect()
        } else {
            nd.active.iter().copied().filter(|&i| i != NATURE).collect()
        }
    }

    /// Whether `i` acts (chooses an action) at the node.
    pub fn acts(&self, n: NodeId, i: Player) -> bool {
        self.nodes[n].active.contains(&i)
    }

    /// All copies in canonical order.
    pub fn locs(&self) -> Vec<Loc> {
        let mut v = Vec::new();
        for t in self.tree_ids() {
            for &n in &self.trees[t].nodes {
                v.push(Loc::new(n, t));
            }
        }
        v
    }

    /// Copies of a given tree.
    pub fn locs_in(&self, t: TreeId) -> impl Iterator<Item = Loc> + '_ {
        self.trees[t].nodes.iter().map(move |&n| Loc::new(n, t))
    }

    /// Information sets in canonical order.
    pub fn info_sets(&self) -> &[InfoSet] {
        &self.info_sets
    }

    /// Information set by id.
    pub fn info_set(&self, h: usize) -> &InfoSet {
        &self.info_sets[h]
    }

    /// `h_i(l)` as an id; `None` if `i` carries no information set at `l`.
    pub fn h(&self, l: Loc, i: Player) -> Option<usize> {
        self.assign.get(&(l.node, l.tree, i)).copied()
    }

    /// `h_i(l)` as an id, panicking when absent.
    pub fn hh(&self, l: Loc, i: Player) -> usize {
        self.h(l, i).unwrap_or_else(|| panic!("no information set for player {i} at {}", self.loc_name(l)))
    }

    /// The full assignment `(node, tree, player) -> information set id`.
    pub fn assignment(&self) -> &BTreeMap<(NodeId, TreeId, Player), usize> {
        &self.assign
    }

    /// Copies whose information set for `i` is `h` (not necessarily members).
    pub fn governed(&self, h: usize) -> Vec<Loc> {
        let p = self.info_sets[h].player;
        self.assign.iter().filter(|(k, &v)| v == h && k.2 == p).map(|(k, _)| Loc::new(k.0, k.1)).collect()
    }

    /// Information sets of player `i`.
    pub fn sets_of(&self, i: Player) -> Vec<usize> {
        (0..self.info_sets.len()).filter(|&h| self.info_sets[h].player == i).collect()
    }

    /// True if `h` consists of decision nodes.
    pub fn is_decision_set(&self, h: usize) -> bool {
        let s = &self.info_sets[h];
        s.members.iter().any(|&n| !self.nodes[n].is_terminal())
    }

    /// Decision information sets of `i`.
    pub fn decision_sets_of(&self, i: Player) -> Vec<usize> {
        self.sets_of(i).into_iter().filter(|&h| self.is_decision_set(h)).collect()
    }

    /// Action labels available at an information set.
    pub fn set_actions(&self, h: usize) -> &[String] {
        let s = &self.info_sets[h];
        self.actions_at(Loc::new(s.members[0], s.host), s.player)
    }

    /// Strict predecessors of `l` inside its tree, root first.
    pub fn path_to(&self, l: Loc) -> Vec<NodeId> {
        let mut v = Vec::new();
        let mut cur = self.nodes[l.node].parent;
        while let Some(p) = cur {
            if !self.in_tree(p, l.tree) {
                break;
            }
            v.push(p);
            cur = self.nodes[p].parent;
        }
        v.reverse();
        v
    }

    /// True if `a` weakly precedes `b` in the upmost tree.
    pub fn precedes_eq(&self, a: NodeId, b: NodeId) -> bool {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = self.nodes[c].parent;
        }
        false
    }

    /// `name@tree` rendering of a copy.
    pub fn loc_name(&self, l: Loc) -> String {
        format!("{}@{}", self.nodes[l.node].name, self.trees[l.tree].name)
    }

    /// Compact rendering of an information set.
    pub fn set_name(&self, h: usize) -> String {
        let s = &self.info_sets[h];
        let ms: Vec<&str> = s.members.iter().map(|&n| self.nodes[n].name.as_str()).collect();
        format!("P{}{{{}}}@{}", s.player, ms.join(","), self.trees[s.host].name)
    }

    /// Terminal copies of a tree.
    pub fn leaves_of(&self, t: TreeId) -> Vec<NodeId> {
        self.trees[t].nodes.iter().copied().filter(|&n| self.d.kids[t][n].is_empty()).collect()
    }

    /// Rebuilds the game with a new information assignment, keeping all
    /// physical data. Sets are deduplicated and put in canonical order.
    pub fn with_information(&self, raw: &BTreeMap<(NodeId, TreeId, Player), InfoSet>) -> Game {
        let (info_sets, assign) = canonical_info(raw);
        Game {
            name: self.name.clone(),
            provenance: self.provenance.clone(),
            players: self.players,
            nature: self.nature,
            nodes: self.nodes.clone(),
            trees: self.trees.clone(),
            info_sets,
            assign,
            d: self.d.clone(),
        }
    }

    /// Raw assignment of sets, the inverse of [`Game::with_information`].
    pub fn raw_information(&self) -> BTreeMap<(NodeId, TreeId, Player), InfoSet> {
        self.assign.iter().map(|(k, &v)| (*k, self.info_sets[v].clone())).collect()
    }

    pub(crate) fn assemble(
        name: String,
        provenance: Provenance,
        players: usize,
        nature: bool,
        nodes: Vec<Node>,
        trees: Vec<Tree>,
        raw: BTreeMap<(NodeId, TreeId, Player), InfoSet>,
    ) -> Result<Game, GameError> {
        let d = derive(&nodes, &trees)?;
        let (info_sets, assign) = canonical_info(&raw);
        Ok(Game { name, provenance, players, nature, nodes, trees, info_sets, assign, d })
    }
}

fn canonical_info(
    raw: &BTreeMap<(NodeId, TreeId, Player), InfoSet>,
) -> (Vec<InfoSet>, BTreeMap<(NodeId, TreeId, Player), usize>) {
    let distinct: BTreeSet<&InfoSet> = raw.values().collect();
    let sets: Vec<InfoSet> = distinct.into_iter().cloned().collect();
    let assign = raw.iter().map(|(k, s)| (*k, sets.binary_search(s).expect("set present"))).collect();
    (sets, assign)
}

fn derive(nodes: &[Node], trees: &[Tree]) -> Result<Derived, GameError> {
    let nt = trees.len();
    let nn = nodes.len();
    let mut in_tree = vec![vec![false; nn]; nt];
    for (t, tr) in trees.iter().enumerate() {
        for &n in &tr.nodes {
            in_tree[t][n] = true;
        }
    }
    let tbar = (0..nt).find(|&t| trees[t].nodes.len() == nn).ok_or(GameError::NoUpmostTree)?;
    let mut leq = vec![vec![false; nt]; nt];
    for a in 0..nt {
        for b in 0..nt {
            leq[a][b] = trees[a].nodes.is_subset(&trees[b].nodes);
        }
    }
    let mut join = vec![vec![0; nt]; nt];
    for a in 0..nt {
        for b in 0..nt {
            let ubs: Vec<TreeId> = (0..nt).filter(|&c| leq[a][c] && leq[b][c]).collect();
            let least = ubs.iter().copied().find(|&c| ubs.iter().all(|&d| leq[c][d]));
            match least {
                Some(c) => join[a][b] = c,
                None => return Err(GameError::NotJoinClosed(trees[a].name.clone(), trees[b].name.clone())),
            }
        }
    }
    let mut tree_root = vec![0; nt];
    let mut kids = vec![vec![Vec::new(); nn]; nt];
    let mut ractions = vec![vec![BTreeMap::new(); nn]; nt];
    for t in 0..nt {
        let roots: Vec<NodeId> =
            trees[t].nodes.iter().copied().filter(|&n| nodes[n].parent.is_none_or(|p| !in_tree[t][p])).collect();
        if roots.len() != 1 {
            return Err(GameError::NotSubtree(trees[t].name.clone()));
        }
        tree_root[t] = roots[0];
        for &n in &trees[t].nodes {
            let nd = &nodes[n];
            let mut acts: BTreeMap<Player, BTreeSet<String>> = BTreeMap::new();
            for (prof, &c) in &nd.children {
                if in_tree[t][c] {
                    kids[t][n].push(c);
                    for (k, &i) in nd.active.iter().enumerate() {
                        acts.entry(i).or_default().insert(prof[k].clone());
                    }
                }
            }
            ractions[t][n] = acts.into_iter().map(|(i, s)| (i, s.into_iter().collect())).collect();
        }
    }
    let mut incoming = vec![None; nn];
    let mut depth = vec![0; nn];
    for n in 0..nn {
        for (prof, &c) in &nodes[n].children {
            incoming[c] = Some(prof.clone());
        }
    }
    for n in 0..nn {
        let mut k = 0;
        let mut cur = nodes[n].parent;
        while let Some(p) = cur {
            k += 1;
            cur = nodes[p].parent;
        }
        depth[n] = k;
    }
    Ok(Derived { tbar, in_tree, leq, join, tree_root, kids, ractions, incoming, depth })
}
