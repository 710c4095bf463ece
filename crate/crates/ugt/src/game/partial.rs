//! Partial games and the precedence forest of information sets.

use std::collections::{BTreeMap, BTreeSet};

use super::{Game, GameBuilder, Loc, Player, TreeId};
use crate::error::{Result, UgtError};

impl Game {
    /// Trees `T'` with `t ↣ T'`: hosts of sets at copies in `t`.
    pub fn awareness_arrows(&self, t: TreeId) -> BTreeSet<TreeId> {
        let mut out = BTreeSet::new();
        for l in self.locs_in(t) {
            for i in self.info_players(l) {
                if let Some(h) = self.h(l, i) {
                    out.insert(self.info_sets[h].host);
                }
            }
        }
        out
    }

    /// `{t} ∪ {T' : t ↪ T'}`.
    pub fn partial_trees(&self, t: TreeId) -> BTreeSet<TreeId> {
        let mut seen = BTreeSet::from([t]);
        let mut todo = vec![t];
        while let Some(u) = todo.pop() {
            for v in self.awareness_arrows(u) {
                if seen.insert(v) {
                    todo.push(v);
                }
            }
        }
        seen
    }

    /// Information sets whose host lies in the `t`-partial game.
    pub fn partial_sets(&self, t: TreeId, i: Player) -> Vec<usize> {
        let keep = self.partial_trees(t);
        self.sets_of(i).into_iter().filter(|&h| keep.contains(&self.info_sets[h].host)).collect()
    }
}

/// The `t`-partial game: tree `t` and everything reachable from it through
/// information sets, with sets copied verbatim. Node names are preserved;
/// ids are renumbered.
pub fn t_partial_game(g: &Game, t: TreeId) -> Result<Game> {
    if t >= g.trees().len() {
        return Err(UgtError::Invalid(format!("unknown tree id {t}")));
    }
    let keep = g.partial_trees(t);
    if keep.iter().any(|&k| !g.leq(k, t)) {
        return Err(UgtError::Invalid(format!("information in `{}` points outside it", g.trees()[t].name)));
    }
    Ok(GameBuilder::partial_of(g, t, &keep).build()?)
}

/// A player's information sets under immediate precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoForest {
    /// Owner.
    pub player: Player,
    /// Sets in canonical order.
    pub sets: Vec<usize>,
    /// Immediate predecessor of each set.
    pub parent: BTreeMap<usize, Option<usize>>,
}

impl InfoForest {
    /// Sets without predecessor.
    pub fn roots(&self) -> Vec<usize> {
        self.sets.iter().copied().filter(|h| self.parent[h].is_none()).collect()
    }

    /// Immediate successors.
    pub fn children(&self, h: usize) -> Vec<usize> {
        self.sets.iter().copied().filter(|k| self.parent[k] == Some(h)).collect()
    }

    /// Strict predecessors, nearest first.
    pub fn ancestors(&self, h: usize) -> Vec<usize> {
        let mut v = Vec::new();
        let mut cur = self.parent[&h];
        while let Some(p) = cur {
            v.push(p);
            cur = self.parent[&p];
        }
        v
    }
}

impl Game {
    /// `h ⇝ h'`: same host, distinct, and every member of `h'` has a strict
    /// predecessor in `h` within the host.
    pub fn info_precedes(&self, h: usize, k: usize) -> bool {
        let a = &self.info_sets[h];
        let b = &self.info_sets[k];
        if h == k || a.player != b.player || a.host != b.host {
            return false;
        }
        b.members.iter().all(|&n| self.path_to(Loc::new(n, b.host)).iter().any(|p| a.members.binary_search(p).is_ok()))
    }
}

/// Precedence forest of player `i`'s sets. Errors if predecessors are not
/// totally ordered, which means perfect recall fails.
pub fn info_arborescence(g: &Game, i: Player) -> Result<InfoForest> {
    let sets = g.sets_of(i);
    let mut parent = BTreeMap::new();
    for &k in &sets {
        let preds: Vec<usize> = sets.iter().copied().filter(|&h| g.info_precedes(h, k)).collect();
        for (x, &a) in preds.iter().enumerate() {
            for &b in &preds[x + 1..] {
                if !g.info_precedes(a, b) && !g.info_precedes(b, a) {
                    return Err(UgtError::Invalid(format!(
                        "predecessors {} and {} of {} are unordered",
                        g.set_name(a),
                        g.set_name(b),
                        g.set_name(k)
                    )));
                }
            }
        }
        let p = preds.iter().copied().find(|&a| preds.iter().all(|&b| b == a || g.info_precedes(b, a)));
        parent.insert(k, p);
    }
    Ok(InfoForest { player: i, sets, parent })
}
