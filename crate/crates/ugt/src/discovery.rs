//! Discovered versions, discovery supergames and discovery runs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::efr::efr_ctx;
use crate::error::{Result, UgtError};
use crate::game::{Game, InfoSet, Loc, NodeId, Player, TreeId};
use crate::num::Q;
use crate::strategy::{Ctx, Plan, Profile};

/// `T^i_s`: join of the host trees of `i`'s sets along the realized path.
pub fn awareness_tree(ctx: &Ctx, s: &Profile, i: Player) -> TreeId {
    let g = ctx.g;
    ctx.occurring_sets(s, i).into_iter().map(|h| g.info_set(h).host).reduce(|a, b| g.join(a, b)).unwrap_or(0)
}

/// Awareness trees of every real player (index `0` unused).
pub fn awareness_trees(ctx: &Ctx, s: &Profile) -> Vec<TreeId> {
    let mut v = vec![ctx.g.tbar()];
    v.extend(ctx.g.players().map(|i| awareness_tree(ctx, s, i)));
    v
}

/// Rewrites information sets given each player's awareness tree.
pub fn lift(g: &Game, aware: &[TreeId]) -> Game {
    let tbar = g.tbar();
    let mut raw = g.raw_information();
    for ((n, t2, i), set) in raw.iter_mut() {
        let (n, t2, i) = (*n, *t2, *i);
        let ti = aware[i];
        let h = g.hh(Loc::new(n, tbar), i);
        let t1 = g.info_set(h).host;
        if !g.leq(t1, ti) {
            continue;
        }
        let target = if g.leq(ti, t2) {
            ti
        } else if g.leq(t2, ti) {
            t2
        } else {
            continue;
        };
        let members: Vec<NodeId> =
            g.trees()[target].nodes.iter().copied().filter(|&m| g.h(Loc::new(m, tbar), i) == Some(h)).collect();
        *set = InfoSet { player: i, host: target, members };
    }
    g.with_information(&raw)
}

/// The discovered version of `g` after `s` is played.
pub fn discovered_version(ctx: &Ctx, s: &Profile) -> Game {
    lift(ctx.g, &awareness_trees(ctx, s))
}

/// Outcome of comparing two games on the same physical structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relations {
    /// Every set is hosted weakly higher in the second game.
    pub more_awareness: bool,
    /// Membership and coincidence of sets carry over.
    pub preserves_information: bool,
}

/// Evaluates weakly-more-awareness and information preservation of `to`
/// relative to `from`.
pub fn discovery_relations(from: &Game, to: &Game) -> Result<Relations> {
    if from.num_players() != to.num_players()
        || from.nodes() != to.nodes()
        || from.trees() != to.trees()
        || from.assignment().keys().ne(to.assignment().keys())
    {
        return Err(UgtError::Invalid("games differ in physical structure".into()));
    }
    let a = from.raw_information();
    let b = to.raw_information();
    let more = a.iter().all(|(k, h)| from.leq(h.host, b[k].host));
    let subset = a.iter().all(|(k, h)| h.members.iter().all(|m| b[k].members.binary_search(m).is_ok()));
    let mut by_tree: BTreeMap<(TreeId, Player), Vec<(NodeId, usize, usize)>> = BTreeMap::new();
    for &(n, t, i) in a.keys() {
        let l = Loc::new(n, t);
        by_tree.entry((t, i)).or_default().push((n, from.hh(l, i), to.hh(l, i)));
    }
    let coincide = by_tree.values().all(|v| v.iter().all(|x| v.iter().all(|y| x.1 != y.1 || x.2 == y.2)));
    Ok(Relations { more_awareness: more, preserves_information: more && subset && coincide })
}

/// Which profiles may be played in a state.
#[derive(Clone, Debug)]
pub enum Policy {
    /// Extensive-form rationalizable plans.
    Efr,
    /// Plans surviving one round of elimination.
    Rational,
    /// Every plan.
    All,
    /// Per-state overrides, matched by structural equality.
    Explicit {
        /// Overrides.
        states: Vec<(Game, Allowed)>,
        /// Rule for every other state.
        otherwise: Box<Policy>,
    },
}

/// A per-state rule.
#[derive(Clone, Debug)]
pub enum Allowed {
    /// Plans per player (index `0` is nature).
    Plans(Vec<Vec<Plan>>),
    /// Delegate to a policy.
    Policy(Policy),
}

impl Policy {
    /// Parses `efr`, `rational` or `all`.
    pub fn parse(s: &str) -> Result<Policy> {
        match s {
            "efr" => Ok(Policy::Efr),
            "rational" => Ok(Policy::Rational),
            "all" => Ok(Policy::All),
            _ => Err(UgtError::Invalid(format!("unknown policy `{s}`"))),
        }
    }

    /// Allowed plans per player in the context's game.
    pub fn allowed(&self, ctx: &Ctx) -> Result<Vec<Vec<Plan>>> {
        match self {
            Policy::All => Ok(ctx.all_plans()),
            Policy::Efr => Ok(efr_ctx(ctx)?.result().to_vec()),
            Policy::Rational => Ok(efr_ctx(ctx)?.rational().to_vec()),
            Policy::Explicit { states, otherwise } => match states.iter().find(|(g, _)| g == ctx.g) {
                Some((_, Allowed::Plans(p))) => Ok(p.clone()),
                Some((_, Allowed::Policy(p))) => p.allowed(ctx),
                None => otherwise.allowed(ctx),
            },
        }
    }
}

/// A realized upmost-tree path together with one profile producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClass {
    /// Nodes from the root.
    pub path: Vec<NodeId>,
    /// A representative profile.
    pub profile: Profile,
}

/// Distinct upmost-tree paths realized by profiles drawn from `lists`.
pub fn path_classes(ctx: &Ctx, lists: &[Vec<Plan>]) -> Vec<PathClass> {
    let mut out = Vec::new();
    let subsets: Vec<Vec<&Plan>> = lists.iter().map(|l| l.iter().collect()).collect();
    if subsets.iter().any(|s| s.is_empty()) {
        return out;
    }
    walk(ctx, ctx.g.root(), vec![ctx.g.root()], subsets, &mut out);
    out
}

fn walk(ctx: &Ctx, n: NodeId, path: Vec<NodeId>, subsets: Vec<Vec<&Plan>>, out: &mut Vec<PathClass>) {
    let t = ctx.g.tbar();
    let l = Loc::new(n, t);
    if ctx.g.is_leaf(l) {
        let profile = subsets.iter().map(|s| s[0].clone()).collect();
        out.push(PathClass { path, profile });
        return;
    }
    for &c in ctx.g.children_in(l) {
        let mut next = subsets.clone();
        let mut ok = true;
        for &j in &ctx.g.node(n).active {
            let want = ctx.g.action_into(c, j).unwrap_or_default();
            next[j].retain(|p| ctx.st.label_at(j, p, l) == Some(want));
            if next[j].is_empty() {
                ok = false;
                break;
            }
        }
        if ok {
            let mut p = path.clone();
            p.push(c);
            walk(ctx, c, p, next, out);
        }
    }
}

/// A transition of the supergame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Source state.
    pub from: usize,
    /// Target state.
    pub to: usize,
    /// Path class inducing it.
    pub class: PathClass,
}

/// Reachable part of the discovery supergame under a policy.
#[derive(Clone, Debug)]
pub struct Supergame {
    /// States in discovery order; `states[0]` is the initial game.
    pub states: Vec<Game>,
    /// One edge per (state, path class).
    pub edges: Vec<Edge>,
}

impl Supergame {
    /// Outgoing edges.
    pub fn out(&self, s: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == s)
    }

    /// Distinct successors of a state.
    pub fn successors(&self, s: usize) -> BTreeSet<usize> {
        self.out(s).map(|e| e.to).collect()
    }

    /// Index of a state structurally equal to `g`.
    pub fn find(&self, g: &Game) -> Option<usize> {
        self.states.iter().position(|x| x == g)
    }
}

/// Breadth-first closure of discovered versions from `g0`.
pub fn build_supergame(g0: &Game, policy: &Policy) -> Result<Supergame> {
    let mut sg = Supergame { states: vec![g0.clone()], edges: Vec::new() };
    let mut todo = VecDeque::from([0usize]);
    while let Some(s) = todo.pop_front() {
        let g = sg.states[s].clone();
        let ctx = Ctx::new(&g);
        let allowed = policy.allowed(&ctx)?;
        for class in path_classes(&ctx, &allowed) {
            let next = discovered_version(&ctx, &class.profile);
            let to = match sg.find(&next) {
                Some(k) => k,
                None => {
                    sg.states.push(next);
                    todo.push_back(sg.states.len() - 1);
                    sg.states.len() - 1
                }
            };
            sg.edges.push(Edge { from: s, to, class });
        }
    }
    Ok(sg)
}

/// States all of whose allowed transitions are self-loops.
pub fn self_confirming_games(sg: &Supergame) -> Vec<usize> {
    (0..sg.states.len()).filter(|&s| sg.out(s).all(|e| e.to == s)).collect()
}

/// Distribution over plans of each player (index `0` is nature).
pub type StrategyDist = Vec<Vec<(Plan, Q)>>;

/// Stationary supergame strategy: a distribution over allowed plans given
/// the state and the allowed lists.
pub type SupergameStrategy<'a> = dyn Fn(&Ctx, &[Vec<Plan>]) -> Result<StrategyDist> + 'a;

/// Uniform weights on every allowed plan.
pub fn uniform_strategy(_: &Ctx, allowed: &[Vec<Plan>]) -> Result<StrategyDist> {
    Ok(allowed
        .iter()
        .map(|l| {
            let w = Q::new(BigInt::one(), BigInt::from(l.len()));
            l.iter().map(|p| (p.clone(), w.clone())).collect()
        })
        .collect())
}

/// One sampled stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// State index in [`DiscoveryTrace::states`].
    pub state: usize,
    /// Sampled profile.
    pub profile: Profile,
    /// Realized upmost-tree path.
    pub path: Vec<NodeId>,
    /// Resulting state.
    pub next: usize,
}

/// Result of [`run_discovery`].
#[derive(Clone, Debug)]
pub struct DiscoveryTrace {
    /// Distinct states in order of first visit.
    pub states: Vec<Game>,
    /// Every sampled stage, self-loops included.
    pub steps: Vec<Step>,
    /// Index of the absorbing state.
    pub absorbing: usize,
}

/// `1 + |I|·|T|`.
pub fn trace_bound(g: &Game) -> usize {
    1 + g.num_players() * g.trees().len()
}

fn sample(rng: &mut ChaCha8Rng, dist: &[(Plan, Q)]) -> usize {
    let r = BigInt::from(rng.next_u64());
    let scale = BigInt::one() << 64;
    let mut cum = Q::zero();
    for (k, (_, w)) in dist.iter().enumerate() {
        cum += w;
        if r.clone() * cum.denom() < cum.numer() * &scale {
            return k;
        }
    }
    dist.len() - 1
}

/// Maximum number of sampled stages before giving up.
pub const MAX_STAGES: usize = 100_000;

/// Simulates a discovery process until the state is absorbing under the
/// support of `f`.
pub fn run_discovery(g0: &Game, policy: &Policy, f: &SupergameStrategy, seed: u64) -> Result<DiscoveryTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tr = DiscoveryTrace { states: vec![g0.clone()], steps: Vec::new(), absorbing: 0 };
    let mut cur = 0usize;
    for _ in 0..MAX_STAGES {
        let g = tr.states[cur].clone();
        let ctx = Ctx::new(&g);
        let allowed = policy.allowed(&ctx)?;
        let dist = f(&ctx, &allowed)?;
        check_dist(&ctx, &allowed, &dist)?;
        let support: Vec<Vec<Plan>> =
            dist.iter().map(|d| d.iter().filter(|(_, w)| w.is_positive()).map(|(p, _)| p.clone()).collect()).collect();
        let absorbing = path_classes(&ctx, &support).iter().all(|c| discovered_version(&ctx, &c.profile) == g);
        if absorbing {
            tr.absorbing = cur;
            return Ok(tr);
        }
        let profile: Profile = dist.iter().map(|d| d[sample(&mut rng, d)].0.clone()).collect();
        let next = discovered_version(&ctx, &profile);
        let path = ctx.tbar_path(&profile);
        let to = match tr.states.iter().position(|x| *x == next) {
            Some(k) => k,
            None => {
                tr.states.push(next);
                if tr.states.len() > trace_bound(g0) {
                    return Err(UgtError::Invalid("discovery trace exceeds its bound".into()));
                }
                tr.states.len() - 1
            }
        };
        tr.steps.push(Step { state: cur, profile, path, next: to });
        cur = to;
    }
    Err(UgtError::Budget(format!("no absorbing state within {MAX_STAGES} stages")))
}

fn check_dist(ctx: &Ctx, allowed: &[Vec<Plan>], dist: &StrategyDist) -> Result<()> {
    if dist.len() != ctx.g.num_players() + 1 {
        return Err(UgtError::Invalid("strategy must cover every player and nature".into()));
    }
    for (j, d) in dist.iter().enumerate() {
        let total: Q = d.iter().map(|(_, w)| w.clone()).sum();
        if d.iter().any(|(_, w)| w.is_negative()) || !total.is_one() {
            return Err(UgtError::Invalid(format!("player {j}: weights are not a distribution")));
        }
        if let Some((p, _)) = d.iter().find(|(p, w)| w.is_positive() && !allowed[j].contains(p)) {
            return Err(UgtError::Invalid(format!("player {j}: plan `{}` is outside the policy", ctx.show_plan(j, p))));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::by_name;

    fn game(n: &str) -> Game {
        by_name(n).unwrap()
    }

    fn profile(ctx: &Ctx, moves: &[(usize, &[(&str, &str, &str)])]) -> Profile {
        let mut p: Profile = ctx.all_plans().into_iter().map(|l| l[0].clone()).collect();
        for &(j, m) in moves {
            p[j] = ctx.plan_from_copies(j, m).unwrap();
        }
        p
    }

    #[test]
    fn ex1_awareness_trees() {
        let g = game("ex1_initial");
        let ctx = Ctx::new(&g);
        let t = g.tree_by_name("T").unwrap();
        let s = profile(&ctx, &[(1, &[("r", "T", "l1")]), (2, &[("a", "Tbar", "m2"), ("a", "T", "r2")])]);
        assert_eq!(awareness_tree(&ctx, &s, 1), g.tbar());
        let s = profile(&ctx, &[(1, &[("r", "T", "r1")])]);
        assert_eq!(awareness_tree(&ctx, &s, 1), t);
    }

    #[test]
    fn ex1_discovers_m2() {
        let g = game("ex1_initial");
        let ctx = Ctx::new(&g);
        let s = profile(&ctx, &[(1, &[("r", "T", "l1")]), (2, &[("a", "Tbar", "m2"), ("a", "T", "r2")])]);
        let d = discovered_version(&ctx, &s);
        assert_eq!(d, game("ex1_discovered"));
        let r = discovery_relations(&g, &d).unwrap();
        assert!(r.more_awareness && r.preserves_information);
        let back = discovery_relations(&d, &g).unwrap();
        assert!(!back.more_awareness);
    }

    #[test]
    fn ex1_discovered_is_fixed() {
        let g = game("ex1_discovered");
        let ctx = Ctx::new(&g);
        for c in path_classes(&ctx, &ctx.all_plans()) {
            assert_eq!(discovered_version(&ctx, &c.profile), g);
        }
    }

    #[test]
    fn ex2_supergame_shapes() {
        let g = game("ex2_initial");
        let all = build_supergame(&g, &Policy::All).unwrap();
        assert_eq!(all.states.len(), 4);
        let idx = |n: &str| all.find(&game(n)).unwrap();
        let (i, rsc, nonrat, full) = (idx("ex2_initial"), idx("ex2_rsc"), idx("ex2_nonrat"), idx("ex2_full"));
        assert_eq!(all.successors(i), BTreeSet::from([i, rsc, nonrat]));
        assert_eq!(all.successors(nonrat), BTreeSet::from([nonrat, full]));
        assert_eq!(all.successors(full), BTreeSet::from([full]));
        assert_eq!(self_confirming_games(&all), vec![full]);

        let efr = build_supergame(&g, &Policy::Efr).unwrap();
        assert_eq!(efr.states, vec![game("ex2_initial"), game("ex2_rsc")]);
        assert_eq!(self_confirming_games(&efr), vec![1]);
    }

    #[test]
    fn ex1_run_is_two_states() {
        let g = game("ex1_initial");
        let tr = run_discovery(&g, &Policy::Efr, &uniform_strategy, 7).unwrap();
        assert_eq!(tr.states, vec![g, game("ex1_discovered")]);
        assert_eq!(tr.absorbing, 1);
    }

    #[test]
    fn sampling_respects_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = vec![(Plan(vec![]), Q::zero()), (Plan(vec![Some(0)]), Q::one())];
        for _ in 0..50 {
            assert_eq!(sample(&mut rng, &d), 1);
        }
    }

    #[test]
    fn outside_support_is_rejected() {
        let g = game("ex1_initial");
        let bad = |ctx: &Ctx, _: &[Vec<Plan>]| uniform_strategy(ctx, &ctx.all_plans());
        assert!(run_discovery(&g, &Policy::Efr, &bad, 0).is_err());
    }
}
