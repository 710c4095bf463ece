//! Self-confirming equilibrium: checks in pure and behavior strategies, the
//! refinement to rationalizable conjectures, construction, and awareness
//! diagnostics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::discovery::path_classes;
use crate::efr::{best_reply_exists, columns, efr_ctx, oracle_cap};
use crate::error::{Result, UgtError};
use crate::game::{Game, Loc, Player, TreeId};
use crate::lp::{feasible, Cmp, Row};
use crate::nash::{nash, NormalForm};
use crate::num::Q;
use crate::strategy::{
    behavior_to_mixed, continuations, expected_payoff_at, expected_payoff_in, mixed_to_behavior,
    occurring_sets_behavior, reach_probability_profile, Behavior, BehaviorProfile, Ctx, Mixed, Partial, Plan, Profile,
};

/// Clause of the equilibrium definition that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    /// Awareness changes along the path.
    Awareness,
    /// Some visited choice is a best reply to no belief at all.
    Rationality,
    /// No belief consistent with what is observed makes play rational.
    BeliefConfirmation,
    /// An equivalent mixture puts weight on a non-rationalizable plan.
    EfrSupport,
}

impl Condition {
    /// Stable lowercase name.
    pub fn name(self) -> &'static str {
        match self {
            Condition::Awareness => "awareness",
            Condition::Rationality => "rationality",
            Condition::BeliefConfirmation => "belief-confirmation",
            Condition::EfrSupport => "efr-support",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Failed clause with the player and a human-readable account.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Clause.
    pub condition: Condition,
    /// Player it fails for.
    pub player: Player,
    /// What went wrong.
    pub detail: String,
}

/// Belief held constant along the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessBelief {
    /// Weights on opponents' pure partial profiles.
    Pure(Vec<(Partial, Q)>),
    /// Weights on opponents' behavior profiles; the owner's slot is `None`.
    Behavior(Vec<(Vec<Option<Behavior>>, Q)>),
}

/// One player's witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerWitness {
    /// Owner.
    pub player: Player,
    /// Tree hosting every visited set.
    pub tree: TreeId,
    /// Visited decision sets sharing the belief.
    pub sets: Vec<usize>,
    /// The belief.
    pub belief: WitnessBelief,
}

/// Result of an equilibrium check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SceVerdict {
    /// True if every clause holds for every player.
    pub holds: bool,
    /// First failure, if any.
    pub violation: Option<Violation>,
    /// Witnesses for players checked successfully.
    pub witnesses: Vec<PlayerWitness>,
}

impl SceVerdict {
    fn fail(self, condition: Condition, player: Player, detail: String) -> SceVerdict {
        SceVerdict { holds: false, violation: Some(Violation { condition, player, detail }), ..self }
    }
}

fn common_host(g: &Game, sets: &BTreeSet<usize>) -> std::result::Result<TreeId, Vec<TreeId>> {
    let hosts: BTreeSet<TreeId> = sets.iter().map(|&h| g.info_set(h).host).collect();
    match hosts.len() {
        0 => Ok(g.tbar()),
        1 => Ok(*hosts.iter().next().unwrap()),
        _ => Err(hosts.into_iter().collect()),
    }
}

fn awareness_detail(g: &Game, hosts: &[TreeId]) -> String {
    let names: Vec<&str> = hosts.iter().map(|&t| g.trees()[t].name.as_str()).collect();
    format!("visited sets are hosted in several trees: {}", names.join(", "))
}

/// Weights making every difference row non-negative, if any.
fn weights(diffs: &[Vec<Q>], n: usize) -> Option<Vec<Q>> {
    if n == 0 {
        return None;
    }
    let mut rows: Vec<Row> = vec![(vec![Q::one(); n], Cmp::Eq, Q::one())];
    let mut seen = BTreeSet::new();
    for d in diffs {
        if d.iter().any(|x| !x.is_zero()) && seen.insert(d.clone()) {
            rows.push((d.clone(), Cmp::Ge, Q::zero()));
        }
    }
    feasible(&rows, n)
}

fn own_only(ctx: &Ctx, i: Player, plan: &Plan) -> Vec<Option<Plan>> {
    (0..=ctx.g.num_players()).map(|j| (j == i).then(|| plan.clone())).collect()
}

fn all_of(ctx: &Ctx) -> Vec<Vec<Plan>> {
    ctx.all_plans()
}

/// Checks a pure profile. Beliefs along the path are a single distribution
/// over opponents' profiles reaching the terminal set; sets off that chain
/// only need some belief.
pub fn check_sce_pure(g: &Game, s: &Profile) -> Result<SceVerdict> {
    let ctx = Ctx::new(g);
    check_pure_ctx(&ctx, s)
}

fn check_pure_ctx(ctx: &Ctx, s: &Profile) -> Result<SceVerdict> {
    let g = ctx.g;
    let mut v = SceVerdict { holds: true, violation: None, witnesses: Vec::new() };
    let all = all_of(ctx);
    for i in g.players() {
        let occ = ctx.occurring_sets(s, i);
        let tree = match common_host(g, &occ) {
            Ok(t) => t,
            Err(hosts) => return Ok(v.fail(Condition::Awareness, i, awareness_detail(g, &hosts))),
        };
        let own = own_only(ctx, i, &s[i]);
        let own_refs: Vec<Option<&Plan>> = own.iter().map(|p| p.as_ref()).collect();
        let decision: Vec<usize> =
            occ.iter().copied().filter(|&h| g.is_decision_set(h) && ctx.reaches_set(&own_refs, h)).collect();
        for &h in &decision {
            if !best_reply_exists(ctx, i, h, &s[i], &columns(ctx, i, h, &all))? {
                return Ok(v.fail(
                    Condition::Rationality,
                    i,
                    format!("{} is a best reply to no belief at {}", ctx.show_plan(i, &s[i]), g.set_name(h)),
                ));
            }
        }
        let terminal: Vec<usize> = occ.iter().copied().filter(|&h| !g.is_decision_set(h)).collect();
        let mut cols: Option<BTreeSet<Partial>> = None;
        for &z in &terminal {
            let c: BTreeSet<Partial> = columns(ctx, i, z, &all).into_iter().collect();
            cols = Some(match cols {
                None => c,
                Some(prev) => prev.intersection(&c).cloned().collect(),
            });
        }
        let cols: Vec<Partial> = cols.unwrap_or_default().into_iter().collect();
        let chain: Vec<usize> =
            decision.iter().copied().filter(|&h| terminal.iter().any(|&z| g.info_precedes(h, z))).collect();
        let mut diffs = Vec::new();
        for &h in &chain {
            let base: Vec<Q> = cols.iter().map(|c| point_value(ctx, i, h, &s[i], c)).collect::<Result<_>>()?;
            for d in continuations(ctx, i, h, &s[i]) {
                if d == s[i] {
                    continue;
                }
                let u: Vec<Q> = cols.iter().map(|c| point_value(ctx, i, h, &d, c)).collect::<Result<_>>()?;
                diffs.push(base.iter().zip(&u).map(|(a, b)| a - b).collect());
            }
        }
        match weights(&diffs, cols.len()) {
            Some(w) => {
                let belief = cols.into_iter().zip(w).filter(|(_, x)| !x.is_zero()).collect();
                v.witnesses.push(PlayerWitness { player: i, tree, sets: chain, belief: WitnessBelief::Pure(belief) });
            }
            None => {
                return Ok(v.fail(
                    Condition::BeliefConfirmation,
                    i,
                    "no belief on profiles consistent with the observed outcome makes play rational".into(),
                ))
            }
        }
    }
    Ok(v)
}

fn point_value(ctx: &Ctx, i: Player, h: usize, plan: &Plan, col: &Partial) -> Result<Q> {
    expected_payoff_at(ctx, i, h, plan, &[(col.clone(), Q::one())])
}

/// Payoff of `x` at `h` against `opp`, with the owner's earlier moves forced
/// toward `h`, summed over leaves of the host below members of `h`. Not
/// normalized by the probability of reaching `h`.
fn behavior_value(ctx: &Ctx, i: Player, h: usize, x: &Behavior, opp: &[Option<Behavior>]) -> Q {
    let g = ctx.g;
    let set = g.info_set(h);
    let t = set.host;
    let mut xi = x.clone();
    if let Some(m) = set.locs().next() {
        for &(c, a) in ctx.st.own_constraints(i, m) {
            xi.0[c] = unit(xi.0[c].len(), a);
        }
    }
    let prof: BehaviorProfile =
        opp.iter().enumerate().map(|(j, b)| if j == i { xi.clone() } else { b.clone().expect("opponent") }).collect();
    let mut v = Q::zero();
    for z in g.leaves_of(t) {
        if !set.members.iter().any(|&m| g.precedes_eq(m, z)) {
            continue;
        }
        let p = reach_probability_profile(ctx, &prof, Loc::new(z, t));
        if !p.is_zero() {
            v += p * &g.node(z).payoffs[i - 1];
        }
    }
    v
}

fn unit(n: usize, a: usize) -> Vec<Q> {
    (0..n).map(|x| if x == a { Q::one() } else { Q::zero() }).collect()
}

fn own_reaches(ctx: &Ctx, i: Player, b: &Behavior, h: usize) -> bool {
    ctx.g.info_set(h).locs().any(|l| !b.own_reach(ctx, i, l).is_zero())
}

fn difference_rows(
    ctx: &Ctx,
    i: Player,
    sets: &[usize],
    pi_i: &Behavior,
    opps: &[Vec<Option<Behavior>>],
) -> Vec<Vec<Q>> {
    let mut diffs = Vec::new();
    for &h in sets {
        let base: Vec<Q> = opps.iter().map(|o| behavior_value(ctx, i, h, pi_i, o)).collect();
        let any = ctx.st.plans(i, None).into_iter().next().expect("some plan");
        for d in continuations(ctx, i, h, &any) {
            let db = Behavior::from_plan(ctx, i, &d);
            let u: Vec<Q> = opps.iter().map(|o| behavior_value(ctx, i, h, &db, o)).collect();
            diffs.push(base.iter().zip(&u).map(|(a, b)| a - b).collect());
        }
    }
    diffs
}

/// `kernel` over `from` as a kernel over `to`; `None` if it puts weight on a
/// label missing from `to`.
fn relabel(from: &[String], kernel: &[Q], to: &[String]) -> Option<Vec<Q>> {
    let lost = from.iter().zip(kernel).any(|(a, w)| !w.is_zero() && !to.contains(a));
    (!lost).then(|| {
        to.iter().map(|a| from.iter().position(|b| b == a).map_or_else(Q::zero, |k| kernel[k].clone())).collect()
    })
}

/// Opponents' behavior profiles in tree `t` that act as `pi` does along
/// actual play, with point choices elsewhere. A choice point of `t` copies
/// the kernel of the set that actually moves at the corresponding node of
/// the upmost tree; `None` if two such sets disagree.
fn completions(ctx: &Ctx, pi: &BehaviorProfile, i: Player, t: TreeId) -> Result<Option<Vec<Vec<Option<Behavior>>>>> {
    let g = ctx.g;
    let tbar = g.tbar();
    let mut base: Vec<Option<Behavior>> = pi.iter().enumerate().map(|(j, b)| (j != i).then(|| b.clone())).collect();
    let mut free: Vec<(Player, usize)> = Vec::new();
    for j in 0..=g.num_players() {
        if j == i {
            continue;
        }
        let mut relevant = BTreeSet::new();
        let mut fixed: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
        for &n in &g.trees()[t].nodes {
            let Some(c) = ctx.st.cp(j, Loc::new(n, t)) else { continue };
            relevant.insert(c);
            let actual = Loc::new(n, tbar);
            if reach_probability_profile(ctx, pi, actual).is_zero() {
                continue;
            }
            let a = ctx.st.cp(j, actual).expect("a mover in the upmost tree has a choice point");
            let Some(kernel) = relabel(&ctx.st.space(j).cps[a].actions, &pi[j].0[a], &ctx.st.space(j).cps[c].actions)
            else {
                return Ok(None);
            };
            if fixed.get(&c).is_some_and(|k| *k != kernel) {
                return Ok(None);
            }
            fixed.insert(c, kernel);
        }
        let b = base[j].as_mut().expect("opponent");
        for (&c, k) in &fixed {
            b.0[c] = k.clone();
        }
        free.extend(relevant.iter().filter(|c| !fixed.contains_key(c)).map(|&c| (j, c)));
    }
    let mut total = 1usize;
    for &(j, c) in &free {
        total = total.saturating_mul(ctx.st.space(j).cps[c].actions.len());
    }
    let cap = oracle_cap();
    if total > cap {
        return Err(UgtError::Budget(format!("{total} off-path completions exceed the cap of {cap}")));
    }
    let mut out = vec![base];
    for &(j, c) in &free {
        let k = ctx.st.space(j).cps[c].actions.len();
        let mut next = Vec::with_capacity(out.len() * k);
        for o in &out {
            for a in 0..k {
                let mut o = o.clone();
                o[j].as_mut().expect("opponent").0[c] = unit(k, a);
                next.push(o);
            }
        }
        out = next;
    }
    Ok(Some(out))
}

/// Checks a behavior profile. Beliefs along the path mix over opponents'
/// profiles that match `pi` wherever play in the player's tree visits.
pub fn check_sce_behavior(g: &Game, pi: &BehaviorProfile) -> Result<SceVerdict> {
    let ctx = Ctx::new(g);
    check_behavior_ctx(&ctx, pi)
}

fn check_shape(ctx: &Ctx, pi: &BehaviorProfile) -> Result<()> {
    if pi.len() != ctx.g.num_players() + 1 {
        return Err(UgtError::Invalid("behavior profile must cover nature and every player".into()));
    }
    for (j, b) in pi.iter().enumerate() {
        let sp = ctx.st.space(j);
        if b.0.len() != sp.cps.len()
            || b.0.iter().zip(&sp.cps).any(|(k, cp)| k.len() != cp.actions.len())
            || !b.is_valid()
        {
            return Err(UgtError::Invalid(format!("player {j}: kernels do not match the choice points")));
        }
    }
    Ok(())
}

fn check_behavior_ctx(ctx: &Ctx, pi: &BehaviorProfile) -> Result<SceVerdict> {
    check_shape(ctx, pi)?;
    let g = ctx.g;
    let mut v = SceVerdict { holds: true, violation: None, witnesses: Vec::new() };
    let all = all_of(ctx);
    for i in g.players() {
        let occ = occurring_sets_behavior(ctx, pi, i);
        let tree = match common_host(g, &occ) {
            Ok(t) => t,
            Err(hosts) => return Ok(v.fail(Condition::Awareness, i, awareness_detail(g, &hosts))),
        };
        let decision: Vec<usize> =
            occ.iter().copied().filter(|&h| g.is_decision_set(h) && own_reaches(ctx, i, &pi[i], h)).collect();
        for &h in &decision {
            let cols: Vec<Vec<Option<Behavior>>> = columns(ctx, i, h, &all)
                .iter()
                .map(|c| {
                    c.iter().enumerate().map(|(j, p)| p.as_ref().map(|p| Behavior::from_plan(ctx, j, p))).collect()
                })
                .collect();
            let diffs = difference_rows(ctx, i, &[h], &pi[i], &cols);
            if weights(&diffs, cols.len()).is_none() {
                return Ok(v.fail(
                    Condition::Rationality,
                    i,
                    format!("no belief makes play rational at {}", g.set_name(h)),
                ));
            }
        }
        let terminal: Vec<usize> = occ.iter().copied().filter(|&h| !g.is_decision_set(h)).collect();
        let chain: Vec<usize> =
            decision.iter().copied().filter(|&h| terminal.iter().any(|&z| g.info_precedes(h, z))).collect();
        let opps = completions(ctx, pi, i, tree)?.unwrap_or_default();
        let diffs = difference_rows(ctx, i, &chain, &pi[i], &opps);
        match weights(&diffs, opps.len()) {
            Some(w) => {
                let belief = opps.into_iter().zip(w).filter(|(_, x)| !x.is_zero()).collect();
                v.witnesses.push(PlayerWitness {
                    player: i,
                    tree,
                    sets: chain,
                    belief: WitnessBelief::Behavior(belief),
                });
            }
            None => {
                return Ok(v.fail(
                    Condition::BeliefConfirmation,
                    i,
                    "no belief indistinguishable from play along the path makes it rational".into(),
                ))
            }
        }
    }
    Ok(v)
}

/// Degenerate behavior profile of a pure profile.
pub fn lift_profile(ctx: &Ctx, s: &Profile) -> BehaviorProfile {
    s.iter().enumerate().map(|(j, p)| Behavior::from_plan(ctx, j, p)).collect()
}

/// Behavior check plus: every plan in the support of each player's
/// product-of-kernels mixture survives rationalizability. Distinct reduced
/// plans are realization-distinct, so this covers every equivalent mixture.
pub fn check_sce_efr(g: &Game, pi: &BehaviorProfile) -> Result<SceVerdict> {
    let ctx = Ctx::new(g);
    let v = check_behavior_ctx(&ctx, pi)?;
    if !v.holds {
        return Ok(v);
    }
    let tr = efr_ctx(&ctx)?;
    for i in g.players() {
        let m = behavior_to_mixed(&ctx, i, &pi[i]);
        let bad = m.support().find(|p| !tr.survives(i, p)).cloned();
        if let Some(p) = bad {
            let detail = format!("{} is not rationalizable", ctx.show_plan(i, &p));
            return Ok(v.fail(Condition::EfrSupport, i, detail));
        }
    }
    Ok(v)
}

/// Nature's default: uniform at every choice.
pub fn nature_uniform(ctx: &Ctx) -> Behavior {
    Behavior::uniform(ctx, 0)
}

/// Profile from per-player mixtures over `plans`, nature uniform.
fn behavior_from_sigma(ctx: &Ctx, plans: &[Vec<Plan>], sigma: &[Vec<Q>]) -> BehaviorProfile {
    let mut pi = vec![nature_uniform(ctx)];
    for (k, s) in sigma.iter().enumerate() {
        let i = k + 1;
        let m = Mixed(plans[i].iter().cloned().zip(s.iter().cloned()).filter(|(_, w)| !w.is_zero()).collect());
        pi.push(mixed_to_behavior(ctx, i, &m));
    }
    pi
}

fn normal_form(ctx: &Ctx, plans: &[Vec<Plan>], t: TreeId) -> Result<NormalForm> {
    let sizes: Vec<usize> = plans[1..].iter().map(|l| l.len()).collect();
    let total = sizes.iter().try_fold(1usize, |a, &b| a.checked_mul(b)).unwrap_or(usize::MAX);
    let cap = oracle_cap();
    if total > cap {
        return Err(UgtError::Budget(format!("normal form with {total} profiles exceeds the cap of {cap}")));
    }
    let nature = nature_uniform(ctx);
    Ok(NormalForm::tabulate(sizes, |p| {
        let mut pi = vec![nature.clone()];
        for (k, &a) in p.iter().enumerate() {
            pi.push(Behavior::from_plan(ctx, k + 1, &plans[k + 1][a]));
        }
        expected_payoff_in(ctx, &pi, t)
    }))
}

/// Nash equilibrium of the game played in tree `t` among plans reduced to
/// `t`, as a behavior profile of the whole game (nature uniform).
pub fn nash_on_tree(g: &Game, t: TreeId) -> Result<BehaviorProfile> {
    let ctx = Ctx::new(g);
    let ts = BTreeSet::from([t]);
    let plans: Vec<Vec<Plan>> = (0..=g.num_players()).map(|j| ctx.st.plans(j, Some(&ts))).collect();
    let nf = normal_form(&ctx, &plans, t)?;
    let sigma = nash(&nf)?;
    Ok(behavior_from_sigma(&ctx, &plans, &sigma))
}

/// Builds an equilibrium in rationalizable conjectures: a Nash equilibrium
/// of the upmost-tree normal form restricted to rationalizable plans,
/// converted to behavior strategies.
pub fn construct_sce_efr(g: &Game) -> Result<(BehaviorProfile, SceVerdict)> {
    let ctx = Ctx::new(g);
    let tr = efr_ctx(&ctx)?;
    let r = tr.result().to_vec();
    for class in path_classes(&ctx, &r) {
        for i in g.players() {
            if let Err(hosts) = common_host(g, &ctx.occurring_sets(&class.profile, i)) {
                return Err(UgtError::Invalid(format!(
                    "not a rationalizable self-confirming game: player {i} along a rationalizable path; {}",
                    awareness_detail(g, &hosts)
                )));
            }
        }
    }
    let nf = normal_form(&ctx, &r, g.tbar())?;
    let sigma = nash(&nf)?;
    let pi = behavior_from_sigma(&ctx, &r, &sigma);
    let v = check_sce_efr(g, &pi)?;
    if !v.holds {
        let why = v.violation.as_ref().map(|x| format!("{} for player {}: {}", x.condition, x.player, x.detail));
        return Err(UgtError::Internal(format!("constructed profile fails the check: {}", why.unwrap_or_default())));
    }
    Ok((pi, v))
}

/// Awareness along play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AwarenessReport {
    /// Some tree hosts every set at every upmost-tree node.
    pub common_constant: bool,
    /// That tree, if any.
    pub common_tree: Option<TreeId>,
    /// Visited sets of the player share one host.
    pub per_player_constant: BTreeMap<Player, bool>,
    /// In the player's own tree, each opponent's sets along play share one
    /// host.
    pub mutual_belief_constant: BTreeMap<Player, bool>,
}

/// Diagnoses constancy of awareness along the play of `pi`.
pub fn awareness_diagnostics(g: &Game, pi: &BehaviorProfile) -> Result<AwarenessReport> {
    let ctx = Ctx::new(g);
    check_shape(&ctx, pi)?;
    let tbar = g.tbar();
    let mut all_hosts = BTreeSet::new();
    for l in g.locs_in(tbar) {
        for i in g.players() {
            if let Some(h) = g.h(l, i) {
                all_hosts.insert(g.info_set(h).host);
            }
        }
    }
    let common_tree = (all_hosts.len() == 1).then(|| *all_hosts.iter().next().unwrap());
    let mut per = BTreeMap::new();
    let mut mutual = BTreeMap::new();
    for i in g.players() {
        let occ = occurring_sets_behavior(&ctx, pi, i);
        per.insert(i, common_host(g, &occ).is_ok());
        let ti = occ.iter().map(|&h| g.info_set(h).host).reduce(|a, b| g.join(a, b)).unwrap_or(tbar);
        let visited: Vec<Loc> = g.trees()[ti]
            .nodes
            .iter()
            .filter(|&&n| !reach_probability_profile(&ctx, pi, Loc::new(n, tbar)).is_zero())
            .map(|&n| Loc::new(n, ti))
            .collect();
        let ok = g.players().filter(|&j| j != i).all(|j| {
            let hosts: BTreeSet<TreeId> =
                visited.iter().filter_map(|&l| g.h(l, j)).map(|h| g.info_set(h).host).collect();
            hosts.len() <= 1
        });
        mutual.insert(i, ok);
    }
    Ok(AwarenessReport {
        common_constant: common_tree.is_some(),
        common_tree,
        per_player_constant: per,
        mutual_belief_constant: mutual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efr::efr_profiles;
    use crate::fixtures::by_name;
    use crate::strategy::Converted;

    fn game(n: &str) -> Game {
        by_name(n).unwrap()
    }

    fn plan(ctx: &Ctx, j: Player, m: &[(&str, &str, &str)]) -> Plan {
        ctx.plan_from_copies(j, m).unwrap()
    }

    #[test]
    fn kernels_move_to_lower_copies_by_label() {
        let labels = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let q = |n: i64, d: i64| Q::new(n.into(), d.into());
        let from = labels(&["a", "b", "c"]);
        let k = vec![q(0, 1), q(1, 3), q(2, 3)];
        assert_eq!(relabel(&from, &k, &labels(&["b", "c"])), Some(vec![q(1, 3), q(2, 3)]));
        assert_eq!(relabel(&from, &k, &labels(&["a", "b"])), None);
    }

    fn ex1_profile(ctx: &Ctx, r: &[(&str, &str, &str)]) -> Profile {
        vec![Plan(vec![]), plan(ctx, 1, r), plan(ctx, 2, &[("a", "Tbar", "m2"), ("a", "T", "r2")])]
    }

    #[test]
    fn ex1_initial_fails_awareness() {
        let g = game("ex1_initial");
        let ctx = Ctx::new(&g);
        let s = ex1_profile(&ctx, &[("r", "T", "l1")]);
        let v = check_sce_pure(&g, &s).unwrap();
        assert_eq!(v.violation.unwrap().condition, Condition::Awareness);
        let v = check_sce_behavior(&g, &lift_profile(&ctx, &s)).unwrap();
        assert_eq!(v.violation.unwrap().condition, Condition::Awareness);
    }

    #[test]
    fn ex1_discovered_r1_holds() {
        let g = game("ex1_discovered");
        let ctx = Ctx::new(&g);
        let s = ex1_profile(&ctx, &[("r", "T", "l1"), ("r", "Tbar", "r1")]);
        assert!(check_sce_pure(&g, &s).unwrap().holds);
        assert!(check_sce_efr(&g, &lift_profile(&ctx, &s)).unwrap().holds);
        let (pi, v) = construct_sce_efr(&g).unwrap();
        assert!(v.holds);
        assert_eq!(pi, lift_profile(&ctx, &s));
    }

    #[test]
    fn ex1_discovered_l1_is_refuted_by_observation() {
        let g = game("ex1_discovered");
        let ctx = Ctx::new(&g);
        let s = ex1_profile(&ctx, &[("r", "T", "l1"), ("r", "Tbar", "l1")]);
        let v = check_sce_pure(&g, &s).unwrap();
        assert_eq!(v.violation.unwrap().condition, Condition::BeliefConfirmation);
    }

    #[test]
    fn pennies_need_mixing() {
        let g = game("matching_pennies");
        let ctx = Ctx::new(&g);
        for s in crate::efr::efr_profiles(&efr_ctx(&ctx).unwrap()) {
            let v = check_sce_pure(&g, &s).unwrap();
            assert!(!v.holds);
        }
        let pi: BehaviorProfile = (0..=2).map(|j| Behavior::uniform(&ctx, j)).collect();
        assert!(check_sce_behavior(&g, &pi).unwrap().holds);
        let (c, _) = construct_sce_efr(&g).unwrap();
        assert_eq!(c, pi);
    }

    #[test]
    fn bos_aware_forward_induction() {
        let g = game("bos_aware");
        let ctx = Ctx::new(&g);
        let (pi, v) = construct_sce_efr(&g).unwrap();
        assert!(v.holds);
        let s = vec![
            Plan(vec![]),
            plan(&ctx, 1, &[("r", "Tbar", "in"), ("s", "Tbar", "B")]),
            plan(&ctx, 2, &[("s", "Tbar", "B")]),
        ];
        assert_eq!(pi, lift_profile(&ctx, &s));
    }

    fn pick(ctx: &Ctx, list: &[Plan], j: Player, at: &[(&str, &str)]) -> Plan {
        let g = ctx.g;
        let set = |n: &str| g.hh(Loc::new(g.node_by_name(n).unwrap(), g.tbar()), j);
        list.iter().find(|p| at.iter().all(|&(n, a)| ctx.choice_at_set(p, set(n)) == Some(a))).unwrap().clone()
    }

    #[test]
    fn bos_repeated_discovered_b_holds() {
        let g = game("bos_repeated_discovered");
        let ctx = Ctx::new(&g);
        let tr = efr_ctx(&ctx).unwrap();
        let r = tr.result();
        let p1 = pick(&ctx, &r[1], 1, &[("r", "in"), ("s", "B"), ("BB", "BB.in"), ("BB.s", "BB.B")]);
        let p2 = pick(&ctx, &r[2], 2, &[("s", "B"), ("BB.s", "BB.B")]);
        let s = vec![Plan(vec![]), p1, p2];
        let v = check_sce_efr(&g, &lift_profile(&ctx, &s)).unwrap();
        assert!(v.holds, "{:?}", v.violation);
    }

    #[test]
    fn fig14_diagnostics() {
        let g = game("fig14");
        let ctx = Ctx::new(&g);
        let profiles = efr_profiles(&efr_ctx(&ctx).unwrap());
        let s = &profiles[0];
        let r = awareness_diagnostics(&g, &lift_profile(&ctx, s)).unwrap();
        assert!(!r.common_constant);
        assert_eq!(r.per_player_constant, BTreeMap::from([(1, true), (2, true)]));
        assert!(!r.mutual_belief_constant[&1]);
        assert!(r.mutual_belief_constant[&2]);
    }

    #[test]
    fn ex2_rsc_equilibrium() {
        let g = game("ex2_rsc");
        let ctx = Ctx::new(&g);
        let (pi, v) = construct_sce_efr(&g).unwrap();
        assert!(v.holds);
        let r = awareness_diagnostics(&g, &pi).unwrap();
        assert!(!r.common_constant);
        assert!(r.per_player_constant.values().all(|&b| b));
        let Converted::Mixed(m) = crate::strategy::kuhn_convert(&ctx, 1, crate::strategy::Strat::Behavior(&pi[1]))
        else {
            unreachable!()
        };
        assert_eq!(m.support().count(), 1);
    }

    #[test]
    fn pure_and_degenerate_agree_on_fixtures() {
        for n in ["ex1_discovered", "ex2_rsc", "ex2_full", "bos_aware", "fig14", "matching_pennies"] {
            let g = game(n);
            let ctx = Ctx::new(&g);
            for class in path_classes(&ctx, &ctx.all_plans()) {
                let s = &class.profile;
                let a = check_sce_pure(&g, s).unwrap().holds;
                let b = check_sce_behavior(&g, &lift_profile(&ctx, s)).unwrap().holds;
                assert_eq!(a, b, "{n} {:?}", class.path);
            }
        }
    }
}
