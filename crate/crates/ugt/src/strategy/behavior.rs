//! Behavior and mixed strategies, reach probabilities and Kuhn conversion.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{Ctx, Plan, Profile};
use crate::game::{Loc, Player};
use crate::num::{is_distribution, Q};

/// Behavior strategy: one distribution per choice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Behavior(pub Vec<Vec<Q>>);

/// One behavior strategy per player (`0` is nature).
pub type BehaviorProfile = Vec<Behavior>;

/// Mixed strategy: weights on reduced plans.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Mixed(pub BTreeMap<Plan, Q>);

/// A strategy of any kind.
#[derive(Clone, Copy, Debug)]
pub enum Strat<'a> {
    /// Pure.
    Pure(&'a Plan),
    /// Mixed.
    Mixed(&'a Mixed),
    /// Behavior.
    Behavior(&'a Behavior),
}

impl Behavior {
    /// Point-mass kernels following a plan; uniform where the plan is silent.
    pub fn from_plan(ctx: &Ctx, j: Player, plan: &Plan) -> Behavior {
        let sp = ctx.st.space(j);
        Behavior(
            sp.cps
                .iter()
                .enumerate()
                .map(|(c, cp)| {
                    let k = cp.actions.len();
                    match plan.0[c] {
                        Some(a) => (0..k).map(|x| if x == a { Q::one() } else { Q::zero() }).collect(),
                        None => vec![Q::new(1.into(), (k as i64).into()); k],
                    }
                })
                .collect(),
        )
    }

    /// Uniform kernels everywhere.
    pub fn uniform(ctx: &Ctx, j: Player) -> Behavior {
        Behavior(
            ctx.st
                .space(j)
                .cps
                .iter()
                .map(|cp| vec![Q::new(1.into(), (cp.actions.len() as i64).into()); cp.actions.len()])
                .collect(),
        )
    }

    /// True if every kernel is a distribution.
    pub fn is_valid(&self) -> bool {
        self.0.iter().all(|k| is_distribution(k))
    }

    /// Probability of the own moves leading to `l`.
    pub fn own_reach(&self, ctx: &Ctx, j: Player, l: Loc) -> Q {
        let mut p = Q::one();
        for &(c, a) in ctx.st.own_constraints(j, l) {
            match self.0[c].get(a) {
                Some(x) => p *= x,
                None => return Q::zero(),
            }
        }
        p
    }
}

impl Mixed {
    /// Degenerate mixture.
    pub fn pure(plan: Plan) -> Mixed {
        Mixed(BTreeMap::from([(plan, Q::one())]))
    }

    /// Plans with positive weight.
    pub fn support(&self) -> impl Iterator<Item = &Plan> {
        self.0.iter().filter(|(_, w)| !w.is_zero()).map(|(p, _)| p)
    }
}

/// `ρ(l | x_i, s_{-i})`: probability that player `i` playing `x` and the
/// other players playing their plans in `others` reach copy `l`.
pub fn reach_probability(ctx: &Ctx, i: Player, x: Strat, others: &Profile, l: Loc) -> Q {
    for (j, plan) in others.iter().enumerate() {
        if j != i && !ctx.st.reached_by(j, plan, l) {
            return Q::zero();
        }
    }
    match x {
        Strat::Pure(p) => {
            if ctx.st.reached_by(i, p, l) {
                Q::one()
            } else {
                Q::zero()
            }
        }
        Strat::Mixed(m) => {
            let mut s = Q::zero();
            for (p, w) in &m.0 {
                if ctx.st.reached_by(i, p, l) {
                    s += w;
                }
            }
            s
        }
        Strat::Behavior(b) => b.own_reach(ctx, i, l),
    }
}

/// Probability that a behavior profile reaches copy `l`.
pub fn reach_probability_profile(ctx: &Ctx, pi: &BehaviorProfile, l: Loc) -> Q {
    let mut p = Q::one();
    for (j, b) in pi.iter().enumerate() {
        p *= b.own_reach(ctx, j, l);
        if p.is_zero() {
            break;
        }
    }
    p
}

/// Conditional realization weights; uniform where the mixture never arrives.
pub fn mixed_to_behavior(ctx: &Ctx, i: Player, m: &Mixed) -> Behavior {
    let sp = ctx.st.space(i);
    let mut out = Vec::with_capacity(sp.cps.len());
    for (c, cp) in sp.cps.iter().enumerate() {
        let k = cp.actions.len();
        let mut w = vec![Q::zero(); k];
        let mut tot = Q::zero();
        for (p, x) in &m.0 {
            if let Some(a) = p.0[c] {
                w[a] += x;
                tot += x;
            }
        }
        if tot.is_zero() {
            out.push(vec![Q::new(1.into(), (k as i64).into()); k]);
        } else {
            out.push(w.into_iter().map(|x| x / &tot).collect());
        }
    }
    Behavior(out)
}

/// Product-of-kernels weights over reduced plans.
pub fn behavior_to_mixed(ctx: &Ctx, i: Player, b: &Behavior) -> Mixed {
    let mut out = BTreeMap::new();
    for p in ctx.st.plans(i, None) {
        let mut w = Q::one();
        for (c, a) in p.0.iter().enumerate() {
            if let Some(a) = a {
                w *= &b.0[c][*a];
            }
        }
        if !w.is_zero() {
            out.insert(p, w);
        }
    }
    Mixed(out)
}

/// Result of a Kuhn conversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Converted {
    /// From mixed.
    Behavior(Behavior),
    /// From behavior.
    Mixed(Mixed),
}

/// Converts mixed to behavior or behavior to mixed; pure is treated as
/// degenerate mixed.
pub fn kuhn_convert(ctx: &Ctx, i: Player, x: Strat) -> Converted {
    match x {
        Strat::Pure(p) => Converted::Behavior(mixed_to_behavior(ctx, i, &Mixed::pure(p.clone()))),
        Strat::Mixed(m) => Converted::Behavior(mixed_to_behavior(ctx, i, m)),
        Strat::Behavior(b) => Converted::Mixed(behavior_to_mixed(ctx, i, b)),
    }
}

/// `H̃_i(π)`: sets of `i` at upmost-tree nodes reached with positive probability.
pub fn occurring_sets_behavior(ctx: &Ctx, pi: &BehaviorProfile, i: Player) -> BTreeSet<usize> {
    let t = ctx.g.tbar();
    ctx.g
        .locs_in(t)
        .filter(|&l| !reach_probability_profile(ctx, pi, l).is_zero())
        .filter_map(|l| ctx.g.h(l, i))
        .collect()
}

/// Expected payoff vector of a behavior profile, played in the upmost tree.
pub fn expected_tbar_payoff(ctx: &Ctx, pi: &BehaviorProfile) -> Vec<Q> {
    expected_payoff_in(ctx, pi, ctx.g.tbar())
}

/// Expected payoff vector of a behavior profile played in tree `t`.
pub fn expected_payoff_in(ctx: &Ctx, pi: &BehaviorProfile, t: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); ctx.g.num_players()];
    for z in ctx.g.leaves_of(t) {
        let p = reach_probability_profile(ctx, pi, Loc::new(z, t));
        if p.is_zero() {
            continue;
        }
        for (k, u) in ctx.g.node(z).payoffs.iter().enumerate() {
            v[k] += &p * u;
        }
    }
    v
}
