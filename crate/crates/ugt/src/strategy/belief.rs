//! Beliefs over opponents' partial profiles, payoffs at an information set,
//! and sequential rationality.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{Ctx, Plan};
use crate::error::{Result, UgtError};
use crate::game::{Loc, Player};
use crate::num::Q;

/// Opponents' profile: one plan per player with the owner's slot empty.
pub type Partial = Vec<Option<Plan>>;

/// A belief system of one player over opponents' pure partial profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefSystem {
    /// Owner.
    pub owner: Player,
    /// Distribution at each information set.
    pub beliefs: BTreeMap<usize, Vec<(Partial, Q)>>,
}

fn refs<'a>(i: Player, plan: &'a Plan, col: &'a Partial) -> Vec<Option<&'a Plan>> {
    col.iter().enumerate().map(|(j, p)| if j == i { Some(plan) } else { p.as_ref() }).collect()
}

/// True if the opponents' profile can reach `h` (the owner quantified out).
pub fn column_reaches(ctx: &Ctx, col: &Partial, h: usize) -> bool {
    let r: Vec<Option<&Plan>> = col.iter().map(|p| p.as_ref()).collect();
    ctx.reaches_set(&r, h)
}

/// Owner's payoff of the play in tree `t`.
pub fn payoff_in(ctx: &Ctx, i: Player, t: usize, plan: &Plan, col: &Partial) -> Option<Q> {
    let play = ctx.play_partial(&refs(i, plan, col), t);
    play.terminal.map(|z| ctx.g.node(z).payoffs[i - 1].clone())
}

/// Sets of `i` that `h` precedes, `h` included.
pub fn local_sets(ctx: &Ctx, h: usize) -> Vec<usize> {
    let i = ctx.g.info_set(h).player;
    let mut v = vec![h];
    v.extend(ctx.g.decision_sets_of(i).into_iter().filter(|&k| ctx.g.info_precedes(h, k)));
    v
}

/// Deviations of `plan` at `h` and its successors, restricted to what
/// matters for play in the host tree of `h`. The plan itself is among them.
pub fn continuations(ctx: &Ctx, i: Player, h: usize, plan: &Plan) -> Vec<Plan> {
    let n = ctx.st.space(i).cps.len();
    let mut free = vec![false; n];
    for k in local_sets(ctx, h) {
        if let Some(c) = ctx.cp_of_set(k) {
            free[c] = true;
        }
    }
    let host = BTreeSet::from([ctx.g.info_set(h).host]);
    let mut out = ctx.st.complete(i, plan, &free, Some(&host));
    out.sort();
    out.dedup();
    out
}

/// Payoffs of `plan` against each column, played in the host tree of `h`.
pub fn payoff_row(ctx: &Ctx, i: Player, h: usize, plan: &Plan, cols: &[Partial]) -> Result<Vec<Q>> {
    let t = ctx.g.info_set(h).host;
    cols.iter()
        .map(|c| {
            payoff_in(ctx, i, t, plan, c)
                .ok_or_else(|| UgtError::Invalid(format!("play undetermined at {}", ctx.g.set_name(h))))
        })
        .collect()
}

/// Forces the owner's moves on the way to some member of `h` that the
/// column reaches.
fn forced(ctx: &Ctx, i: Player, h: usize, plan: &Plan, col: &Partial) -> Option<Plan> {
    let r: Vec<Option<&Plan>> = col.iter().map(|p| p.as_ref()).collect();
    let m: Loc = ctx.g.info_set(h).locs().find(|&l| ctx.reaches_loc(&r, l))?;
    let mut p = plan.clone();
    for &(c, a) in ctx.st.own_constraints(i, m) {
        p.0[c] = Some(a);
    }
    Some(p)
}

/// Expected payoff at `h` in its host tree under `belief`, assuming `h` is
/// reached. Plans that do not reach `h` are evaluated as if their earlier
/// moves led there.
pub fn expected_payoff_at(ctx: &Ctx, i: Player, h: usize, plan: &Plan, belief: &[(Partial, Q)]) -> Result<Q> {
    let t = ctx.g.info_set(h).host;
    let mut v = Q::zero();
    for (col, w) in belief {
        if w.is_zero() {
            continue;
        }
        if !column_reaches(ctx, col, h) {
            return Err(UgtError::Invalid(format!("belief at {} puts weight off the set", ctx.g.set_name(h))));
        }
        let p = forced(ctx, i, h, plan, col).expect("column reaches h");
        let u = payoff_in(ctx, i, t, &p, col)
            .ok_or_else(|| UgtError::Invalid(format!("no continuation at {}", ctx.g.set_name(h))))?;
        v += w * u;
    }
    Ok(v)
}

/// True if `plan` does not reach `h`, or no deviation at `h` and its
/// successors earns strictly more under `belief`.
pub fn is_rational_at(ctx: &Ctx, i: Player, h: usize, plan: &Plan, belief: &[(Partial, Q)]) -> Result<bool> {
    let own: Vec<Option<&Plan>> = (0..=ctx.g.num_players()).map(|j| (j == i).then_some(plan)).collect();
    if !ctx.reaches_set(&own, h) {
        return Ok(true);
    }
    let base = expected_payoff_at(ctx, i, h, plan, belief)?;
    for d in continuations(ctx, i, h, plan) {
        if expected_payoff_at(ctx, i, h, &d, belief)? > base {
            return Ok(false);
        }
    }
    Ok(true)
}

impl BeliefSystem {
    /// Checks reaching support and conditioning along precedence.
    pub fn check(&self, ctx: &Ctx) -> Result<()> {
        for (&h, b) in &self.beliefs {
            for (col, w) in b {
                if !w.is_zero() && !column_reaches(ctx, col, h) {
                    return Err(UgtError::Invalid(format!("belief at {} does not reach it", ctx.g.set_name(h))));
                }
            }
        }
        for (&h, b) in &self.beliefs {
            for (&k, bk) in &self.beliefs {
                if !ctx.g.info_precedes(h, k) {
                    continue;
                }
                let mass: Q = b.iter().filter(|(c, _)| column_reaches(ctx, c, k)).map(|(_, w)| w.clone()).sum();
                if mass.is_zero() {
                    continue;
                }
                let want: BTreeMap<&Partial, Q> = b
                    .iter()
                    .filter(|(c, w)| !w.is_zero() && column_reaches(ctx, c, k))
                    .map(|(c, w)| (c, w / &mass))
                    .collect();
                let have: BTreeMap<&Partial, Q> =
                    bk.iter().filter(|(_, w)| !w.is_zero()).map(|(c, w)| (c, w.clone())).collect();
                if want != have {
                    return Err(UgtError::Invalid(format!(
                        "belief at {} is not the conditional of {}",
                        ctx.g.set_name(k),
                        ctx.g.set_name(h)
                    )));
                }
            }
        }
        Ok(())
    }
}
