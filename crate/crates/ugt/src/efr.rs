//! Extensive-form rationalizability.
//!
//! Round `k` keeps a plan if, at every decision set it reaches, some belief
//! over opponents' partial profiles makes it optimal. Beliefs at `h` must be
//! concentrated on the latest round whose survivors can still reach `h`.
//! Because sets linked by precedence share a host tree and a plan optimal
//! under a belief stays optimal under its conditionals, feasibility can be
//! decided set by set; [`efr_oracle`] checks whole belief systems instead.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Result, UgtError};
use crate::game::{info_arborescence, Game, InfoForest, Player, NATURE};
use crate::lp::{feasible, Cmp, Row};
use crate::num::Q;
use crate::strategy::{column_reaches, continuations, expected_payoff_at, local_sets, Ctx, Partial, Plan, Profile};

/// Per-round survivors. `rounds[0]` holds all plans; `rounds[k][i]` is
/// `R_i^k`. Nature always keeps every plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EfrTrace {
    /// Survivors by round and player.
    pub rounds: Vec<Vec<Vec<Plan>>>,
    /// For round `k` (index `k - 1`), the round `j` whose survivors bound the
    /// belief at each `(player, set)`.
    pub belief_constraints: Vec<BTreeMap<(Player, usize), usize>>,
    /// First `k ≥ 1` with `R^k = R^{k+1}`.
    pub fixpoint_round: usize,
}

impl EfrTrace {
    /// `R^∞`, indexed by player.
    pub fn result(&self) -> &[Vec<Plan>] {
        &self.rounds[self.fixpoint_round]
    }

    /// `R^1`, indexed by player.
    pub fn rational(&self) -> &[Vec<Plan>] {
        &self.rounds[1.min(self.rounds.len() - 1)]
    }

    /// Whether `plan` survives every round.
    pub fn survives(&self, i: Player, plan: &Plan) -> bool {
        self.result()[i].binary_search(plan).is_ok()
    }
}

/// Opponents' partial profiles drawn from `lists`, projected to the host of
/// `h`, that reach `h`.
pub fn columns(ctx: &Ctx, i: Player, h: usize, lists: &[Vec<Plan>]) -> Vec<Partial> {
    let ts = BTreeSet::from([ctx.g.info_set(h).host]);
    let mut per: Vec<Vec<Option<Plan>>> = Vec::new();
    for (m, list) in lists.iter().enumerate() {
        if m == i {
            per.push(vec![None]);
            continue;
        }
        let set: BTreeSet<Plan> = list.iter().map(|p| ctx.st.reduce(m, p, Some(&ts))).collect();
        per.push(set.into_iter().map(Some).collect());
    }
    let mut out = BTreeSet::new();
    let mut cur: Partial = vec![None; per.len()];
    product(&per, 0, &mut cur, &mut |col| {
        if column_reaches(ctx, col, h) {
            out.insert(col.clone());
        }
    });
    out.into_iter().collect()
}

fn product(per: &[Vec<Option<Plan>>], k: usize, cur: &mut Partial, f: &mut dyn FnMut(&Partial)) {
    if k == per.len() {
        f(cur);
        return;
    }
    for x in &per[k] {
        cur[k] = x.clone();
        product(per, k + 1, cur, f);
    }
}

fn point(c: &Partial) -> [(Partial, Q); 1] {
    [(c.clone(), Q::one())]
}

/// Whether some belief over `cols` makes `plan` optimal at `h` among its
/// deviations at `h` and later sets. A set no opponent profile reaches
/// imposes nothing.
pub fn best_reply_exists(ctx: &Ctx, i: Player, h: usize, plan: &Plan, cols: &[Partial]) -> Result<bool> {
    if cols.is_empty() {
        return Ok(true);
    }
    let rows: Vec<Plan> = continuations(ctx, i, h, plan).into_iter().filter(|d| d != plan).collect();
    let own: Vec<Q> = cols.iter().map(|c| expected_payoff_at(ctx, i, h, plan, &point(c))).collect::<Result<_>>()?;
    let mut diff: Vec<Vec<Q>> = Vec::with_capacity(rows.len());
    for d in &rows {
        let u: Vec<Q> = cols.iter().map(|c| expected_payoff_at(ctx, i, h, d, &point(c))).collect::<Result<_>>()?;
        let v: Vec<Q> = own.iter().zip(&u).map(|(a, b)| a - b).collect();
        if v.iter().any(|x| !x.is_zero()) && !diff.contains(&v) {
            diff.push(v);
        }
    }
    if (0..cols.len()).any(|c| diff.iter().all(|v| v[c] >= Q::zero())) {
        return Ok(true);
    }
    if diff.iter().any(|v| v.iter().all(|x| *x < Q::zero())) {
        return Ok(false);
    }
    // A row that dominates another is implied by it.
    let implied = |a: &Vec<Q>| diff.iter().any(|b| b != a && b.iter().zip(a).all(|(x, y)| x <= y));
    let diff: Vec<Vec<Q>> = diff.iter().filter(|a| !implied(a)).cloned().collect();
    let n = cols.len();
    let mut lp: Vec<Row> = vec![(vec![Q::one(); n], Cmp::Eq, Q::one())];
    lp.extend(diff.into_iter().map(|v| (v, Cmp::Ge, Q::zero())));
    Ok(feasible(&lp, n).is_some())
}

/// Belief support allowed at `h` in round `k`, with the round it comes from.
fn allowed(ctx: &Ctx, i: Player, h: usize, rounds: &[Vec<Vec<Plan>>], k: usize) -> (usize, Vec<Partial>) {
    for j in (0..k).rev() {
        let cols = columns(ctx, i, h, &rounds[j]);
        if !cols.is_empty() {
            return (j, cols);
        }
    }
    (0, Vec::new())
}

fn own_profile(ctx: &Ctx, i: Player, plan: &Plan) -> Vec<Option<Plan>> {
    (0..=ctx.g.num_players()).map(|j| (j == i).then(|| plan.clone())).collect()
}

fn reached_decision_sets(ctx: &Ctx, i: Player, plan: &Plan) -> Vec<usize> {
    let own = own_profile(ctx, i, plan);
    let r: Vec<Option<&Plan>> = own.iter().map(|p| p.as_ref()).collect();
    ctx.g.decision_sets_of(i).into_iter().filter(|&h| ctx.reaches_set(&r, h)).collect()
}

/// Runs the elimination to its fixpoint.
pub fn efr(g: &Game) -> Result<EfrTrace> {
    efr_ctx(&Ctx::new(g))
}

/// [`efr`] on a prepared context.
pub fn efr_ctx(ctx: &Ctx) -> Result<EfrTrace> {
    let n = ctx.g.num_players();
    let mut rounds = vec![ctx.all_plans()];
    let mut constraints = Vec::new();
    let reached: Vec<Vec<Vec<usize>>> = (0..=n)
        .map(|i| {
            if i == NATURE {
                Vec::new()
            } else {
                rounds[0][i].iter().map(|p| reached_decision_sets(ctx, i, p)).collect()
            }
        })
        .collect();
    let local: BTreeMap<usize, Vec<usize>> = (1..=n)
        .flat_map(|i| ctx.g.decision_sets_of(i))
        .map(|h| (h, local_sets(ctx, h).into_iter().filter_map(|k| ctx.cp_of_set(k)).collect()))
        .collect();
    // Verdicts per set, valid while the set's belief support is unchanged.
    type Memo = (Vec<Partial>, BTreeMap<Vec<Option<usize>>, bool>);
    let mut memo: BTreeMap<(Player, usize), Memo> = BTreeMap::new();
    loop {
        let k = rounds.len();
        let mut next = vec![rounds[0][NATURE].clone()];
        let mut used = BTreeMap::new();
        for i in 1..=n {
            for h in ctx.g.decision_sets_of(i) {
                let (j, cols) = allowed(ctx, i, h, &rounds, k);
                used.insert((i, h), j);
                let entry = memo.entry((i, h)).or_insert_with(|| (cols.clone(), BTreeMap::new()));
                if entry.0 != cols {
                    *entry = (cols, BTreeMap::new());
                }
            }
            let mut keep = Vec::new();
            for (p, plan) in rounds[0][i].iter().enumerate() {
                let mut ok = true;
                for &h in &reached[i][p] {
                    let key: Vec<Option<usize>> = local[&h].iter().map(|&c| plan.0[c]).collect();
                    let (cols, known) = memo.get_mut(&(i, h)).expect("support computed");
                    let v = match known.get(&key) {
                        Some(v) => *v,
                        None => {
                            let v = best_reply_exists(ctx, i, h, plan, cols)?;
                            known.insert(key, v);
                            v
                        }
                    };
                    if !v {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    keep.push(plan.clone());
                }
            }
            if keep.is_empty() {
                return Err(UgtError::Invalid(format!("round {k}: no plan of player {i} survives")));
            }
            next.push(keep);
        }
        constraints.push(used);
        let stable = next == rounds[k - 1];
        rounds.push(next);
        if stable && k >= 2 {
            return Ok(EfrTrace { fixpoint_round: k - 1, rounds, belief_constraints: constraints });
        }
    }
}

/// Every profile in `R^∞` (nature unrestricted).
pub fn efr_profiles(t: &EfrTrace) -> Vec<Profile> {
    let mut out = Vec::new();
    let lists = t.result();
    let mut cur: Profile = Vec::new();
    fn go(lists: &[Vec<Plan>], cur: &mut Profile, out: &mut Vec<Profile>) {
        if cur.len() == lists.len() {
            out.push(cur.clone());
            return;
        }
        for p in &lists[cur.len()] {
            cur.push(p.clone());
            go(lists, cur, out);
            cur.pop();
        }
    }
    go(lists, &mut cur, &mut out);
    out
}

/// Brute-force cap for [`efr_oracle`], from `UGT_ORACLE_CAP` when set.
pub fn oracle_cap() -> usize {
    std::env::var("UGT_ORACLE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(20_000)
}

struct Oracle<'c, 'g> {
    ctx: &'c Ctx<'g>,
    budget: usize,
}

impl Oracle<'_, '_> {
    fn spend(&mut self) -> Result<()> {
        if self.budget == 0 {
            return Err(UgtError::Budget("oracle cap reached".into()));
        }
        self.budget -= 1;
        Ok(())
    }

    fn value(&self, i: Player, h: usize, d: &Plan, mu: &[(Partial, Q)]) -> Result<Q> {
        expected_payoff_at(self.ctx, i, h, d, mu)
    }

    /// Plans of `i` on the host tree of `h` that reach `h`.
    fn deviations(&self, i: Player, h: usize) -> Vec<Plan> {
        let ts = BTreeSet::from([self.ctx.g.info_set(h).host]);
        let mut out = self.ctx.st.plans(i, Some(&ts));
        out.retain(|d| {
            let own = own_profile(self.ctx, i, d);
            let r: Vec<Option<&Plan>> = own.iter().map(|p| p.as_ref()).collect();
            self.ctx.reaches_set(&r, h)
        });
        out
    }

    /// Every plan of `i` on the host tree of `h` that reaches it is a
    /// deviation.
    fn optimal(&mut self, i: Player, h: usize, plan: &Plan, mu: &[(Partial, Q)]) -> Result<bool> {
        let base = self.value(i, h, plan, mu)?;
        for d in self.deviations(i, h) {
            self.spend()?;
            if self.value(i, h, &d, mu)? > base {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Gap vectors `u(plan, c) - u(d, c)` over deviations `d`.
    fn gaps(&mut self, i: Player, h: usize, plan: &Plan, cols: &[Partial]) -> Result<Vec<Vec<Q>>> {
        let own: Vec<Q> = cols.iter().map(|c| self.value(i, h, plan, &point(c))).collect::<Result<_>>()?;
        let mut gaps: Vec<Vec<Q>> = Vec::new();
        for d in self.deviations(i, h) {
            let u: Vec<Q> = cols.iter().map(|c| self.value(i, h, &d, &point(c))).collect::<Result<_>>()?;
            let v: Vec<Q> = own.iter().zip(&u).map(|(a, b)| a - b).collect();
            if !gaps.contains(&v) {
                gaps.push(v);
            }
        }
        Ok(gaps)
    }

    /// Vertices with support of the given size of the beliefs under which
    /// every gap is non-negative.
    fn vertices(&mut self, gaps: &[Vec<Q>], n: usize, size: usize) -> Result<Vec<Vec<Q>>> {
        let mut out = Vec::new();
        {
            for supp in subsets(n, size) {
                for tight in subsets(gaps.len(), size - 1) {
                    self.spend()?;
                    let mut a: Vec<Vec<Q>> = vec![vec![Q::one(); size]];
                    let mut b = vec![Q::one()];
                    for &r in &tight {
                        a.push(supp.iter().map(|&c| gaps[r][c].clone()).collect());
                        b.push(Q::zero());
                    }
                    let Some(x) = solve(a, b) else { continue };
                    if x.iter().any(|v| *v < Q::zero()) {
                        continue;
                    }
                    let mut mu = vec![Q::zero(); n];
                    for (k, &c) in supp.iter().enumerate() {
                        mu[c] = x[k].clone();
                    }
                    let ok = gaps.iter().all(|v| v.iter().zip(&mu).map(|(p, q)| p * q).sum::<Q>() >= Q::zero());
                    if ok && !out.contains(&mu) {
                        out.push(mu);
                    }
                }
            }
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn system(
        &mut self,
        i: Player,
        plan: &Plan,
        forest: &InfoForest,
        h: usize,
        allowed: &BTreeMap<usize, Vec<Partial>>,
        forced: Option<Vec<(Partial, Q)>>,
        reached: &BTreeSet<usize>,
    ) -> Result<bool> {
        if !reached.contains(&h) {
            return Ok(true);
        }
        let cols = &allowed[&h];
        if cols.is_empty() {
            return Ok(true);
        }
        if let Some(mu) = forced {
            if mu.iter().any(|(c, _)| !cols.contains(c)) {
                return Ok(false);
            }
            return self.accept(i, plan, forest, h, allowed, mu, reached);
        }
        let gaps = self.gaps(i, h, plan, cols)?;
        for size in 1..=cols.len() {
            for v in self.vertices(&gaps, cols.len(), size)? {
                let mu = cols.iter().cloned().zip(v).filter(|(_, w)| !w.is_zero()).collect();
                if self.accept(i, plan, forest, h, allowed, mu, reached)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    #[allow(clippy::too_many_arguments)]
    fn accept(
        &mut self,
        i: Player,
        plan: &Plan,
        forest: &InfoForest,
        h: usize,
        allowed: &BTreeMap<usize, Vec<Partial>>,
        mu: Vec<(Partial, Q)>,
        reached: &BTreeSet<usize>,
    ) -> Result<bool> {
        if !self.optimal(i, h, plan, &mu)? {
            return Ok(false);
        }
        for k in forest.children(h) {
            let mass: Q = mu.iter().filter(|(c, _)| column_reaches(self.ctx, c, k)).map(|(_, w)| w.clone()).sum();
            let f = (!mass.is_zero()).then(|| {
                mu.iter().filter(|(c, _)| column_reaches(self.ctx, c, k)).map(|(c, w)| (c.clone(), w / &mass)).collect()
            });
            if !self.system(i, plan, forest, k, allowed, f, reached)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Unique solution of a square system, if any.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let piv = a[col][col].clone();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &piv;
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|r| &b[r] / &a[r][r]).collect())
}

/// Independent elimination that searches whole belief systems through
/// vertex enumeration. Errors with [`UgtError::Budget`] past [`oracle_cap`].
pub fn efr_oracle(g: &Game) -> Result<Vec<Vec<Vec<Plan>>>> {
    let ctx = Ctx::new(g);
    let n = g.num_players();
    let mut o = Oracle { ctx: &ctx, budget: oracle_cap() };
    let forests: Vec<InfoForest> = (1..=n).map(|i| info_arborescence(g, i)).collect::<Result<_>>()?;
    let mut rounds = vec![ctx.all_plans()];
    loop {
        let k = rounds.len();
        let mut next = vec![rounds[0][NATURE].clone()];
        for i in 1..=n {
            let forest = &forests[i - 1];
            let mut allowed = BTreeMap::new();
            for &h in &forest.sets {
                if !g.is_decision_set(h) {
                    continue;
                }
                let mut cols = Vec::new();
                for j in (0..k).rev() {
                    cols = columns(&ctx, i, h, &rounds[j]);
                    if !cols.is_empty() {
                        break;
                    }
                }
                allowed.insert(h, cols);
            }
            let mut keep = Vec::new();
            for plan in &rounds[0][i] {
                let reached: BTreeSet<usize> = reached_decision_sets(&ctx, i, plan).into_iter().collect();
                let mut ok = true;
                for h in forest.roots() {
                    if g.is_decision_set(h) && !o.system(i, plan, forest, h, &allowed, None, &reached)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    keep.push(plan.clone());
                }
            }
            next.push(keep);
        }
        let stable = next == rounds[k - 1];
        rounds.push(next);
        if stable {
            return Ok(rounds);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::by_name;

    fn labels(ctx: &Ctx, i: Player, ps: &[Plan]) -> Vec<String> {
        ps.iter().map(|p| ctx.show_plan(i, p)).collect()
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![Q::one(), Q::one()], vec![Q::one(), -Q::one()]];
        let x = solve(a, vec![Q::from_integer(3.into()), Q::one()]).unwrap();
        assert_eq!(x, vec![Q::from_integer(2.into()), Q::one()]);
        assert!(solve(vec![vec![Q::one(), Q::one()], vec![Q::one(), Q::one()]], vec![Q::one(), Q::zero()]).is_none());
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn single_decision_keeps_best() {
        let g = by_name("single_decision").unwrap();
        let ctx = Ctx::new(&g);
        let t = efr_ctx(&ctx).unwrap();
        assert_eq!(labels(&ctx, 1, &t.result()[1]), vec!["P1{r}@Tbar=a"]);
    }

    #[test]
    fn matching_pennies_keeps_everything() {
        let g = by_name("matching_pennies").unwrap();
        let t = efr(&g).unwrap();
        assert_eq!(t.result()[1].len(), 2);
        assert_eq!(t.result()[2].len(), 2);
        assert_eq!(t.fixpoint_round, 1);
    }

    fn show(ctx: &Ctx, t: &EfrTrace, i: Player) -> Vec<String> {
        labels(ctx, i, &t.result()[i])
    }

    #[test]
    fn ex1_initial_path() {
        let g = by_name("ex1_initial").unwrap();
        let ctx = Ctx::new(&g);
        let t = efr_ctx(&ctx).unwrap();
        assert_eq!(show(&ctx, &t, 1), ["P1{r}@T=l1"]);
        assert_eq!(show(&ctx, &t, 2), ["P2{a}@T=r2 P2{a}@Tbar=m2"]);
        let prof = &efr_profiles(&t)[0];
        let path: Vec<String> = ctx.tbar_path(prof).iter().map(|&n| g.node(n).name.clone()).collect();
        assert_eq!(path, ["r", "a", "zm"]);
    }

    #[test]
    fn ex1_discovered_forces_r1() {
        let g = by_name("ex1_discovered").unwrap();
        let ctx = Ctx::new(&g);
        let t = efr_ctx(&ctx).unwrap();
        assert_eq!(show(&ctx, &t, 1), ["P1{r}@T=l1 P1{r}@Tbar=r1"]);
    }

    #[test]
    fn oracle_agrees_on_small_fixtures() {
        for n in ["ex1_initial", "ex1_discovered", "ex2_initial", "bos_aware", "fig14", "matching_pennies"] {
            let g = by_name(n).unwrap();
            let t = efr(&g).unwrap();
            let o = efr_oracle(&g).unwrap();
            assert_eq!(o[o.len() - 1], t.result(), "{n}");
        }
    }
}
