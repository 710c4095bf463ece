//! Strategy profiles on disk.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "profile": {
//!     "1": { "r@T": "l1" },
//!     "2": { "a@Tbar": { "l2": "0/1", "m2": "1/1", "r2": "0/1" }, "a@T": "r2" }
//!   }
//! }
//! ```
//!
//! Each key names a copy governed by one of the player's choice points. A
//! string picks an action; an object gives a distribution over labels.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::json::FORMAT_VERSION;
use crate::error::{Result, UgtError};
use crate::game::{Loc, Player};
use crate::num::{fmt_q, is_distribution, parse_q, Q};
use crate::strategy::{Behavior, BehaviorProfile, Ctx, Plan, Profile};

/// One choice: a label or a distribution over labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Choice {
    /// Point mass.
    Action(String),
    /// Weights as `"p/q"` strings.
    Mix(BTreeMap<String, String>),
}

/// A profile as written: per player, choices keyed by `node@tree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    /// Must equal [`FORMAT_VERSION`].
    pub format_version: u32,
    /// Choices per player.
    pub profile: BTreeMap<Player, BTreeMap<String, Choice>>,
}

/// Parses a profile document.
pub fn parse_profile(text: &str) -> Result<ProfileDoc> {
    let d: ProfileDoc = serde_json::from_str(text).map_err(|e| UgtError::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    if d.format_version != FORMAT_VERSION {
        return Err(UgtError::Invalid(format!("unsupported format_version {}", d.format_version)));
    }
    Ok(d)
}

fn loc_of(ctx: &Ctx, key: &str) -> Result<Loc> {
    let (n, t) = key.split_once('@').ok_or_else(|| UgtError::Invalid(format!("`{key}` is not NODE@TREE")))?;
    let node = ctx.g.node_by_name(n).ok_or_else(|| UgtError::Invalid(format!("unknown node `{n}`")))?;
    let tree = ctx.g.tree_by_name(t).ok_or_else(|| UgtError::Invalid(format!("unknown tree `{t}`")))?;
    if !ctx.g.in_tree(node, tree) {
        return Err(UgtError::Invalid(format!("`{n}` has no copy in `{t}`")));
    }
    Ok(Loc::new(node, tree))
}

/// Kernels per choice point of `j`, keyed by choice-point index.
fn kernels(ctx: &Ctx, j: Player, doc: &ProfileDoc) -> Result<BTreeMap<usize, Vec<Q>>> {
    let mut out: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    let Some(choices) = doc.profile.get(&j) else { return Ok(out) };
    let sp = ctx.st.space(j);
    for (key, ch) in choices {
        let l = loc_of(ctx, key)?;
        let c = ctx.st.cp(j, l).ok_or_else(|| UgtError::Invalid(format!("player {j} does not move at {key}")))?;
        let acts = &sp.cps[c].actions;
        let k = match ch {
            Choice::Action(a) => {
                let x = acts
                    .iter()
                    .position(|y| y == a)
                    .ok_or_else(|| UgtError::Invalid(format!("player {j}: `{a}` is not available at {key}")))?;
                (0..acts.len()).map(|y| if y == x { Q::one() } else { Q::zero() }).collect()
            }
            Choice::Mix(m) => {
                let mut k = vec![Q::zero(); acts.len()];
                for (a, w) in m {
                    let x = acts
                        .iter()
                        .position(|y| y == a)
                        .ok_or_else(|| UgtError::Invalid(format!("player {j}: `{a}` is not available at {key}")))?;
                    k[x] = parse_q(w).map_err(|e| UgtError::Invalid(format!("{key}: {e}")))?;
                }
                if !is_distribution(&k) {
                    return Err(UgtError::Invalid(format!("player {j}: weights at {key} are not a distribution")));
                }
                k
            }
        };
        if let Some(prev) = out.insert(c, k.clone()) {
            if prev != k {
                return Err(UgtError::Invalid(format!("player {j}: conflicting choices for the set at {key}")));
            }
        }
    }
    Ok(out)
}

/// Behavior profile; choice points left out get uniform kernels.
pub fn to_behavior(ctx: &Ctx, doc: &ProfileDoc) -> Result<BehaviorProfile> {
    check_players(ctx, doc)?;
    (0..=ctx.g.num_players())
        .map(|j| {
            let mut b = Behavior::uniform(ctx, j);
            for (c, k) in kernels(ctx, j, doc)? {
                b.0[c] = k;
            }
            Ok(b)
        })
        .collect()
}

/// Pure profile; every reachable choice point needs a point mass.
pub fn to_pure(ctx: &Ctx, doc: &ProfileDoc) -> Result<Profile> {
    check_players(ctx, doc)?;
    (0..=ctx.g.num_players())
        .map(|j| {
            let mut labels = BTreeMap::new();
            for (c, k) in kernels(ctx, j, doc)? {
                let a = k
                    .iter()
                    .position(|w| w.is_one())
                    .ok_or_else(|| UgtError::Invalid(format!("player {j}: a pure profile needs point masses")))?;
                labels.insert(c, ctx.st.space(j).cps[c].actions[a].clone());
            }
            ctx.st.plan_from_labels(j, &labels)
        })
        .collect()
}

fn check_players(ctx: &Ctx, doc: &ProfileDoc) -> Result<()> {
    match doc.profile.keys().find(|&&j| j > ctx.g.num_players()) {
        Some(j) => Err(UgtError::Invalid(format!("player {j} out of range"))),
        None => Ok(()),
    }
}

fn key(ctx: &Ctx, j: Player, c: usize) -> String {
    ctx.g.loc_name(ctx.st.space(j).cps[c].governs[0])
}

/// Document for a behavior profile, keyed by the first governed copy.
pub fn behavior_doc(ctx: &Ctx, pi: &BehaviorProfile) -> ProfileDoc {
    let mut profile = BTreeMap::new();
    for (j, b) in pi.iter().enumerate() {
        let sp = ctx.st.space(j);
        let mut m = BTreeMap::new();
        for (c, k) in b.0.iter().enumerate() {
            let ch = match k.iter().position(|w| w.is_one()) {
                Some(a) => Choice::Action(sp.cps[c].actions[a].clone()),
                None => Choice::Mix(sp.cps[c].actions.iter().cloned().zip(k.iter().map(fmt_q)).collect()),
            };
            m.insert(key(ctx, j, c), ch);
        }
        if !m.is_empty() {
            profile.insert(j, m);
        }
    }
    ProfileDoc { format_version: FORMAT_VERSION, profile }
}

/// Document for a pure profile; unspecified choice points are left out.
pub fn pure_doc(ctx: &Ctx, s: &[Plan]) -> ProfileDoc {
    let mut profile = BTreeMap::new();
    for (j, p) in s.iter().enumerate() {
        let sp = ctx.st.space(j);
        let m: BTreeMap<String, Choice> =
            p.0.iter()
                .enumerate()
                .filter_map(|(c, a)| a.map(|a| (key(ctx, j, c), Choice::Action(sp.cps[c].actions[a].clone()))))
                .collect();
        if !m.is_empty() {
            profile.insert(j, m);
        }
    }
    ProfileDoc { format_version: FORMAT_VERSION, profile }
}

/// Canonical JSON text of a profile document.
pub fn profile_json(d: &ProfileDoc) -> String {
    let v = serde_json::to_value(d).expect("profiles serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efr::{efr_ctx, efr_profiles};
    use crate::fixtures::by_name;
    use crate::num::qr;

    #[test]
    fn pure_profiles_round_trip() {
        let g = by_name("ex1_initial").unwrap();
        let ctx = Ctx::new(&g);
        for s in efr_profiles(&efr_ctx(&ctx).unwrap()) {
            let d = parse_profile(&profile_json(&pure_doc(&ctx, &s))).unwrap();
            assert_eq!(to_pure(&ctx, &d).unwrap(), s);
        }
    }

    #[test]
    fn behavior_profiles_round_trip() {
        let g = by_name("matching_pennies").unwrap();
        let ctx = Ctx::new(&g);
        let pi: BehaviorProfile = (0..=g.num_players()).map(|j| Behavior::uniform(&ctx, j)).collect();
        let d = behavior_doc(&ctx, &pi);
        let text = profile_json(&d);
        assert!(text.contains("\"1/2\""));
        assert_eq!(to_behavior(&ctx, &parse_profile(&text).unwrap()).unwrap(), pi);
    }

    #[test]
    fn bad_documents_are_rejected() {
        let g = by_name("ex1_initial").unwrap();
        let ctx = Ctx::new(&g);
        let doc = |s: &str| parse_profile(&format!("{{\"format_version\":1,\"profile\":{s}}}")).unwrap();
        assert!(to_pure(&ctx, &doc(r#"{"1":{"r@T":"x"}}"#)).is_err());
        assert!(to_pure(&ctx, &doc(r#"{"1":{"zz@T":"l1"}}"#)).is_err());
        assert!(to_pure(&ctx, &doc(r#"{"2":{"a@Tbar":"m2"}}"#)).is_err());
        assert!(to_behavior(&ctx, &doc(r#"{"1":{"r@T":{"l1":"1/3","r1":"1/3"}}}"#)).is_err());
        let b = to_behavior(&ctx, &doc(r#"{"1":{"r@T":{"l1":"1/3","r1":"2/3"}}}"#)).unwrap();
        assert_eq!(b[1].0[0], vec![qr(1, 3), qr(2, 3)]);
        assert!(matches!(parse_profile("{\n\"format_version\": }"), Err(UgtError::Parse { line: 2, .. })));
    }
}
