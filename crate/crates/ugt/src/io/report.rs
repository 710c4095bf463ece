//! JSON reports for command output. Field names are part of the CLI
//! contract.

use serde_json::{json, Map, Value};

use super::dot::{path_label, state_label};
use super::profile::{behavior_doc, pure_doc};
use super::Diagnostic;
use crate::discovery::{DiscoveryTrace, Supergame};
use crate::efr::EfrTrace;
use crate::equilibrium::{AwarenessReport, SceVerdict, WitnessBelief};
use crate::game::{Game, ValidationReport};
use crate::num::fmt_q;
use crate::strategy::{Behavior, BehaviorProfile, Ctx, Partial, Plan};

/// Axiom results with positioned failures.
pub fn validation(r: &ValidationReport, diags: &[Diagnostic]) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            let fails: Vec<Value> = c
                .failures
                .iter()
                .map(|w| json!({"node": w.node, "tree": w.tree, "player": w.player, "detail": w.detail}))
                .collect();
            json!({"axiom": c.axiom.name(), "passed": c.passed(), "failures": fails})
        })
        .collect();
    let diags: Vec<Value> = diags.iter().map(|d| json!({"line": d.line, "col": d.col, "message": d.message})).collect();
    json!({"valid": r.passes(), "checks": checks, "diagnostics": diags})
}

fn plans(ctx: &Ctx, lists: &[Vec<Plan>]) -> Value {
    let mut m = Map::new();
    for (i, l) in lists.iter().enumerate().skip(1) {
        m.insert(i.to_string(), Value::from(l.iter().map(|p| ctx.show_plan(i, p)).collect::<Vec<_>>()));
    }
    Value::Object(m)
}

/// Surviving plans, optionally with every round.
pub fn efr(ctx: &Ctx, t: &EfrTrace, rounds: bool) -> Value {
    let mut v = json!({
        "fixpoint_round": t.fixpoint_round,
        "result": plans(ctx, t.result()),
    });
    if rounds {
        let rs: Vec<Value> = t.rounds.iter().map(|r| plans(ctx, r)).collect();
        let cons: Vec<Value> = t
            .belief_constraints
            .iter()
            .map(|m| {
                Value::from(
                    m.iter()
                        .map(|(&(i, h), &j)| json!({"player": i, "set": ctx.g.set_name(h), "round": j}))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        v["rounds"] = Value::from(rs);
        v["belief_constraints"] = Value::from(cons);
    }
    v
}

fn partial(ctx: &Ctx, c: &Partial) -> Value {
    let mut m = Map::new();
    for (j, p) in c.iter().enumerate() {
        if let Some(p) = p {
            m.insert(j.to_string(), Value::from(ctx.show_plan(j, p)));
        }
    }
    Value::Object(m)
}

/// Verdict of an equilibrium check.
pub fn verdict(g: &Game, v: &SceVerdict) -> Value {
    let ctx = Ctx::new(g);
    let witnesses: Vec<Value> = v
        .witnesses
        .iter()
        .map(|w| {
            let belief: Vec<Value> = match &w.belief {
                WitnessBelief::Pure(b) => {
                    b.iter().map(|(c, q)| json!({"weight": fmt_q(q), "opponents": partial(&ctx, c)})).collect()
                }
                WitnessBelief::Behavior(b) => b
                    .iter()
                    .map(|(c, q)| {
                        let prof: BehaviorProfile = c
                            .iter()
                            .enumerate()
                            .map(|(j, x)| x.clone().unwrap_or_else(|| Behavior::uniform(&ctx, j)))
                            .collect();
                        let doc = behavior_doc(&ctx, &prof);
                        let mut opp = serde_json::to_value(doc.profile).expect("profiles serialize");
                        if let Some(m) = opp.as_object_mut() {
                            m.remove(&w.player.to_string());
                        }
                        json!({"weight": fmt_q(q), "opponents": opp})
                    })
                    .collect(),
            };
            json!({
                "player": w.player,
                "tree": g.trees()[w.tree].name,
                "sets": w.sets.iter().map(|&h| g.set_name(h)).collect::<Vec<_>>(),
                "belief": belief,
            })
        })
        .collect();
    let (cond, player, detail) = match &v.violation {
        Some(x) => (Value::from(x.condition.name()), Value::from(x.player), Value::from(x.detail.clone())),
        None => (Value::Null, Value::Null, Value::Null),
    };
    json!({
        "holds": v.holds,
        "violated_condition": cond,
        "player": player,
        "detail": detail,
        "witnesses": witnesses,
    })
}

/// A behavior profile in the profile-file layout.
pub fn behavior_profile(ctx: &Ctx, pi: &BehaviorProfile) -> Value {
    serde_json::to_value(behavior_doc(ctx, pi)).expect("profiles serialize")
}

/// A pure profile in the profile-file layout.
pub fn pure_profile(ctx: &Ctx, s: &[Plan]) -> Value {
    serde_json::to_value(pure_doc(ctx, s)).expect("profiles serialize")
}

/// Awareness along play.
pub fn awareness(g: &Game, r: &AwarenessReport) -> Value {
    let per = |m: &std::collections::BTreeMap<usize, bool>| -> Value {
        Value::Object(m.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect())
    };
    json!({
        "common_constant": r.common_constant,
        "common_tree": r.common_tree.map(|t| g.trees()[t].name.clone()),
        "per_player_constant": per(&r.per_player_constant),
        "mutual_belief_constant": per(&r.mutual_belief_constant),
    })
}

/// States and edges of a supergame.
pub fn supergame(sg: &Supergame, self_confirming: &[usize]) -> Value {
    let states: Vec<Value> = sg
        .states
        .iter()
        .enumerate()
        .map(|(k, g)| json!({"index": k, "label": state_label(g), "self_confirming": self_confirming.contains(&k)}))
        .collect();
    let edges: Vec<Value> = sg
        .edges
        .iter()
        .map(|e| json!({"from": e.from, "to": e.to, "path": path_label(&sg.states[e.from], &e.class.path)}))
        .collect();
    json!({"states": states, "edges": edges})
}

/// A sampled discovery run.
pub fn discovery(tr: &DiscoveryTrace) -> Value {
    let states: Vec<Value> = tr.states.iter().map(|g| Value::from(state_label(g))).collect();
    let steps: Vec<Value> = tr
        .steps
        .iter()
        .map(|s| {
            let g = &tr.states[s.state];
            let ctx = Ctx::new(g);
            json!({
                "state": s.state,
                "next": s.next,
                "path": path_label(g, &s.path),
                "profile": pure_profile(&ctx, &s.profile)["profile"].clone(),
            })
        })
        .collect();
    json!({"states": states, "absorbing": tr.absorbing, "steps": steps})
}
