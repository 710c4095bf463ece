//! Named example games.
//!
//! Payoffs that come from a written description are listed under
//! `quoted` in each game's provenance; the rest are `constructed` to make
//! the described dominance relations hold.

use crate::game::{Game, GameBuilder};

/// Names of all fixtures, in a fixed order.
pub const NAMES: [&str; 12] = [
    "ex1_initial",
    "ex1_discovered",
    "ex2_initial",
    "ex2_rsc",
    "ex2_nonrat",
    "ex2_full",
    "bos_aware",
    "bos_repeated",
    "bos_repeated_discovered",
    "fig14",
    "matching_pennies",
    "single_decision",
];

/// Fixtures that start a discovery process.
pub const INITIAL: [&str; 6] = ["ex1_initial", "ex2_initial", "bos_aware", "bos_repeated", "fig14", "matching_pennies"];

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Game> {
    let g = match name {
        "ex1_initial" => ex1(false),
        "ex1_discovered" => ex1(true),
        "ex2_initial" => ex2("ex2_initial", false, false),
        "ex2_rsc" => ex2("ex2_rsc", true, false),
        "ex2_nonrat" => ex2("ex2_nonrat", false, true),
        "ex2_full" => ex2("ex2_full", true, true),
        "bos_aware" => bos_aware(),
        "bos_repeated" => bos_repeated(false),
        "bos_repeated_discovered" => bos_repeated(true),
        "fig14" => fig14(),
        "matching_pennies" => matching_pennies(),
        "single_decision" => single_decision(),
        _ => return None,
    };
    Some(g)
}

/// All fixtures with their names.
pub fn all() -> Vec<(&'static str, Game)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("known fixture"))).collect()
}

fn done(b: &GameBuilder) -> Game {
    b.build().expect("fixture builds")
}

/// Player 1 moves `l1` or `r1`; after `l1` player 2 picks among `l2`,
/// `m2`, `r2`. Player 1 starts unaware of `m2`.
fn ex1(aware: bool) -> Game {
    let name = if aware { "ex1_discovered" } else { "ex1_initial" };
    let mut b = GameBuilder::new(name, 2);
    b.decision("r", &[(1, &["l1", "r1"])])
        .edge("r", &["l1"], "a")
        .edge("r", &["r1"], "zr")
        .decision("a", &[(2, &["l2", "m2", "r2"])])
        .edge("a", &["l2"], "zl")
        .edge("a", &["m2"], "zm")
        .edge("a", &["r2"], "zrr")
        .terminal_i("zr", &[1, 1])
        .terminal_i("zl", &[2, 1])
        .terminal_i("zm", &[0, 10])
        .terminal_i("zrr", &[3, 2])
        .tree_all("Tbar")
        .tree_without("T", &["zm"])
        .default_singletons(true)
        .quoted("zm = (0, 10)")
        .constructed("zr = (1, 1)")
        .constructed("zl = (2, 1)")
        .constructed("zrr = (3, 2)");
    if !aware {
        for n in ["r", "zr", "zl", "zrr"] {
            b.info(1, "T", &[n], &[(n, "Tbar")]);
        }
    }
    done(&b)
}

/// `ex1` extended by a second move of player 1 after `l2`.
/// `p1` makes player 1 aware of `m2`, `p2` makes player 2 aware of `z1`.
fn ex2(name: &str, p1: bool, p2: bool) -> Game {
    let mut b = GameBuilder::new(name, 2);
    b.decision("r", &[(1, &["l1", "r1"])])
        .edge("r", &["l1"], "a")
        .edge("r", &["r1"], "zr")
        .decision("a", &[(2, &["l2", "m2", "r2"])])
        .edge("a", &["l2"], "b")
        .edge("a", &["m2"], "zm")
        .edge("a", &["r2"], "zrr")
        .decision("b", &[(1, &["y1", "z1"])])
        .edge("b", &["y1"], "zy")
        .edge("b", &["z1"], "zz")
        .terminal_i("zr", &[1, 1])
        .terminal_i("zm", &[0, 10])
        .terminal_i("zrr", &[3, 2])
        .terminal_i("zy", &[2, 1])
        .terminal_i("zz", &[5, 11])
        .tree_all("Tbar")
        .tree_without("Tpp", &["zm"])
        .tree_without("Tp", &["zz"])
        .tree_without("T", &["zz", "zm"])
        .default_singletons(true)
        .quoted("zm = (0, 10)")
        .constructed("zr = (1, 1)")
        .constructed("zrr = (3, 2)")
        .constructed("zy = (2, 1)")
        .constructed("zz = (5, 11)");
    if !p1 {
        for n in ["r", "b", "zr", "zy", "zz", "zrr"] {
            b.info(1, "Tpp", &[n], &[(n, "Tbar")]);
        }
        for n in ["r", "b", "zr", "zy", "zrr"] {
            b.info(1, "T", &[n], &[(n, "Tp")]);
        }
    }
    if !p2 {
        for n in ["a", "zr", "zy", "zm", "zrr"] {
            b.info(2, "Tp", &[n], &[(n, "Tbar")]);
        }
        for n in ["a", "zr", "zy", "zrr"] {
            b.info(2, "T", &[n], &[(n, "Tpp")]);
        }
    }
    done(&b)
}

fn stage(b: &mut GameBuilder, pre: &str, base: [i64; 2]) {
    let root = if pre.is_empty() { "r".to_string() } else { pre.to_string() };
    let p = |s: &str| if pre.is_empty() { s.to_string() } else { format!("{pre}.{s}") };
    let (out, inn, sim) = (p("out"), p("in"), p("s"));
    let (bb, ss) = (p("B"), p("S"));
    b.decision(&root, &[(1, &[&out, &inn])])
        .edge(&root, &[&out], &out)
        .edge(&root, &[&inn], &sim)
        .decision(&sim, &[(1, &[&bb, &ss]), (2, &[&bb, &ss])]);
    for (x, y, u) in [("B", "B", [3, 1]), ("B", "S", [0, 0]), ("S", "B", [0, 0]), ("S", "S", [1, 3])] {
        let z = p(&format!("{x}{y}"));
        b.edge(&sim, &[&p(x), &p(y)], &z);
        b.terminal_i(&z, &[base[0] + u[0], base[1] + u[1]]);
    }
    b.terminal_i(&out, &[base[0] + 2, base[1]]);
}

/// Battle of the sexes with an outside option, all players aware.
fn bos_aware() -> Game {
    let mut b = GameBuilder::new("bos_aware", 2);
    stage(&mut b, "", [0, 0]);
    b.tree_all("Tbar")
        .default_singletons(true)
        .quoted("out = (2, 0)")
        .constructed("BB = (3, 1), SS = (1, 3), BS = SB = (0, 0)");
    done(&b)
}

/// Twice repeated outside-option game with summed payoffs. Player 2 is
/// unaware of `out` until player 1 takes it in the first stage. Second
/// stage labels carry the first-stage history as a prefix.
fn bos_repeated(aware: bool) -> Game {
    let name = if aware { "bos_repeated_discovered" } else { "bos_repeated" };
    let mut b = GameBuilder::new(name, 2);
    b.decision("r", &[(1, &["out", "in"])])
        .edge("r", &["out"], "o")
        .edge("r", &["in"], "s")
        .decision("s", &[(1, &["B", "S"]), (2, &["B", "S"])]);
    let first = [("B", "B", [3, 1]), ("B", "S", [0, 0]), ("S", "B", [0, 0]), ("S", "S", [1, 3])];
    for (x, y, _) in first {
        b.edge("s", &[x, y], &format!("{x}{y}"));
    }
    stage(&mut b, "o", [2, 0]);
    for (x, y, u) in first {
        stage(&mut b, &format!("{x}{y}"), u);
    }
    let mut cut = vec!["o".to_string()];
    for h in ["BB", "BS", "SB", "SS"] {
        cut.push(format!("{h}.out"));
    }
    let cut: Vec<&str> = cut.iter().map(|s| s.as_str()).collect();
    b.tree_all("Tbar")
        .tree_without("T0", &cut)
        .default_singletons(true)
        .quoted("out = (2, 0) per stage")
        .constructed("BB = (3, 1), SS = (1, 3), BS = SB = (0, 0) per stage, summed over stages");
    if !aware {
        let mut on = vec!["s".to_string()];
        for h in ["BB", "BS", "SB", "SS"] {
            on.push(format!("{h}.s"));
            for z in ["BB", "BS", "SB", "SS"] {
                on.push(format!("{h}.{z}"));
            }
        }
        for n in &on {
            b.info(2, "T0", &[n], &[(n, "Tbar")]);
        }
    }
    done(&b)
}

/// Two players, four trees, incomparable awareness along the equilibrium
/// path.
fn fig14() -> Game {
    let mut b = GameBuilder::new("fig14", 2);
    b.decision("r", &[(1, &["l1", "c1", "r1"])])
        .edge("r", &["l1"], "z_l1")
        .edge("r", &["c1"], "a")
        .edge("r", &["r1"], "z_r1")
        .decision("a", &[(2, &["l2", "r2"])])
        .edge("a", &["l2"], "z_cl")
        .edge("a", &["r2"], "z_cr")
        .terminal_i("z_l1", &[1, 0])
        .terminal_i("z_r1", &[0, 0])
        .terminal_i("z_cl", &[0, 1])
        .terminal_i("z_cr", &[2, 2])
        .tree_all("Tbar")
        .tree_without("T1", &["z_cl"])
        .tree_without("T3", &["z_l1", "z_r1"])
        .tree("T2", &["r", "a", "z_cr"])
        .default_singletons(true)
        .constructed("all payoffs")
        .info(1, "T1", &["r"], &[("r", "Tbar")])
        .info(2, "T3", &["a"], &[("a", "Tbar")])
        .info(2, "T2", &["a"], &[("a", "T1")])
        .info(2, "T3", &["z_cr"], &[("z_cr", "Tbar")]);
    for z in ["z_l1", "z_r1", "z_cr"] {
        b.info(1, "T1", &[z], &[(z, "Tbar")]);
    }
    done(&b)
}

/// Simultaneous matching pennies in a single tree.
fn matching_pennies() -> Game {
    let mut b = GameBuilder::new("matching_pennies", 2);
    b.decision("r", &[(1, &["H", "T"]), (2, &["H", "T"])]);
    for (x, y, u) in [("H", "H", [1, -1]), ("H", "T", [-1, 1]), ("T", "H", [-1, 1]), ("T", "T", [1, -1])] {
        let z = format!("z{x}{y}");
        b.edge("r", &[x, y], &z).terminal_i(&z, &u);
    }
    b.tree_all("Tbar").default_singletons(true).constructed("all payoffs");
    done(&b)
}

/// One player, one move.
fn single_decision() -> Game {
    let mut b = GameBuilder::new("single_decision", 1);
    b.decision("r", &[(1, &["a", "b"])])
        .edge("r", &["a"], "za")
        .edge("r", &["b"], "zb")
        .terminal_i("za", &[1])
        .terminal_i("zb", &[0])
        .tree_all("Tbar")
        .default_singletons(true)
        .constructed("all payoffs");
    done(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::validate_game;

    #[test]
    fn every_fixture_validates() {
        for (n, g) in all() {
            let r = validate_game(&g);
            assert!(r.passes(), "{n}:\n{r}");
        }
    }

    #[test]
    fn tree_counts() {
        let t = |n: &str| by_name(n).unwrap().trees().len();
        assert_eq!(t("ex1_initial"), 2);
        assert_eq!(t("ex2_initial"), 4);
        assert_eq!(t("fig14"), 4);
        assert_eq!(t("bos_repeated"), 2);
        assert_eq!(by_name("bos_repeated").unwrap().nodes().len(), 37);
    }

    #[test]
    fn initial_and_discovered_differ() {
        assert_ne!(by_name("ex1_initial"), by_name("ex1_discovered"));
        assert_ne!(by_name("ex2_rsc"), by_name("ex2_nonrat"));
    }
}
