use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ugt::discovery::{build_supergame, run_discovery, self_confirming_games, uniform_strategy, Policy};
use ugt::efr::{efr_ctx, efr_profiles};
use ugt::equilibrium::{
    check_sce_behavior, check_sce_efr, check_sce_pure, construct_sce_efr, lift_profile, SceVerdict,
};
use ugt::io::dot::{game_dot, state_label, supergame_dot, trace_dot};
use ugt::io::profile::{parse_profile, to_behavior, to_pure};
use ugt::io::{load_game, parse_document, read, report, to_canonical_json};
use ugt::strategy::Ctx;
use ugt::{Game, Result, UgtError};

/// Games with unawareness: validation, rationalizability, discovery and
/// self-confirming equilibrium.
#[derive(Parser)]
#[command(name = "ugt", version)]
struct Cli {
    /// Machine-readable output on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every axiom and report failures with positions.
    Validate { file: PathBuf },
    /// Extensive-form rationalizable plans.
    Efr {
        file: PathBuf,
        /// Show every round and the belief constraints used.
        #[arg(long)]
        trace: bool,
    },
    /// Sample a discovery process until it is absorbed.
    Discover {
        file: PathBuf,
        #[arg(long, value_enum)]
        policy: PolicyArg,
        /// Print the run as a graph in this format instead of a summary.
        #[arg(long, value_enum)]
        steps_out: Option<StepsFormat>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build the discovery supergame and write it as DOT.
    Supergame {
        file: PathBuf,
        #[arg(long, value_enum)]
        policy: PolicyArg,
        #[arg(long)]
        dot: PathBuf,
    },
    /// Check a profile for self-confirming equilibrium.
    Sce {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Profile file; defaults to the first rationalizable pure profile.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Construct a self-confirming equilibrium in rationalizable strategies.
    ConstructSce { file: PathBuf },
    /// Write the game in another format.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Efr,
    Rational,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum StepsFormat {
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pure,
    Behavior,
    Efr,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    CanonicalJson,
}

impl PolicyArg {
    fn policy(self) -> Policy {
        match self {
            PolicyArg::Efr => Policy::Efr,
            PolicyArg::Rational => Policy::Rational,
            PolicyArg::All => Policy::All,
        }
    }
}

/// Outcome of a command: the text for stdout and whether the verdict was
/// positive.
struct Out {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("values serialize") + "\n"
            } else {
                out.text
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Out> {
    match &cli.cmd {
        Cmd::Validate { file } => validate(file),
        Cmd::Efr { file, trace } => efr(&load_game(file)?, *trace),
        Cmd::Discover { file, policy, steps_out, seed } => {
            let g = load_game(file)?;
            let tr = run_discovery(&g, &policy.policy(), &uniform_strategy, *seed)?;
            let text = match steps_out {
                Some(StepsFormat::Dot) => trace_dot(&tr),
                None => {
                    let mut s = String::new();
                    for (k, st) in tr.states.iter().enumerate() {
                        let mark = if k == tr.absorbing { " (absorbing)" } else { "" };
                        s.push_str(&format!("state {k}: {}{mark}\n", state_label(st)));
                    }
                    s.push_str(&format!("{} stages\n", tr.steps.len()));
                    s
                }
            };
            Ok(Out { text, json: report::discovery(&tr), ok: true })
        }
        Cmd::Supergame { file, policy, dot } => {
            let g = load_game(file)?;
            let sg = build_supergame(&g, &policy.policy())?;
            write(dot, &supergame_dot(&sg))?;
            let sc = self_confirming_games(&sg);
            let mut text = String::new();
            for (k, st) in sg.states.iter().enumerate() {
                let succ: Vec<String> = sg.successors(k).iter().map(|s| s.to_string()).collect();
                let mark = if sc.contains(&k) { " (self-confirming)" } else { "" };
                text.push_str(&format!("state {k}: {}{mark} -> {}\n", state_label(st), succ.join(" ")));
            }
            Ok(Out { text, json: report::supergame(&sg, &sc), ok: true })
        }
        Cmd::Sce { file, mode, profile } => sce(&load_game(file)?, *mode, profile.as_deref()),
        Cmd::ConstructSce { file } => {
            let g = load_game(file)?;
            let (pi, v) = construct_sce_efr(&g)?;
            let ctx = Ctx::new(&g);
            let prof = report::behavior_profile(&ctx, &pi);
            let text = format!(
                "constructed profile:\n{}\n{}",
                serde_json::to_string_pretty(&prof).expect("values serialize"),
                verdict_text(&v)
            );
            Ok(Out { text, json: json!({"profile": prof, "verdict": report::verdict(&g, &v)}), ok: v.holds })
        }
        Cmd::Export { file, format } => {
            let g = load_game(file)?;
            let text = match format {
                Format::Dot => game_dot(&g),
                Format::CanonicalJson => to_canonical_json(&g),
            };
            let json = match format {
                Format::Dot => json!({"dot": text}),
                Format::CanonicalJson => serde_json::from_str(&text).expect("own output parses"),
            };
            Ok(Out { text, json, ok: true })
        }
    }
}

fn write(path: &Path, s: &str) -> Result<()> {
    std::fs::write(path, s).map_err(|e| UgtError::Invalid(format!("{}: {e}", path.display())))
}

fn validate(file: &Path) -> Result<Out> {
    let p = parse_document(&read(file)?)?;
    let diags = p.diagnostics();
    for d in &diags {
        eprintln!("{}:{d}", file.display());
    }
    let text = p.report.to_string();
    Ok(Out { text, json: report::validation(&p.report, &diags), ok: p.report.passes() })
}

fn efr(g: &Game, trace: bool) -> Result<Out> {
    let ctx = Ctx::new(g);
    let t = efr_ctx(&ctx)?;
    let mut text = String::new();
    if trace {
        for (k, r) in t.rounds.iter().enumerate() {
            text.push_str(&format!("round {k}\n"));
            for i in g.players() {
                for p in &r[i] {
                    text.push_str(&format!("  {i}: {}\n", ctx.show_plan(i, p)));
                }
            }
        }
        text.push_str(&format!("fixpoint at round {}\n", t.fixpoint_round));
    } else {
        for i in g.players() {
            for p in &t.result()[i] {
                text.push_str(&format!("{i}: {}\n", ctx.show_plan(i, p)));
            }
        }
    }
    Ok(Out { text, json: report::efr(&ctx, &t, trace), ok: true })
}

fn sce(g: &Game, mode: Mode, profile: Option<&Path>) -> Result<Out> {
    let ctx = Ctx::new(g);
    let doc = profile.map(|p| read(p).and_then(|s| parse_profile(&s))).transpose()?;
    let default = || -> Result<_> {
        efr_profiles(&efr_ctx(&ctx)?)
            .into_iter()
            .next()
            .ok_or_else(|| UgtError::Internal("no rationalizable profile".into()))
    };
    let v = match mode {
        Mode::Pure => {
            let s = match &doc {
                Some(d) => to_pure(&ctx, d)?,
                None => default()?,
            };
            check_sce_pure(g, &s)?
        }
        Mode::Behavior | Mode::Efr => {
            let pi = match &doc {
                Some(d) => to_behavior(&ctx, d)?,
                None => lift_profile(&ctx, &default()?),
            };
            if matches!(mode, Mode::Efr) {
                check_sce_efr(g, &pi)?
            } else {
                check_sce_behavior(g, &pi)?
            }
        }
    };
    Ok(Out { text: verdict_text(&v), json: report::verdict(g, &v), ok: v.holds })
}

fn verdict_text(v: &SceVerdict) -> String {
    match &v.violation {
        None => "holds\n".to_string(),
        Some(x) => format!("fails: {} for player {}: {}\n", x.condition, x.player, x.detail),
    }
}
