use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dirtt_core::checker::CheckError;
use dirtt_core::equality::{normalize_term, normalize_type, term_equal};
use dirtt_core::frontend::elab::elaborate_goal_type;
use dirtt_core::frontend::{self, names_for, parse_goal_type, parse_model, Item, ItemKind, Program};
use dirtt_core::model::{check_section, count_sections, Interp, ModelAssignment, SemError, DEFAULT_LIMIT};
use dirtt_core::syntax::{Context, Term, Type};

#[derive(Parser)]
#[command(name = "dirtt", version, about = "Checker and finite-model evaluator for directed type theory")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every declaration in the given files.
    Check { files: Vec<PathBuf> },
    /// Print the normal form of a type or term, e.g. `[a :: A] |- coe+ inj+ a`.
    Normalize {
        file: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Interpret a goal in a finite model and check it is a monotone section.
    Eval {
        file: PathBuf,
        /// A model file, or the name of a model block in FILE.
        #[arg(short, long)]
        model: String,
        #[arg(short, long)]
        goal: String,
    },
    /// Count the sections of a goal type in a finite model.
    Refute {
        file: PathBuf,
        #[arg(short, long)]
        model: String,
        /// A declaration name, or `[..] (..) |- T`.
        #[arg(short = 't', long = "type")]
        ty: String,
        #[arg(long, env = "DIRTT_LIMIT", default_value_t = DEFAULT_LIMIT)]
        limit: u64,
    },
}

/// Failure that ends a command with a given exit code.
struct Exit(u8, String);

type CmdResult = Result<u8, Exit>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Check { files } => cmd_check(files, cli.format),
        Cmd::Normalize { file, expr } => cmd_normalize(file, expr),
        Cmd::Eval { file, model, goal } => cmd_eval(file, model, goal, cli.format),
        Cmd::Refute { file, model, ty, limit } => cmd_refute(file, model, ty, *limit, cli.format),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit(2, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Program, Exit> {
    let src = read(path)?;
    frontend::load(&src).map_err(|e| Exit(2, format!("{}:{e}", path.display())))
}

fn kind_name(e: &CheckError) -> String {
    format!("{:?}", e.kind)
}

fn cmd_check(files: &[PathBuf], format: Format) -> CmdResult {
    let mut ok = true;
    for path in files {
        let p = load(path)?;
        if format == Format::Human {
            println!("{}", path.display());
        }
        for item in p.items.iter().filter(|i| i.is_goal()) {
            ok &= item.outcome.is_ok();
            match format {
                Format::Human => println!("  {}", human_line(&p, item)),
                Format::Records => {
                    let (kind, span) = match &item.outcome {
                        Ok(()) => (None, item.span),
                        Err(e) => (Some(kind_name(e)), e.span.unwrap_or(item.span)),
                    };
                    let rec = json!({
                        "file": path.display().to_string(),
                        "goal": item.name,
                        "status": if item.outcome.is_ok() { "pass" } else { "fail" },
                        "error-kind": kind,
                        "span": span.to_string(),
                    });
                    println!("{rec}");
                }
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn human_line(p: &Program, item: &Item) -> String {
    match &item.outcome {
        Err(e) => {
            let at = e.span.unwrap_or(item.span);
            format!("FAIL {} at {at}: {:?}: {}", item.name, e.kind, e.detail)
        }
        Ok(()) => {
            let shown = goal_of(item).map(|(ctx, ty)| {
                let env = names_for(p, ctx, &item.neutral_names, &item.polar_names);
                frontend::show_type(ty, &env)
            });
            format!("ok   {} : {}", item.name, shown.unwrap_or_default())
        }
    }
}

fn goal_of(item: &Item) -> Option<(&Context, &Type)> {
    match &item.kind {
        ItemKind::Axiom { ctx, ty }
        | ItemKind::Def { ctx, ty, .. }
        | ItemKind::Check { ctx, ty, .. }
        | ItemKind::Refute { ctx, ty, .. } => Some((ctx, ty)),
        _ => None,
    }
}

fn cmd_normalize(file: &Path, expr: &str) -> CmdResult {
    let p = load(file)?;
    let out = frontend::normalize_source(&p, expr).map_err(|e| Exit(2, e.to_string()))?;
    println!("{out}");
    Ok(0)
}

fn load_model(p: &Program, name: &str) -> Result<ModelAssignment, Exit> {
    let src = if Path::new(name).is_file() {
        let text = read(Path::new(name))?;
        parse_model(&text).map_err(|e| Exit(2, format!("{name}:{e}")))?
    } else if let Some(m) = p.models.get(name) {
        m.clone()
    } else {
        return Err(Exit(2, format!("no model file or model block named `{name}`")));
    };
    ModelAssignment::from_src(&p.sig, &src).map_err(|e| Exit(2, e.to_string()))
}

fn sem_exit(e: SemError) -> Exit {
    Exit(2, e.to_string())
}

fn cmd_eval(file: &Path, model: &str, goal: &str, format: Format) -> CmdResult {
    let p = load(file)?;
    let m = load_model(&p, model)?;
    let item = p.item(goal).ok_or_else(|| Exit(2, format!("no declaration named `{goal}`")))?;
    if let Err(e) = &item.outcome {
        return Err(Exit(2, format!("`{goal}` does not check: {e}")));
    }
    let (ctx, term, ty) = match &item.kind {
        ItemKind::Def { ctx, term, ty } | ItemKind::Check { ctx, term, ty } => (ctx, term.clone(), ty),
        ItemKind::Axiom { ctx, ty } => {
            let n = ctx.neutral.len();
            (ctx, Term::Const(goal.to_string(), (0..n).rev().map(Term::VarN).collect(), vec![]), ty)
        }
        _ => return Err(Exit(2, format!("`{goal}` is not a def, check or axiom"))),
    };
    let it = Interp::new(&p.sig, &m);
    let sc = it.sem_ctx(ctx, DEFAULT_LIMIT).map_err(sem_exit)?;
    let fam = it.family(&sc, ty).map_err(sem_exit)?;
    let sec = it.section(&sc, &term).map_err(sem_exit)?;
    let mut violations = Vec::new();
    if let Err(v) = fam.validate(&sc) {
        violations.push(format!("type family: {v:?}"));
    }
    if let Err(v) = check_section(&sc, &fam, &sec) {
        violations.push(format!("section: {v}"));
    }
    // The normal form must denote the same section.
    let nf = normalize_term(&p.sig, &term);
    if it.section(&sc, &nf).map_err(sem_exit)? != sec {
        violations.push("normal form has a different interpretation".into());
    }
    debug_assert!(term_equal(&p.sig, &term, &nf) && normalize_type(&p.sig, ty) == *ty);
    for (i, env) in sc.envs.iter().enumerate() {
        let vars: Vec<String> = item
            .neutral_names
            .iter()
            .chain(&item.polar_names)
            .zip(env.neutral.iter().chain(&env.polar))
            .zip(&sc.entry_fibers[i])
            .map(|((n, v), f)| format!("{n}={}", f.names[*v]))
            .collect();
        let value = fam.fibers[i].names.get(sec.values[i]).cloned().unwrap_or_else(|| "?".into());
        match format {
            Format::Human => println!("({}) : {value}", vars.join(", ")),
            Format::Records => println!("{}", json!({ "goal": goal, "index": vars, "value": value })),
        }
    }
    let status = if violations.is_empty() { "monotone ok" } else { "UNSOUND" };
    match format {
        Format::Human => {
            println!("{goal}: {status}");
            for v in &violations {
                println!("  {v}");
            }
        }
        Format::Records => println!(
            "{}",
            json!({ "goal": goal, "status": if violations.is_empty() { "pass" } else { "fail" }, "error-kind": violations.first(), "span": item.span.to_string() })
        ),
    }
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn cmd_refute(file: &Path, model: &str, ty: &str, limit: u64, format: Format) -> CmdResult {
    let p = load(file)?;
    let m = load_model(&p, model)?;
    let (name, ctx, goal_ty) = match p.item(ty).and_then(goal_of) {
        Some((ctx, t)) => (ty.to_string(), ctx.clone(), t.clone()),
        None => {
            let (tele, sty) = parse_goal_type(ty).map_err(|e| Exit(2, format!("goal type: {e}")))?;
            let (scope, t) = elaborate_goal_type(&p.sig, &tele, &sty).map_err(|e| Exit(2, format!("goal type: {e}")))?;
            ("goal".to_string(), scope.ctx(), t)
        }
    };
    let it = Interp::new(&p.sig, &m);
    let sc = it.sem_ctx(&ctx, limit).map_err(sem_exit)?;
    let fam = it.family(&sc, &goal_ty).map_err(sem_exit)?;
    let n = count_sections(&sc, &fam, limit).map_err(sem_exit)?;
    let refuted = n == 0;
    match format {
        Format::Human => {
            println!("{name}: {n} section{}", if n == 1 { "" } else { "s" });
            println!("{}", if refuted { "REFUTED" } else { "not refuted" });
        }
        Format::Records => println!(
            "{}",
            json!({ "goal": name, "status": if refuted { "refuted" } else { "not-refuted" }, "sections": n, "error-kind": null, "span": null })
        ),
    }
    Ok(if refuted { 0 } else { 3 })
}
