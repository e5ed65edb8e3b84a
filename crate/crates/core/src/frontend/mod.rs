//! Surface language: lexing, parsing, elaboration and printing.

pub mod ast;
pub mod elab;
pub mod lexer;
pub mod parser;
pub mod print;

use std::collections::HashSet;

pub use elab::{elaborate, Item, ItemKind, Program, Scope};
pub use parser::{parse_goal_type, parse_model, parse_program, parse_scoped, parse_term, parse_type, ParseError};

use crate::checker::{self, CheckError};
use crate::equality::{normalize_term, normalize_type};
use crate::syntax::{Context, Type};
use ast::{AssignSrc, ModelSrc};
use print::{Names, Printer};

pub fn load(src: &str) -> Result<Program, ParseError> {
    Ok(elaborate(&parse_program(src)?))
}

fn reserved(p: &Program) -> HashSet<String> {
    p.sig
        .types
        .iter()
        .chain(p.sig.syms.keys())
        .chain(p.sig.consts.keys())
        .cloned()
        .collect()
}

/// Prints `[a :: A, ..] (x : X, ..)` choosing distinct binder names, and
/// returns the environment for the body.
fn print_tele(pr: &Printer, ctx: &Context, hints: (&[String], &[String]), reserved: &HashSet<String>) -> (String, Names) {
    let mut env = Names {
        reserved: reserved.clone(),
        ..Names::default()
    };
    let mut parts = String::new();
    let hint = |v: &[String], k: usize, d: &str| v.get(k).cloned().unwrap_or_else(|| d.to_string());
    if !ctx.neutral.is_empty() {
        let mut bs = Vec::new();
        for (k, t) in ctx.neutral.iter().enumerate() {
            let ty = pr.ty(t, &env);
            let n = env.fresh(&hint(hints.0, k, "a"), &[]);
            bs.push(format!("{n} :: {ty}"));
            env.neutral.push(n);
        }
        parts.push_str(&format!(" [{}]", bs.join(", ")));
    }
    if !ctx.polar.is_empty() {
        let mut bs = Vec::new();
        for (k, t) in ctx.polar.iter().enumerate() {
            let ty = pr.ty(t, &env);
            let n = env.fresh(&hint(hints.1, k, "x"), &[]);
            bs.push(format!("{n} : {ty}"));
            env.polar.push(n);
        }
        parts.push_str(&format!(" ({})", bs.join(", ")));
    }
    (parts, env)
}

pub fn print_model(name: &str, m: &ModelSrc) -> String {
    let mut s = format!("model {name} {{\n");
    s.push_str(&print_model_items(m, "  "));
    s.push_str("}\n");
    s
}

pub fn print_model_items(m: &ModelSrc, indent: &str) -> String {
    let mut s = String::new();
    for p in &m.preorders {
        let rows: Vec<String> = p
            .le
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|b| if *b { "1" } else { "0" }).collect::<Vec<_>>().join(",")))
            .collect();
        s.push_str(&format!(
            "{indent}preorder {} {{ elems: [{}]; le: [{}]; }}\n",
            p.name,
            p.elems.join(", "),
            rows.join(", ")
        ));
    }
    for a in &m.assigns {
        match a {
            AssignSrc::Type { name, preorder, .. } => s.push_str(&format!("{indent}assign {name} = {preorder};\n")),
            AssignSrc::Table { name, rows, .. } => {
                let body: Vec<String> = rows.iter().map(|(a, r)| format!("({}) -> {r};", a.join(", "))).collect();
                s.push_str(&format!("{indent}assign {name} = table {{ {} }};\n", body.join(" ")));
            }
        }
    }
    s
}

/// Source text for one elaborated item; empty for failed items.
pub fn print_item(p: &Program, item: &Item) -> String {
    let pr = Printer { annotate: true };
    let res = reserved(p);
    let hints = (item.neutral_names.as_slice(), item.polar_names.as_slice());
    match &item.kind {
        ItemKind::Type => format!("type {};\n", item.name),
        ItemKind::Func => {
            let s = &p.sig.syms[&item.name];
            if s.args.is_empty() {
                format!("func {} : {};\n", item.name, s.result)
            } else {
                format!("func {} ({}) : {};\n", item.name, s.args.join(", "), s.result)
            }
        }
        ItemKind::Axiom { ctx, ty } => {
            let (t, env) = print_tele(&pr, ctx, hints, &res);
            format!("axiom {}{t} : {};\n", item.name, pr.ty(ty, &env))
        }
        ItemKind::Def { ctx, term, ty } | ItemKind::Check { ctx, term, ty } => {
            let kw = if matches!(item.kind, ItemKind::Def { .. }) { "def" } else { "check" };
            let (t, env) = print_tele(&pr, ctx, hints, &res);
            format!("{kw} {}{t} : {} := {};\n", item.name, pr.ty(ty, &env), pr.tm(term, &env))
        }
        ItemKind::Refute { ctx, ty, model } => {
            let (t, env) = print_tele(&pr, ctx, hints, &res);
            let m = model.as_ref().map(|m| format!(" in {m}")).unwrap_or_default();
            format!("refute {}{t} : {}{m};\n", item.name, pr.ty(ty, &env))
        }
        ItemKind::Model => print_model(&item.name, &p.models[&item.name]),
        ItemKind::Failed => String::new(),
    }
}

pub fn print_program(p: &Program) -> String {
    p.items.iter().map(|i| print_item(p, i)).collect()
}

/// Printing environment for a goal context with the given name hints.
pub fn names_for(p: &Program, ctx: &Context, neutral: &[String], polar: &[String]) -> Names {
    print_tele(&Printer { annotate: false }, ctx, (neutral, polar), &reserved(p)).1
}

/// Human-readable type in an environment.
pub fn show_type(t: &Type, env: &Names) -> String {
    print::type_to_string(t, env)
}

#[derive(Debug, thiserror::Error)]
pub enum ExprError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Check(#[from] CheckError),
}

/// Normal form of a type or term, printed in the names of the optional
/// context prefix.
pub fn normalize_source(p: &Program, src: &str) -> Result<String, ExprError> {
    let (tele, e) = parse_scoped(src)?;
    let el = elab::Elaborator::new(&p.sig);
    let scope = el.tele(&tele)?;
    let mut env = Names::new(scope.neutral_names(), scope.polar_names());
    env.reserved = reserved(p);
    Ok(match e {
        Ok(t) => {
            let ty = el.ty(&scope, &t)?;
            print::type_to_string(&normalize_type(&p.sig, &ty), &env)
        }
        Err(t) => {
            let (tm, _) = el.infer(&scope, &t)?;
            checker::infer(&p.sig, &scope.ctx(), &tm)?;
            print::term_to_string(&normalize_term(&p.sig, &tm), &env)
        }
    })
}
