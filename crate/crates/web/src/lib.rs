//! Browser bindings: check a program, normalize an expression, count
//! sections in a finite model. Every entry point takes and returns text.

use wasm_bindgen::prelude::*;

use dirtt_core::frontend::{self, elab::elaborate_goal_type, parse_goal_type, parse_model, ItemKind};
use dirtt_core::model::{count_goal_sections, ModelAssignment, DEFAULT_LIMIT};

/// One line per declaration, `ok` or `FAIL` with the error.
pub fn check_report(src: &str) -> String {
    let p = match frontend::load(src) {
        Ok(p) => p,
        Err(e) => return format!("parse error at {e}"),
    };
    let mut out = String::new();
    for item in p.items.iter().filter(|i| i.is_goal()) {
        match &item.outcome {
            Ok(()) => out.push_str(&format!("ok   {}\n", item.name)),
            Err(e) => {
                let at = e.span.unwrap_or(item.span);
                out.push_str(&format!("FAIL {} at {at}: {:?}: {}\n", item.name, e.kind, e.detail));
            }
        }
    }
    if out.is_empty() {
        out.push_str("no declarations to check\n");
    }
    out
}

pub fn normalize_in(src: &str, expr: &str) -> Result<String, String> {
    let p = frontend::load(src).map_err(|e| format!("program: {e}"))?;
    frontend::normalize_source(&p, expr).map_err(|e| e.to_string())
}

/// `goal` is a declaration name or `[..] (..) |- T`.
pub fn refute_in(src: &str, model: &str, goal: &str) -> Result<String, String> {
    let p = frontend::load(src).map_err(|e| format!("program: {e}"))?;
    let m = parse_model(model).map_err(|e| format!("model: {e}"))?;
    let m = ModelAssignment::from_src(&p.sig, &m).map_err(|e| e.to_string())?;
    let (ctx, ty) = match p.item(goal).map(|i| &i.kind) {
        Some(ItemKind::Refute { ctx, ty, .. } | ItemKind::Def { ctx, ty, .. } | ItemKind::Check { ctx, ty, .. }) => {
            (ctx.clone(), ty.clone())
        }
        _ => {
            let (tele, t) = parse_goal_type(goal).map_err(|e| format!("goal: {e}"))?;
            let (scope, t) = elaborate_goal_type(&p.sig, &tele, &t).map_err(|e| format!("goal: {e}"))?;
            (scope.ctx(), t)
        }
    };
    let n = count_goal_sections(&p.sig, &m, &ctx, &ty, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
    let verdict = if n == 0 { "REFUTED" } else { "not refuted" };
    Ok(format!("{n} sections: {verdict}"))
}

#[wasm_bindgen]
pub fn check(src: &str) -> String {
    check_report(src)
}

#[wasm_bindgen]
pub fn normalize(src: &str, expr: &str) -> String {
    normalize_in(src, expr).unwrap_or_else(|e| format!("error: {e}"))
}

#[wasm_bindgen]
pub fn refute(src: &str, model: &str, goal: &str) -> String {
    refute_in(src, model, goal).unwrap_or_else(|e| format!("error: {e}"))
}
