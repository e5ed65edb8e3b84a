//! Corpus-wide checks shared by the integration tests and the acceptance
//! report. Each returns a description of the first problem found.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use dirtt_core::checker::{self, ErrorKind};
use dirtt_core::equality::normalize_term;
use dirtt_core::frontend::{self, parse_model, ItemKind, Program};
use dirtt_core::model::{check_section, Interp, ModelAssignment, DEFAULT_LIMIT};
use dirtt_core::syntax::{Context, Term, Type};

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Corpus files and the error kind each is expected to report, if any.
pub fn files() -> Vec<(PathBuf, Option<ErrorKind>)> {
    let r = root();
    vec![
        (r.join("expr.dtt"), None),
        (r.join("compose.dtt"), None),
        (r.join("core_symmetry.dtt"), None),
        (r.join("id_flat.dtt"), None),
        (r.join("negative/symmetry.dtt"), Some(ErrorKind::PolarityViolation)),
        (r.join("negative/polar_refl.dtt"), Some(ErrorKind::NotPolarClosed)),
    ]
}

pub fn model_files() -> Vec<PathBuf> {
    ["chain2", "discrete2", "codiscrete2", "diamond4"]
        .iter()
        .map(|m| root().join(format!("models/{m}.model")))
        .collect()
}

pub fn load(path: &PathBuf) -> Result<Program, String> {
    let src = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    frontend::load(&src).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn model(p: &Program, path: &PathBuf) -> Result<ModelAssignment, String> {
    let src = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let m = parse_model(&src).map_err(|e| e.to_string())?;
    ModelAssignment::from_src(&p.sig, &m).map_err(|e| format!("{}: {e}", path.display()))
}

/// Every file checks or fails as expected, and every failure has a span.
pub fn expected_outcomes() -> Result<(), String> {
    for (path, want) in files() {
        let p = load(&path)?;
        let errs: Vec<_> = p.items.iter().filter_map(|i| i.outcome.as_ref().err()).collect();
        if let Some(e) = errs.iter().find(|e| e.span.is_none()) {
            return Err(format!("{}: error without a span: {e}", path.display()));
        }
        match (&want, errs.first()) {
            (None, None) => {}
            (Some(k), Some(e)) if e.kind == *k => {}
            (w, e) => return Err(format!("{}: expected {w:?}, got {e:?}", path.display())),
        }
    }
    Ok(())
}

fn cores(p: &Program) -> Vec<(String, ItemKind)> {
    p.items.iter().map(|i| (i.name.clone(), i.kind.clone())).collect()
}

/// Printing an elaborated file and elaborating the text again gives the same
/// core declarations, and printing is then stable.
pub fn roundtrip(path: &PathBuf) -> Result<(), String> {
    let p = load(path)?;
    let printed = frontend::print_program(&p);
    let q = frontend::load(&printed).map_err(|e| format!("{}: reparse: {e}\n{printed}", path.display()))?;
    let ok: Vec<_> = cores(&p).into_iter().filter(|(_, k)| *k != ItemKind::Failed).collect();
    if ok != cores(&q) {
        return Err(format!("{}: elaborated cores differ after printing\n{printed}", path.display()));
    }
    if frontend::print_program(&q) != printed {
        return Err(format!("{}: printing is not stable", path.display()));
    }
    Ok(())
}

/// Checked judgments of a program with a closed term standing for each.
pub fn judgments(p: &Program) -> Vec<(String, Context, Term, Type)> {
    let mut out = Vec::new();
    for i in &p.items {
        match &i.kind {
            ItemKind::Def { ctx, term, ty } | ItemKind::Check { ctx, term, ty } => {
                out.push((i.name.clone(), ctx.clone(), term.clone(), ty.clone()))
            }
            ItemKind::Axiom { ctx, ty } => {
                let n = ctx.neutral.len();
                let t = Term::Const(i.name.clone(), (0..n).rev().map(Term::VarN).collect(), vec![]);
                out.push((i.name.clone(), ctx.clone(), t, ty.clone()));
            }
            _ => {}
        }
    }
    out
}

/// Every judgment in every passing file, in every model: the type is a
/// functorial family, the term a monotone section, and the normal form of
/// the term has the same interpretation. Returns the number of runs.
pub fn soundness() -> Result<usize, String> {
    let mut runs = 0;
    for (path, want) in files() {
        if want.is_some() {
            continue;
        }
        let p = load(&path)?;
        for mp in model_files() {
            let m = model(&p, &mp)?;
            let it = Interp::new(&p.sig, &m);
            for (name, ctx, term, ty) in judgments(&p) {
                let at = || format!("{} / {} / {name}", path.display(), mp.display());
                let sc = it.sem_ctx(&ctx, DEFAULT_LIMIT).map_err(|e| format!("{}: {e}", at()))?;
                let fam = it.family(&sc, &ty).map_err(|e| format!("{}: {e}", at()))?;
                fam.validate(&sc).map_err(|v| format!("{}: family {v:?}", at()))?;
                let sec = it.section(&sc, &term).map_err(|e| format!("{}: {e}", at()))?;
                check_section(&sc, &fam, &sec).map_err(|v| format!("{}: {v}", at()))?;
                let nf = it
                    .section(&sc, &normalize_term(&p.sig, &term))
                    .map_err(|e| format!("{}: {e}", at()))?;
                if nf != sec {
                    return Err(format!("{}: normal form is interpreted differently", at()));
                }
                runs += 1;
            }
        }
    }
    Ok(runs)
}

/// `UHP(p, q)` checks for every pair of corpus judgments at the same hom-type.
pub fn uhp_pairs() -> Result<usize, String> {
    let mut n = 0;
    for (path, want) in files() {
        if want.is_some() {
            continue;
        }
        let p = load(&path)?;
        let js = judgments(&p);
        for (a, ctx, s, ty) in &js {
            if !matches!(ty, Type::Hom { .. }) {
                continue;
            }
            for (b, ctx2, t, ty2) in &js {
                if ctx != ctx2 || ty != ty2 {
                    continue;
                }
                checker::infer(&p.sig, ctx, &Term::uhp(s.clone(), t.clone()))
                    .map_err(|e| format!("{}: UHP({a}, {b}): {e}", path.display()))?;
                n += 1;
            }
        }
    }
    Ok(n)
}
