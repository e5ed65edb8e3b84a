//! Syntax-directed type inference for the core calculus.
//!
//! Every inferred type is returned in normal form. `check` is inference
//! followed by conversion.

use std::fmt;

use crate::equality::{is_flat, normalize_type, strip_flat, type_equal};
use crate::signature::{ConstDecl, Signature, SymDecl};
use crate::syntax::{
    instantiate_neutral, polar_bound_type, subst_neutral, subst_polar, weaken_neutral,
    weaken_polar, Context, JElim, Syntax, Term, Type,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    UnboundVariable,
    PolarityViolation,
    NotPolarClosed,
    TypeMismatch,
    MalformedJTelescope,
    ArityMismatch,
    IllFormedContext,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Byte range plus the 1-based line and column of its start.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind}: {detail}")]
pub struct CheckError {
    pub kind: ErrorKind,
    pub span: Option<Span>,
    pub detail: String,
}

impl CheckError {
    pub fn new(kind: ErrorKind, detail: impl Into<String>) -> Self {
        CheckError {
            kind,
            span: None,
            detail: detail.into(),
        }
    }

    /// Attaches `span` unless a more precise one is already present.
    pub fn at(mut self, span: Span) -> Self {
        if self.span.is_none() {
            self.span = Some(span);
        }
        self
    }
}

pub type CheckResult<T> = Result<T, CheckError>;

fn err<T>(kind: ErrorKind, detail: impl Into<String>) -> CheckResult<T> {
    Err(CheckError::new(kind, detail))
}

fn show_ty(t: &Type) -> String {
    crate::frontend::print::type_to_string_anon(t)
}

fn show_tm(t: &Term) -> String {
    crate::frontend::print::term_to_string_anon(t)
}

pub fn check_context(sig: &Signature, ctx: &Context) -> CheckResult<()> {
    for (k, a) in ctx.neutral.iter().enumerate() {
        if !a.is_polar_closed() {
            return err(
                ErrorKind::IllFormedContext,
                format!("neutral entry {k} mentions a polar variable"),
            );
        }
        check_type(sig, &Context::new(ctx.neutral[..k].to_vec(), vec![]), a)?;
    }
    for (k, a) in ctx.polar.iter().enumerate() {
        check_type(sig, &Context::new(ctx.neutral.clone(), ctx.polar[..k].to_vec()), a)?;
    }
    Ok(())
}

pub fn check_type(sig: &Signature, ctx: &Context, t: &Type) -> CheckResult<()> {
    match t {
        Type::Base { name, .. } => {
            if sig.types.contains(name) {
                Ok(())
            } else {
                err(ErrorKind::UnboundVariable, format!("unknown base type `{name}`"))
            }
        }
        Type::Neg(a) | Type::Flat(a) => check_type(sig, ctx, a),
        Type::Hom { carrier, dom, cod, .. } => {
            check_type(sig, ctx, carrier)?;
            check(sig, ctx, dom, &carrier.as_ref().clone().neg())?;
            check(sig, ctx, cod, carrier)
        }
    }
}

pub fn check(sig: &Signature, ctx: &Context, t: &Term, ty: &Type) -> CheckResult<()> {
    let got = infer(sig, ctx, t)?;
    if type_equal(sig, &got, ty) {
        Ok(())
    } else {
        err(
            ErrorKind::TypeMismatch,
            format!(
                "`{}` has type `{}` but `{}` was expected",
                show_tm(t),
                show_ty(&got),
                show_ty(&normalize_type(sig, ty))
            ),
        )
    }
}

/// Checks `e : A♭`, reporting a non-flat type as a polarity violation.
fn check_flat(sig: &Signature, ctx: &Context, e: &Term, a: &Type, what: &str) -> CheckResult<()> {
    let got = infer(sig, ctx, e)?;
    if !is_flat(&got) {
        return err(
            ErrorKind::PolarityViolation,
            format!(
                "{what} needs a neutral term, but `{}` has non-flat type `{}`",
                show_tm(e),
                show_ty(&got)
            ),
        );
    }
    let want = a.clone().flat();
    if type_equal(sig, &got, &want) {
        Ok(())
    } else {
        err(
            ErrorKind::TypeMismatch,
            format!(
                "{what}: `{}` has type `{}` but `{}` was expected",
                show_tm(e),
                show_ty(&got),
                show_ty(&normalize_type(sig, &want))
            ),
        )
    }
}

fn require_polar_closed(t: &Term, what: &str) -> CheckResult<()> {
    if t.is_polar_closed() {
        Ok(())
    } else {
        err(
            ErrorKind::NotPolarClosed,
            format!("{what} `{}` depends on the polar zone", show_tm(t)),
        )
    }
}

/// The four-entry polar telescope of the eliminator over `Γ, y :: carrier`.
pub fn j_telescope(carrier: &Type) -> Vec<Type> {
    let a = weaken_neutral(carrier, 1, 0);
    let y = Term::VarN(0);
    vec![
        a.clone().neg(),
        weaken_polar(&a, 1, 0),
        Type::hom(a.clone(), Term::VarP(1), Term::coe_plus(a.clone(), y.clone())),
        Type::hom(a.clone(), Term::coe_minus(a.clone(), y), Term::VarP(1)),
    ]
}

/// The refl instance `[coe- y, coe+ y, refl y, refl y]` of the telescope.
pub fn j_refl_args(carrier: &Type) -> [Term; 4] {
    let a = weaken_neutral(carrier, 1, 0);
    let y = Term::VarN(0);
    [
        Term::coe_minus(a.clone(), y.clone()),
        Term::coe_plus(a.clone(), y.clone()),
        Term::refl(a.clone(), y.clone()),
        Term::refl(a, y),
    ]
}

/// Context `Γ, y :: A ∣ x, z, u, v` in which a motive over `Γ` is checked.
pub fn j_context(ctx: &Context, carrier: &Type) -> Context {
    let mut c = ctx.extend_neutral(carrier.clone());
    c.polar = j_telescope(carrier);
    c
}

fn infer_j(sig: &Signature, ctx: &Context, j: &JElim) -> CheckResult<Type> {
    let outer = ctx.neutral_only();
    if polar_bound_type(&j.carrier) > 0 {
        return err(
            ErrorKind::MalformedJTelescope,
            "eliminator carrier depends on the polar zone",
        );
    }
    check_type(sig, &outer, &j.carrier)?;
    let a = normalize_type(sig, &j.carrier);
    let tele = j_context(&outer, &a);
    check_type(sig, &tele, &j.motive)?;
    let base_ty = subst_polar(&j.motive, &j_refl_args(&a));
    check(sig, &outer.extend_neutral(a.clone()), &j.base, &base_ty)?;

    require_polar_closed(&j.anchor, "eliminator anchor")?;
    check_flat(sig, &outer, &j.anchor, &a, "eliminator anchor")?;
    let e = &j.anchor;
    let [x, z, u, v] = &j.args;
    check(sig, ctx, x, &a.clone().neg())?;
    check(sig, ctx, z, &a)?;
    check(sig, ctx, u, &Type::hom(a.clone(), x.clone(), Term::coe_plus(a.clone(), e.clone())))?;
    check(sig, ctx, v, &Type::hom(a.clone(), Term::coe_minus(a.clone(), e.clone()), z.clone()))?;
    let m = subst_neutral(&j.motive, 0, e);
    Ok(normalize_type(sig, &subst_polar(&m, &j.args)))
}

pub fn infer(sig: &Signature, ctx: &Context, t: &Term) -> CheckResult<Type> {
    let n = ctx.neutral.len();
    let p = ctx.polar.len();
    let ty = match t {
        Term::VarN(i) => {
            if *i >= n {
                return err(ErrorKind::UnboundVariable, format!("neutral index {i} out of range"));
            }
            weaken_neutral(&ctx.neutral[n - 1 - i], i + 1, 0).flat()
        }
        Term::VarP(i) => {
            if *i >= p {
                return err(ErrorKind::UnboundVariable, format!("polar index {i} out of range"));
            }
            weaken_polar(&ctx.polar[p - 1 - i], i + 1, 0)
        }
        Term::InjPlus(a, x) => {
            require_polar_closed(x, "inj+ body")?;
            let outer = ctx.neutral_only();
            check_type(sig, &outer, a)?;
            check(sig, &outer, x, a)?;
            a.as_ref().clone().flat()
        }
        Term::InjMinus(a, x) => {
            require_polar_closed(x, "inj- body")?;
            let outer = ctx.neutral_only();
            check_type(sig, &outer, a)?;
            check(sig, &outer, x, &a.as_ref().clone().neg())?;
            a.as_ref().clone().flat()
        }
        Term::CoePlus(a, e) => {
            check_type(sig, ctx, a)?;
            check_flat(sig, ctx, e, a, "coe+")?;
            a.as_ref().clone()
        }
        Term::CoeMinus(a, e) => {
            check_type(sig, ctx, a)?;
            check_flat(sig, ctx, e, a, "coe-")?;
            a.as_ref().clone().neg()
        }
        Term::Refl(a, e) => {
            require_polar_closed(e, "refl argument")?;
            let outer = ctx.neutral_only();
            if polar_bound_type(a) > 0 {
                return err(ErrorKind::NotPolarClosed, "refl carrier depends on the polar zone");
            }
            check_type(sig, &outer, a)?;
            check_flat(sig, &outer, e, a, "refl")?;
            let a = a.as_ref().clone();
            Type::hom(a.clone(), Term::coe_minus(a.clone(), (**e).clone()), Term::coe_plus(a, (**e).clone()))
        }
        Term::J(j) => return infer_j(sig, ctx, j),
        Term::Uhp(l, r) => {
            let h = infer(sig, ctx, l)?;
            if !matches!(h, Type::Hom { .. }) {
                return err(
                    ErrorKind::TypeMismatch,
                    format!("UHP expects hom-terms, `{}` has type `{}`", show_tm(l), show_ty(&h)),
                );
            }
            check(sig, ctx, r, &h)?;
            Type::hom(h.clone(), Term::coe_minus(h.clone(), (**l).clone()), Term::coe_plus(h, (**r).clone()))
        }
        Term::Fwd(i) | Term::Back(i) => {
            let h = infer(sig, ctx, i)?;
            let Type::Hom { carrier, dom, cod, .. } = &h else {
                return err(
                    ErrorKind::TypeMismatch,
                    format!("`{}` is not a hom-term: `{}`", show_tm(i), show_ty(&h)),
                );
            };
            if !is_flat(carrier) {
                return err(
                    ErrorKind::PolarityViolation,
                    format!("fwd/back need a hom in a core type, got `{}`", show_ty(&h)),
                );
            }
            let a = strip_flat(carrier);
            let na = a.clone().neg();
            if matches!(t, Term::Fwd(_)) {
                Type::hom(a.clone(), Term::coe_plus(na, (**dom).clone()), Term::coe_plus(a, (**cod).clone()))
            } else {
                Type::hom(a.clone(), Term::coe_minus(a, (**cod).clone()), Term::coe_minus(na, (**dom).clone()))
            }
        }
        Term::Sym(f, args) => {
            let Some(SymDecl { args: arg_tys, result }) = sig.syms.get(f) else {
                return err(ErrorKind::UnboundVariable, format!("unknown symbol `{f}`"));
            };
            if args.len() != arg_tys.len() {
                return err(
                    ErrorKind::ArityMismatch,
                    format!("`{f}` takes {} arguments, got {}", arg_tys.len(), args.len()),
                );
            }
            for (a, at) in args.iter().zip(arg_tys) {
                check(sig, ctx, a, &Type::base(at.clone()))?;
            }
            Type::base(result.clone())
        }
        Term::Const(c, ns, ps) => {
            let Some(decl) = sig.consts.get(c) else {
                return err(ErrorKind::UnboundVariable, format!("unknown constant `{c}`"));
            };
            return infer_const(sig, ctx, c, decl, ns, ps);
        }
    };
    Ok(normalize_type(sig, &ty))
}

fn infer_const(
    sig: &Signature,
    ctx: &Context,
    c: &str,
    decl: &ConstDecl,
    ns: &[Term],
    ps: &[Term],
) -> CheckResult<Type> {
    let ntel = decl.neutral();
    let ptel = decl.polar();
    if ns.len() != ntel.len() || ps.len() != ptel.len() {
        return err(
            ErrorKind::ArityMismatch,
            format!(
                "`{c}` takes {} neutral and {} polar arguments, got {} and {}",
                ntel.len(),
                ptel.len(),
                ns.len(),
                ps.len()
            ),
        );
    }
    let outer = ctx.neutral_only();
    for (k, (e, a)) in ns.iter().zip(ntel).enumerate() {
        require_polar_closed(e, &format!("neutral argument {} of `{c}`", k + 1))?;
        let a = instantiate_neutral(a, &ns[..k]);
        check_flat(sig, &outer, e, &a, &format!("neutral argument {} of `{c}`", k + 1))?;
    }
    for (k, (e, a)) in ps.iter().zip(ptel).enumerate() {
        let a = subst_polar(&instantiate_neutral(a, ns), &ps[..k]);
        check(sig, ctx, e, &a)?;
    }
    Ok(normalize_type(
        sig,
        &subst_polar(&instantiate_neutral(decl.ty(), ns), ps),
    ))
}

// ---------------------------------------------------------------------------
// Signatures and programs

fn fresh(sig: &Signature, name: &str) -> CheckResult<()> {
    if sig.is_declared(name) {
        err(ErrorKind::IllFormedContext, format!("`{name}` is already declared"))
    } else {
        Ok(())
    }
}

pub fn declare_type(sig: &mut Signature, name: &str) -> CheckResult<()> {
    fresh(sig, name)?;
    sig.types.insert(name.to_string());
    Ok(())
}

pub fn declare_sym(sig: &mut Signature, name: &str, args: Vec<String>, result: String) -> CheckResult<()> {
    fresh(sig, name)?;
    for a in args.iter().chain(std::iter::once(&result)) {
        if !sig.types.contains(a) {
            return err(ErrorKind::UnboundVariable, format!("unknown base type `{a}`"));
        }
    }
    sig.syms.insert(name.to_string(), SymDecl { args, result });
    Ok(())
}

pub fn declare_axiom(sig: &mut Signature, name: &str, neutral: Vec<Type>, ty: Type) -> CheckResult<()> {
    fresh(sig, name)?;
    let ctx = Context::new(neutral.clone(), vec![]);
    check_context(sig, &ctx)?;
    check_type(sig, &ctx, &ty)?;
    sig.consts.insert(name.to_string(), ConstDecl::Axiom { neutral, ty });
    Ok(())
}

pub fn declare_def(
    sig: &mut Signature,
    name: &str,
    neutral: Vec<Type>,
    polar: Vec<Type>,
    ty: Type,
    body: Term,
) -> CheckResult<()> {
    fresh(sig, name)?;
    let ctx = Context::new(neutral.clone(), polar.clone());
    check_context(sig, &ctx)?;
    check_type(sig, &ctx, &ty)?;
    check(sig, &ctx, &body, &ty)?;
    sig.consts.insert(
        name.to_string(),
        ConstDecl::Def {
            neutral,
            polar,
            ty,
            body,
        },
    );
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub name: String,
    pub ctx: Context,
    pub term: Term,
    pub ty: Type,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoalResult {
    pub name: String,
    pub outcome: CheckResult<()>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<GoalResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.outcome.is_ok())
    }
}

pub fn check_goal(sig: &Signature, g: &Goal) -> CheckResult<()> {
    check_context(sig, &g.ctx)?;
    check_type(sig, &g.ctx, &g.ty)?;
    check(sig, &g.ctx, &g.term, &g.ty)
}

pub fn check_program(sig: &Signature, goals: &[Goal]) -> Report {
    Report {
        results: goals
            .iter()
            .map(|g| GoalResult {
                name: g.name.clone(),
                outcome: check_goal(sig, g),
            })
            .collect(),
    }
}
