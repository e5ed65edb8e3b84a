//! Name resolution, carrier inference and kernel checking of surface
//! declarations. Every core node produced here has been checked by the
//! kernel, and failures carry the span of the smallest enclosing surface
//! node.

use indexmap::IndexMap;

use super::ast::*;
use crate::checker::{
    self, declare_axiom, declare_def, declare_sym, declare_type, j_refl_args, j_telescope, CheckError,
    CheckResult, ErrorKind, Span,
};
use crate::derived::{
    anchored_j, compose_at, core_symmetry_parts, make_id_flat, minus_telescope, one_sided_term, plus_telescope,
    transport_term, widen_motive, Side,
};
use crate::equality::{is_flat, normalize_type, strip_flat, type_equal};
use crate::signature::{ConstDecl, Signature};
use crate::syntax::{instantiate_neutral, subst_polar, weaken_polar, Context, JElim, Syntax, Term, Type};

/// Local variables, leftmost first. Types are normalized and follow the
/// kernel's scoping.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    pub neutral: Vec<(String, Type)>,
    pub polar: Vec<(String, Type)>,
}

impl Scope {
    pub fn ctx(&self) -> Context {
        Context::new(
            self.neutral.iter().map(|x| x.1.clone()).collect(),
            self.polar.iter().map(|x| x.1.clone()).collect(),
        )
    }

    pub fn neutral_only(&self) -> Scope {
        Scope {
            neutral: self.neutral.clone(),
            polar: Vec::new(),
        }
    }

    pub fn neutral_names(&self) -> Vec<String> {
        self.neutral.iter().map(|x| x.0.clone()).collect()
    }

    pub fn polar_names(&self) -> Vec<String> {
        self.polar.iter().map(|x| x.0.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemKind {
    Type,
    Func,
    Axiom { ctx: Context, ty: Type },
    Def { ctx: Context, term: Term, ty: Type },
    Check { ctx: Context, term: Term, ty: Type },
    Refute { ctx: Context, ty: Type, model: Option<String> },
    Model,
    /// Elaboration failed; see the outcome.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub name: String,
    pub span: Span,
    pub kind: ItemKind,
    pub neutral_names: Vec<String>,
    pub polar_names: Vec<String>,
    pub outcome: Result<(), CheckError>,
}

impl Item {
    pub fn is_goal(&self) -> bool {
        matches!(
            self.kind,
            ItemKind::Axiom { .. } | ItemKind::Def { .. } | ItemKind::Check { .. } | ItemKind::Refute { .. }
        ) || self.outcome.is_err()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Program {
    pub sig: Signature,
    pub items: Vec<Item>,
    pub models: IndexMap<String, ModelSrc>,
}

impl Program {
    pub fn item(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.outcome.is_ok())
    }
}

pub struct Elaborator<'s> {
    pub sig: &'s Signature,
}

fn fail<T>(kind: ErrorKind, span: Span, detail: impl Into<String>) -> CheckResult<T> {
    Err(CheckError::new(kind, detail).at(span))
}

fn show(t: &Type) -> String {
    super::print::type_to_string_anon(t)
}

impl<'s> Elaborator<'s> {
    pub fn new(sig: &'s Signature) -> Self {
        Elaborator { sig }
    }

    fn norm(&self, t: &Type) -> Type {
        normalize_type(self.sig, t)
    }

    fn infer_core(&self, scope: &Scope, t: &Term, span: Span) -> CheckResult<Type> {
        checker::infer(self.sig, &scope.ctx(), t).map_err(|e| e.at(span))
    }

    // ------------------------------------------------------------------
    // Types

    pub fn ty(&self, scope: &Scope, t: &STy) -> CheckResult<Type> {
        let r = match &t.kind {
            STyKind::Name(n) => {
                if !self.sig.types.contains(n) {
                    return fail(ErrorKind::UnboundVariable, t.span, format!("unknown base type `{n}`"));
                }
                Type::base(n.clone())
            }
            STyKind::Neg(a) => self.ty(scope, a)?.neg(),
            STyKind::Flat(a) => self.ty(scope, a)?.flat(),
            STyKind::Hom(c, s, d) => {
                let c = self.ty(scope, c)?;
                let s = self.check(scope, s, &self.norm(&c.clone().neg()))?;
                let d = self.check(scope, d, &c)?;
                Type::hom(c, s, d)
            }
            STyKind::Id(c, s, d) => {
                let c = self.ty(scope, c)?;
                let s2 = self.check(scope, s, &c)?;
                let d2 = self.check(scope, d, &c)?;
                if is_flat(&c) {
                    Type::hom(c.clone(), Term::coe_minus(c.clone(), s2), Term::coe_plus(c, d2))
                } else {
                    for (x, sx) in [(&s2, s), (&d2, d)] {
                        if !x.is_polar_closed() {
                            return fail(
                                ErrorKind::NotPolarClosed,
                                sx.span,
                                format!(
                                    "`Id` at the non-flat type `{}` needs terms free of polar variables",
                                    show(&c)
                                ),
                            );
                        }
                    }
                    make_id_flat(self.sig, &scope.ctx(), &c, &s2, &d2).map_err(|e| e.at(t.span))?
                }
            }
            STyKind::IdFlat(c, s, d) => {
                let c = self.ty(scope, c)?;
                let s2 = self.check(scope, s, &c)?;
                let d2 = self.check(scope, d, &c)?;
                for (x, sx) in [(&s2, s), (&d2, d)] {
                    if !x.is_polar_closed() {
                        return fail(ErrorKind::NotPolarClosed, sx.span, "`IdFlat` needs terms free of polar variables");
                    }
                }
                make_id_flat(self.sig, &scope.ctx(), &c, &s2, &d2).map_err(|e| e.at(t.span))?
            }
        };
        checker::check_type(self.sig, &scope.ctx(), &r).map_err(|e| e.at(t.span))?;
        Ok(self.norm(&r))
    }

    // ------------------------------------------------------------------
    // Terms, checking mode

    pub fn check(&self, scope: &Scope, t: &STm, want: &Type) -> CheckResult<Term> {
        let want = self.norm(want);
        if let STmKind::Coerce(c, None, body) = &t.kind {
            let core = match c {
                Coercion::CoePlus => {
                    let b = self.check(scope, body, &want.clone().flat())?;
                    Term::coe_plus(want.clone(), b)
                }
                Coercion::CoeMinus => {
                    let a = self.norm(&want.clone().neg());
                    let b = self.check(scope, body, &a.clone().flat())?;
                    Term::coe_minus(a, b)
                }
                Coercion::InjPlus | Coercion::InjMinus => {
                    if !is_flat(&want) {
                        return fail(
                            ErrorKind::TypeMismatch,
                            t.span,
                            format!("`{}` builds a core element, but `{}` was expected", c.keyword(), show(&want)),
                        );
                    }
                    let a = strip_flat(&want);
                    let body_ty = if *c == Coercion::InjPlus { a.clone() } else { self.norm(&a.clone().neg()) };
                    let b = self.check(scope, body, &body_ty)?;
                    self.require_closed(&b, body.span, c.keyword())?;
                    if *c == Coercion::InjPlus {
                        Term::inj_plus(a, b)
                    } else {
                        Term::inj_minus(a, b)
                    }
                }
                Coercion::Refl => {
                    let Type::Hom { carrier, .. } = &want else {
                        return fail(
                            ErrorKind::TypeMismatch,
                            t.span,
                            format!("`refl` builds a hom-term, but `{}` was expected", show(&want)),
                        );
                    };
                    let a = (**carrier).clone();
                    let b = self.check(scope, body, &a.clone().flat())?;
                    self.require_closed(&b, body.span, "refl")?;
                    Term::refl(a, b)
                }
            };
            checker::check(self.sig, &scope.ctx(), &core, &want).map_err(|e| e.at(t.span))?;
            return Ok(core);
        }
        let (core, got) = self.infer(scope, t)?;
        if type_equal(self.sig, &got, &want) {
            return Ok(core);
        }
        if is_flat(&want) && !is_flat(&got) {
            return fail(
                ErrorKind::PolarityViolation,
                t.span,
                format!(
                    "a neutral term of type `{}` is needed here, but this term has the non-flat type `{}`",
                    show(&want),
                    show(&got)
                ),
            );
        }
        fail(
            ErrorKind::TypeMismatch,
            t.span,
            format!("this term has type `{}` but `{}` was expected", show(&got), show(&want)),
        )
    }

    fn require_closed(&self, t: &Term, span: Span, what: &str) -> CheckResult<()> {
        if t.is_polar_closed() {
            Ok(())
        } else {
            fail(ErrorKind::NotPolarClosed, span, format!("the argument of `{what}` mentions a polar variable"))
        }
    }

    /// `e : A♭` with non-flat types reported as polarity violations.
    fn check_flat_arg(&self, scope: &Scope, e: &STm, what: &str) -> CheckResult<(Term, Type)> {
        let (b, bt) = self.infer(scope, e)?;
        if !is_flat(&bt) {
            return fail(
                ErrorKind::PolarityViolation,
                e.span,
                format!("`{what}` needs a neutral term, but this term has the non-flat type `{}`", show(&bt)),
            );
        }
        Ok((b, bt))
    }

    // ------------------------------------------------------------------
    // Terms, inference mode

    pub fn infer(&self, scope: &Scope, t: &STm) -> CheckResult<(Term, Type)> {
        let core = self.infer_term(scope, t)?;
        let ty = self.infer_core(scope, &core, t.span)?;
        Ok((core, ty))
    }

    fn lookup(&self, scope: &Scope, name: &str, span: Span) -> CheckResult<Term> {
        if let Some(k) = scope.polar.iter().rposition(|x| x.0 == name) {
            return Ok(Term::VarP(scope.polar.len() - 1 - k));
        }
        if let Some(k) = scope.neutral.iter().rposition(|x| x.0 == name) {
            return Ok(Term::VarN(scope.neutral.len() - 1 - k));
        }
        if let Some(s) = self.sig.syms.get(name) {
            if !s.args.is_empty() {
                return fail(ErrorKind::ArityMismatch, span, format!("`{name}` expects {} arguments", s.args.len()));
            }
            return Ok(Term::Sym(name.to_string(), vec![]));
        }
        if self.sig.consts.contains_key(name) {
            return Ok(Term::Const(name.to_string(), vec![], vec![]));
        }
        fail(ErrorKind::UnboundVariable, span, format!("unbound name `{name}`"))
    }

    fn infer_term(&self, scope: &Scope, t: &STm) -> CheckResult<Term> {
        Ok(match &t.kind {
            STmKind::Name(n) => self.lookup(scope, n, t.span)?,
            STmKind::Coerce(c, Some(ann), body) => {
                let closed_carrier = matches!(c, Coercion::InjPlus | Coercion::InjMinus | Coercion::Refl);
                let a = if closed_carrier {
                    self.ty(&scope.neutral_only(), ann)?
                } else {
                    self.ty(scope, ann)?
                };
                let af = self.norm(&a.clone().flat());
                match c {
                    Coercion::CoePlus => Term::coe_plus(a, self.check(scope, body, &af)?),
                    Coercion::CoeMinus => Term::coe_minus(a, self.check(scope, body, &af)?),
                    Coercion::InjPlus => {
                        let b = self.check(scope, body, &a)?;
                        self.require_closed(&b, body.span, "inj+")?;
                        Term::inj_plus(a, b)
                    }
                    Coercion::InjMinus => {
                        let b = self.check(scope, body, &self.norm(&a.clone().neg()))?;
                        self.require_closed(&b, body.span, "inj-")?;
                        Term::inj_minus(a, b)
                    }
                    Coercion::Refl => {
                        let b = self.check(scope, body, &af)?;
                        self.require_closed(&b, body.span, "refl")?;
                        Term::refl(a, b)
                    }
                }
            }
            STmKind::Coerce(c, None, body) => match c {
                Coercion::CoePlus => {
                    let (b, bt) = self.check_flat_arg(scope, body, "coe+")?;
                    Term::coe_plus(strip_flat(&bt), b)
                }
                Coercion::CoeMinus => {
                    let (b, bt) = self.check_flat_arg(scope, body, "coe-")?;
                    Term::coe_minus(strip_flat(&bt), b)
                }
                Coercion::Refl => {
                    let (b, bt) = self.check_flat_arg(scope, body, "refl")?;
                    self.require_closed(&b, body.span, "refl")?;
                    Term::refl(strip_flat(&bt), b)
                }
                Coercion::InjPlus => {
                    let (b, bt) = self.infer(scope, body)?;
                    self.require_closed(&b, body.span, "inj+")?;
                    Term::inj_plus(bt, b)
                }
                Coercion::InjMinus => {
                    let (b, bt) = self.infer(scope, body)?;
                    self.require_closed(&b, body.span, "inj-")?;
                    Term::inj_minus(self.norm(&bt.neg()), b)
                }
            },
            STmKind::Uhp(p, q) => {
                let (p2, h) = self.infer(scope, p)?;
                let q2 = self.check(scope, q, &h)?;
                Term::uhp(p2, q2)
            }
            STmKind::Fwd(i) => Term::Fwd(Box::new(self.infer(scope, i)?.0)),
            STmKind::Back(i) => Term::Back(Box::new(self.infer(scope, i)?.0)),
            STmKind::App(f, args) => {
                let Some(decl) = self.sig.syms.get(f) else {
                    if self.sig.consts.contains_key(f) {
                        return fail(
                            ErrorKind::UnboundVariable,
                            t.span,
                            format!("`{f}` is an axiom or definition; instantiate it with `{f}@(..)`"),
                        );
                    }
                    return fail(ErrorKind::UnboundVariable, t.span, format!("unknown function symbol `{f}`"));
                };
                if decl.args.len() != args.len() {
                    return fail(
                        ErrorKind::ArityMismatch,
                        t.span,
                        format!("`{f}` takes {} arguments, got {}", decl.args.len(), args.len()),
                    );
                }
                let mut out = Vec::new();
                for (a, at) in args.iter().zip(&decl.args) {
                    out.push(self.check(scope, a, &Type::base(at.clone()))?);
                }
                Term::Sym(f.clone(), out)
            }
            STmKind::Inst(c, ns, ps) => self.instantiate(scope, c, ns, ps, t.span)?,
            STmKind::Tele(which, motive, base) => self.tele_elim(scope, *which, motive, base, t.span)?,
            STmKind::SymCore => {
                let a_y = self.tele_tail(scope, 2, plus_telescope, t.span)?;
                let (m, b) = core_symmetry_parts(&a_y);
                one_sided_term(&a_y, &m, &b, Side::Plus)
            }
            STmKind::J(j) => self.general_j(scope, j)?,
            STmKind::Compose(f, g) => {
                let (f2, fty) = self.infer(scope, f)?;
                let (g2, gty) = self.infer(scope, g)?;
                let (a, x, c) = self.hom_parts(&fty, f.span)?;
                let (a2, d, z) = self.hom_parts(&gty, g.span)?;
                if !type_equal(self.sig, &a, &a2) {
                    return fail(
                        ErrorKind::TypeMismatch,
                        t.span,
                        format!("cannot compose homs in `{}` and `{}`", show(&a), show(&a2)),
                    );
                }
                let mut candidates = self.anchors_from_cod(&a, &c);
                candidates.extend(self.anchors_from_dom(&a, &d));
                self.first_well_typed(scope, t.span, candidates, |e| {
                    compose_at(&a, e, x.clone(), z.clone(), f2.clone(), g2.clone())
                })?
            }
            STmKind::UnitR(f) => {
                let (f2, fty) = self.infer(scope, f)?;
                let (a, x, c) = self.hom_parts(&fty, f.span)?;
                let candidates = self.anchors_from_cod(&a, &c);
                self.first_well_typed(scope, t.span, candidates, |e| {
                    let comp = compose_at(
                        &a,
                        e.clone(),
                        x.clone(),
                        Term::coe_plus(a.clone(), e.clone()),
                        f2.clone(),
                        Term::refl(a.clone(), e),
                    );
                    Term::uhp(comp, f2.clone())
                })?
            }
            STmKind::UnitL(g) => {
                let (g2, gty) = self.infer(scope, g)?;
                let (a, d, z) = self.hom_parts(&gty, g.span)?;
                let candidates = self.anchors_from_dom(&a, &d);
                self.first_well_typed(scope, t.span, candidates, |e| {
                    let comp = compose_at(
                        &a,
                        e.clone(),
                        Term::coe_minus(a.clone(), e.clone()),
                        z.clone(),
                        Term::refl(a.clone(), e),
                        g2.clone(),
                    );
                    Term::uhp(comp, g2.clone())
                })?
            }
        })
    }

    fn hom_parts(&self, t: &Type, span: Span) -> CheckResult<(Type, Term, Term)> {
        match t {
            Type::Hom { carrier, dom, cod, m } if !m.neg => Ok(((**carrier).clone(), (**dom).clone(), (**cod).clone())),
            _ => fail(ErrorKind::TypeMismatch, span, format!("expected a hom-term, this has type `{}`", show(t))),
        }
    }

    fn anchors_from_cod(&self, a: &Type, c: &Term) -> Vec<Term> {
        let mut out = Vec::new();
        if let Term::CoePlus(b, e) = c {
            if **b == *a && e.is_polar_closed() {
                out.push((**e).clone());
            }
        }
        if c.is_polar_closed() {
            out.push(Term::inj_plus(a.clone(), c.clone()));
        }
        out
    }

    fn anchors_from_dom(&self, a: &Type, d: &Term) -> Vec<Term> {
        let mut out = Vec::new();
        if let Term::CoeMinus(b, e) = d {
            if **b == *a && e.is_polar_closed() {
                out.push((**e).clone());
            }
        }
        if d.is_polar_closed() {
            out.push(Term::inj_minus(a.clone(), d.clone()));
        }
        out
    }

    fn first_well_typed(
        &self,
        scope: &Scope,
        span: Span,
        candidates: Vec<Term>,
        build: impl Fn(Term) -> Term,
    ) -> CheckResult<Term> {
        let mut first_err = None;
        for e in candidates {
            let t = build(e);
            match checker::infer(self.sig, &scope.ctx(), &t) {
                Ok(_) => return Ok(t),
                Err(err) => {
                    first_err.get_or_insert(err);
                }
            }
        }
        Err(first_err
            .unwrap_or_else(|| {
                CheckError::new(
                    ErrorKind::NotPolarClosed,
                    "the midpoint of the composite depends on the polar zone and cannot be used as an anchor",
                )
            })
            .at(span))
    }

    fn instantiate(&self, scope: &Scope, c: &str, ns: &[STm], ps: &[STm], span: Span) -> CheckResult<Term> {
        let Some(decl) = self.sig.consts.get(c) else {
            return fail(ErrorKind::UnboundVariable, span, format!("unknown axiom or definition `{c}`"));
        };
        let (ntel, ptel) = (decl.neutral(), decl.polar());
        if ns.len() != ntel.len() || ps.len() != ptel.len() {
            return fail(
                ErrorKind::ArityMismatch,
                span,
                format!(
                    "`{c}` takes {} neutral and {} polar arguments, got {} and {}",
                    ntel.len(),
                    ptel.len(),
                    ns.len(),
                    ps.len()
                ),
            );
        }
        let outer = scope.neutral_only();
        let mut nargs = Vec::new();
        for (e, a) in ns.iter().zip(ntel) {
            let a = self.norm(&instantiate_neutral(a, &nargs).flat());
            let arg = self.check(scope, e, &a)?;
            self.require_closed(&arg, e.span, &format!("{c}@"))?;
            // re-check against the neutral zone alone
            checker::check(self.sig, &outer.ctx(), &arg, &a).map_err(|err| err.at(e.span))?;
            nargs.push(arg);
        }
        let mut pargs = Vec::new();
        for (e, a) in ps.iter().zip(ptel) {
            let a = subst_polar(&instantiate_neutral(a, &nargs), &pargs);
            pargs.push(self.check(scope, e, &a)?);
        }
        Ok(Term::Const(c.to_string(), nargs, pargs))
    }

    /// Checks that the scope ends with `y :: A` and the given polar tail,
    /// returning `A`.
    fn tele_tail(&self, scope: &Scope, k: usize, tail: fn(&Type) -> Vec<Type>, span: Span) -> CheckResult<Type> {
        let Some((_, a_y)) = scope.neutral.last() else {
            return fail(
                ErrorKind::MalformedJTelescope,
                span,
                "an eliminator needs a neutral anchor variable at the end of the neutral zone",
            );
        };
        if scope.polar.len() < k {
            return fail(
                ErrorKind::MalformedJTelescope,
                span,
                format!("an eliminator needs {k} telescope variables at the end of the polar zone"),
            );
        }
        let want = tail(a_y);
        let have = &scope.polar[scope.polar.len() - k..];
        let base = scope.polar.len() - k;
        for (j, (w, (name, h))) in want.iter().zip(have).enumerate() {
            // `want` is scoped over the tail only; lift past earlier entries
            let w = weaken_polar(w, base, j);
            if !type_equal(self.sig, &w, h) {
                return fail(
                    ErrorKind::MalformedJTelescope,
                    span,
                    format!("telescope variable `{name}` should have type `{}`", show(&self.norm(&w))),
                );
            }
        }
        Ok(a_y.clone())
    }

    fn tele_elim(&self, scope: &Scope, which: TeleElim, motive: &STy, base: &STm, span: Span) -> CheckResult<Term> {
        let (k, tail): (usize, fn(&Type) -> Vec<Type>) = match which {
            TeleElim::Both => (4, j_telescope),
            TeleElim::Plus | TeleElim::TransportPlus => (2, plus_telescope),
            TeleElim::Minus => (2, minus_telescope),
        };
        let a_y = self.tele_tail(scope, k, tail, span)?;
        let visible = if which == TeleElim::TransportPlus { 1 } else { k };
        let mscope = Scope {
            neutral: scope.neutral.clone(),
            polar: tail(&a_y)[..visible]
                .iter()
                .zip(&scope.polar[scope.polar.len() - k..])
                .map(|(t, (n, _))| (n.clone(), t.clone()))
                .collect(),
        };
        let m = self.ty(&mscope, motive)?;
        let wide = match which {
            TeleElim::Both => m.clone(),
            TeleElim::Plus => widen_motive(&m, Side::Plus),
            TeleElim::Minus => widen_motive(&m, Side::Minus),
            TeleElim::TransportPlus => widen_motive(&weaken_polar(&m, 1, 0), Side::Plus),
        };
        let base_ty = self.norm(&subst_polar(&wide, &j_refl_args(&a_y)));
        let b = self.check(&scope.neutral_only(), base, &base_ty)?;
        Ok(match which {
            TeleElim::Both => anchored_j(
                &a_y,
                &m,
                &b,
                [Term::VarP(3), Term::VarP(2), Term::VarP(1), Term::VarP(0)],
            ),
            TeleElim::Plus => one_sided_term(&a_y, &m, &b, Side::Plus),
            TeleElim::Minus => one_sided_term(&a_y, &m, &b, Side::Minus),
            TeleElim::TransportPlus => transport_term(&a_y, &m, &b),
        })
    }

    fn general_j(&self, scope: &Scope, j: &SJ) -> CheckResult<Term> {
        let outer = scope.neutral_only();
        let a = self.ty(&outer, &j.carrier)?;
        let mut inner = outer.clone();
        inner.neutral.push((j.binders[0].clone(), a.clone()));
        let tele = j_telescope(&a);
        let mscope = Scope {
            neutral: inner.neutral.clone(),
            polar: j.binders[1..].iter().cloned().zip(tele.iter().map(|t| self.norm(t))).collect(),
        };
        let motive = self.ty(&mscope, &j.motive)?;
        let base_ty = self.norm(&subst_polar(&motive, &j_refl_args(&a)));
        let base = self.check(&inner, &j.base, &base_ty)?;
        let anchor = self.check(scope, &j.anchor, &self.norm(&a.clone().flat()))?;
        self.require_closed(&anchor, j.anchor.span, "J")?;
        let x = self.check(scope, &j.args[0], &self.norm(&a.clone().neg()))?;
        let z = self.check(scope, &j.args[1], &a)?;
        let u = self.check(
            scope,
            &j.args[2],
            &self.norm(&Type::hom(a.clone(), x.clone(), Term::coe_plus(a.clone(), anchor.clone()))),
        )?;
        let v = self.check(
            scope,
            &j.args[3],
            &self.norm(&Type::hom(a.clone(), Term::coe_minus(a.clone(), anchor.clone()), z.clone())),
        )?;
        Ok(Term::J(Box::new(JElim {
            carrier: a,
            motive,
            base,
            anchor,
            args: [x, z, u, v],
        })))
    }

    // ------------------------------------------------------------------
    // Telescopes

    pub fn tele(&self, t: &STele) -> CheckResult<Scope> {
        let mut scope = Scope::default();
        for b in &t.neutral {
            let ty = self.ty(&scope, &b.ty).map_err(|e| e.at(b.span))?;
            scope.neutral.push((b.name.clone(), ty));
        }
        for b in &t.polar {
            let ty = self.ty(&scope, &b.ty).map_err(|e| e.at(b.span))?;
            scope.polar.push((b.name.clone(), ty));
        }
        checker::check_context(self.sig, &scope.ctx())?;
        Ok(scope)
    }
}

fn decl_item(name: &str, span: Span, kind: ItemKind, scope: Option<&Scope>) -> Item {
    Item {
        name: name.to_string(),
        span,
        kind,
        neutral_names: scope.map(Scope::neutral_names).unwrap_or_default(),
        polar_names: scope.map(Scope::polar_names).unwrap_or_default(),
        outcome: Ok(()),
    }
}

fn elaborate_decl(sig: &mut Signature, d: &Decl, models: &mut IndexMap<String, ModelSrc>) -> CheckResult<Item> {
    let at = |e: CheckError| e.at(d.span);
    match &d.kind {
        DeclKind::Type => {
            declare_type(sig, &d.name).map_err(at)?;
            Ok(decl_item(&d.name, d.span, ItemKind::Type, None))
        }
        DeclKind::Func { args, result } => {
            declare_sym(sig, &d.name, args.clone(), result.clone()).map_err(at)?;
            Ok(decl_item(&d.name, d.span, ItemKind::Func, None))
        }
        DeclKind::Axiom { tele, ty } => {
            let el = Elaborator::new(sig);
            let scope = el.tele(tele).map_err(at)?;
            let ty = el.ty(&scope, ty)?;
            let ctx = scope.ctx();
            declare_axiom(sig, &d.name, ctx.neutral.clone(), ty.clone()).map_err(at)?;
            Ok(decl_item(&d.name, d.span, ItemKind::Axiom { ctx, ty }, Some(&scope)))
        }
        DeclKind::Def { tele, ty, body } | DeclKind::Check { tele, ty, body } => {
            let el = Elaborator::new(sig);
            let scope = el.tele(tele).map_err(at)?;
            let ty = el.ty(&scope, ty)?;
            let term = el.check(&scope, body, &ty)?;
            let ctx = scope.ctx();
            checker::check_goal(
                sig,
                &checker::Goal {
                    name: d.name.clone(),
                    ctx: ctx.clone(),
                    term: term.clone(),
                    ty: ty.clone(),
                },
            )
            .map_err(at)?;
            let kind = if matches!(d.kind, DeclKind::Def { .. }) {
                declare_def(sig, &d.name, ctx.neutral.clone(), ctx.polar.clone(), ty.clone(), term.clone())
                    .map_err(at)?;
                ItemKind::Def { ctx, term, ty }
            } else {
                ItemKind::Check { ctx, term, ty }
            };
            Ok(decl_item(&d.name, d.span, kind, Some(&scope)))
        }
        DeclKind::Refute { tele, ty, model } => {
            let el = Elaborator::new(sig);
            let scope = el.tele(tele).map_err(at)?;
            let ty = el.ty(&scope, ty)?;
            Ok(decl_item(
                &d.name,
                d.span,
                ItemKind::Refute {
                    ctx: scope.ctx(),
                    ty,
                    model: model.clone(),
                },
                Some(&scope),
            ))
        }
        DeclKind::Model(m) => {
            models.insert(d.name.clone(), m.clone());
            Ok(decl_item(&d.name, d.span, ItemKind::Model, None))
        }
    }
}

/// Elaborates declarations in order. A failing declaration is recorded and
/// skipped; later declarations see the signature without it.
pub fn elaborate(decls: &[Decl]) -> Program {
    let mut p = Program::default();
    let mut seen = std::collections::HashSet::new();
    for d in decls {
        let res = if !seen.insert(d.name.clone()) {
            Err(CheckError::new(ErrorKind::IllFormedContext, format!("`{}` is declared twice", d.name)).at(d.span))
        } else {
            elaborate_decl(&mut p.sig, d, &mut p.models)
        };
        p.items.push(match res {
            Ok(item) => item,
            Err(e) => Item {
                name: d.name.clone(),
                span: d.span,
                kind: ItemKind::Failed,
                neutral_names: vec![],
                polar_names: vec![],
                outcome: Err(e.at(d.span)),
            },
        });
    }
    p
}

/// Elaborates `[..] (..) |- T` (or a bare type) against a signature.
pub fn elaborate_goal_type(sig: &Signature, tele: &STele, ty: &STy) -> CheckResult<(Scope, Type)> {
    let el = Elaborator::new(sig);
    let scope = el.tele(tele)?;
    let t = el.ty(&scope, ty)?;
    Ok((scope, t))
}

/// Looks up the declared data behind a constant, for diagnostics.
pub fn const_decl<'a>(sig: &'a Signature, name: &str) -> Option<&'a ConstDecl> {
    sig.consts.get(name)
}
