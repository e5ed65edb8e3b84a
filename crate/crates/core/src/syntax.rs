//! Core syntax: types, terms and contexts with two de Bruijn namespaces.
//!
//! Neutral variables (`VarN`) index the neutral zone, polar variables
//! (`VarP`) index the polar zone. Both count from the right end of their
//! zone. The only binder is the eliminator [`JElim`]: its carrier is scoped
//! over the neutral zone alone, its motive over the neutral zone extended by
//! the anchor `y` together with the fixed four-entry polar telescope, and its
//! base over the neutral zone extended by `y` with an empty polar zone. The
//! outer polar zone is never visible inside those three positions.

use std::fmt;

/// One of the four composites of negation and flat.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modality {
    pub flat: bool,
    pub neg: bool,
}

impl Modality {
    pub const ID: Modality = Modality { flat: false, neg: false };
    pub const NEG: Modality = Modality { flat: false, neg: true };
    pub const FLAT: Modality = Modality { flat: true, neg: false };
    pub const FLAT_NEG: Modality = Modality { flat: true, neg: true };

    pub const ALL: [Modality; 4] = [Self::ID, Self::NEG, Self::FLAT, Self::FLAT_NEG];

    /// `self` applied after `inner`. Flat is idempotent, negation is an
    /// involution, and the two commute.
    pub fn compose(self, inner: Modality) -> Modality {
        Modality {
            flat: self.flat || inner.flat,
            neg: self.neg ^ inner.neg,
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.flat, self.neg) {
            (false, false) => write!(f, "ε"),
            (false, true) => write!(f, "⁻"),
            (true, false) => write!(f, "♭"),
            (true, true) => write!(f, "♭⁻"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Base { name: String, m: Modality },
    /// `Hom carrier (dom, cod)`; `dom : carrier⁻`, `cod : carrier`.
    Hom {
        carrier: Box<Type>,
        dom: Box<Term>,
        cod: Box<Term>,
        m: Modality,
    },
    Neg(Box<Type>),
    Flat(Box<Type>),
}

/// The two-sided hom eliminator with its scrutinee supplied explicitly.
///
/// Arguments are, in order, `x : A⁻`, `z : A`, `u : Hom A (x, coe+ e)` and
/// `v : Hom A (coe- e, z)` where `e` is the anchor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JElim {
    pub carrier: Type,
    pub motive: Type,
    pub base: Term,
    pub anchor: Term,
    pub args: [Term; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    VarN(usize),
    VarP(usize),
    /// `inj+` at carrier `A`: from `t : A` (polar-closed) to `A♭`.
    InjPlus(Box<Type>, Box<Term>),
    /// `inj-` at carrier `A`: from `s : A⁻` (polar-closed) to `A♭`.
    InjMinus(Box<Type>, Box<Term>),
    /// `coe+` at carrier `A`: from `A♭` to `A`.
    CoePlus(Box<Type>, Box<Term>),
    /// `coe-` at carrier `A`: from `A♭` to `A⁻`.
    CoeMinus(Box<Type>, Box<Term>),
    Refl(Box<Type>, Box<Term>),
    J(Box<JElim>),
    Uhp(Box<Term>, Box<Term>),
    Fwd(Box<Term>),
    Back(Box<Term>),
    /// First-order function symbol, covariant in every argument.
    Sym(String, Vec<Term>),
    /// Axiom or definition instantiated with neutral then polar arguments.
    Const(String, Vec<Term>, Vec<Term>),
}

/// `Γ ∣ Δ`: the polar zone is scoped over the whole neutral zone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    pub neutral: Vec<Type>,
    pub polar: Vec<Type>,
}

impl Context {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(neutral: Vec<Type>, polar: Vec<Type>) -> Self {
        Context { neutral, polar }
    }

    /// The same neutral zone with the polar zone emptied.
    pub fn neutral_only(&self) -> Context {
        Context {
            neutral: self.neutral.clone(),
            polar: Vec::new(),
        }
    }

    pub fn extend_neutral(&self, ty: Type) -> Context {
        let mut neutral = self.neutral.clone();
        neutral.push(ty);
        Context {
            neutral,
            polar: Vec::new(),
        }
    }

    pub fn extend_polar(&self, ty: Type) -> Context {
        let mut c = self.clone();
        c.polar.push(ty);
        c
    }
}

// ---------------------------------------------------------------------------
// Smart constructors

impl Type {
    pub fn base(name: impl Into<String>) -> Type {
        Type::Base {
            name: name.into(),
            m: Modality::ID,
        }
    }

    pub fn hom(carrier: Type, dom: Term, cod: Term) -> Type {
        Type::Hom {
            carrier: Box::new(carrier),
            dom: Box::new(dom),
            cod: Box::new(cod),
            m: Modality::ID,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Type {
        Type::Neg(Box::new(self))
    }

    pub fn flat(self) -> Type {
        Type::Flat(Box::new(self))
    }

    pub fn node_count(&self) -> usize {
        match self {
            Type::Base { .. } => 1,
            Type::Hom { carrier, dom, cod, .. } => {
                1 + carrier.node_count() + dom.node_count() + cod.node_count()
            }
            Type::Neg(t) | Type::Flat(t) => 1 + t.node_count(),
        }
    }
}

impl Term {
    pub fn inj_plus(a: Type, t: Term) -> Term {
        Term::InjPlus(Box::new(a), Box::new(t))
    }
    pub fn inj_minus(a: Type, t: Term) -> Term {
        Term::InjMinus(Box::new(a), Box::new(t))
    }
    pub fn coe_plus(a: Type, t: Term) -> Term {
        Term::CoePlus(Box::new(a), Box::new(t))
    }
    pub fn coe_minus(a: Type, t: Term) -> Term {
        Term::CoeMinus(Box::new(a), Box::new(t))
    }
    pub fn refl(a: Type, t: Term) -> Term {
        Term::Refl(Box::new(a), Box::new(t))
    }
    pub fn uhp(p: Term, q: Term) -> Term {
        Term::Uhp(Box::new(p), Box::new(q))
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::VarN(_) | Term::VarP(_) => 1,
            Term::InjPlus(a, t)
            | Term::InjMinus(a, t)
            | Term::CoePlus(a, t)
            | Term::CoeMinus(a, t)
            | Term::Refl(a, t) => 1 + a.node_count() + t.node_count(),
            Term::J(j) => {
                1 + j.carrier.node_count()
                    + j.motive.node_count()
                    + j.base.node_count()
                    + j.anchor.node_count()
                    + j.args.iter().map(Term::node_count).sum::<usize>()
            }
            Term::Uhp(p, q) => 1 + p.node_count() + q.node_count(),
            Term::Fwd(t) | Term::Back(t) => 1 + t.node_count(),
            Term::Sym(_, args) => 1 + args.iter().map(Term::node_count).sum::<usize>(),
            Term::Const(_, ns, ps) => {
                1 + ns.iter().chain(ps).map(Term::node_count).sum::<usize>()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Variable operations

#[doc(hidden)]
#[derive(Clone, Copy)]
pub enum Op<'a> {
    ShiftN { amount: usize, cutoff: usize },
    ShiftP { amount: usize, cutoff: usize },
    /// Replace neutral `index`, re-basing the ones above it.
    SubstN { index: usize, e: &'a Term },
    /// Simultaneously replace the `args.len()` neutral variables of a
    /// closed telescope; `args` are scoped in the target context.
    InstN { args: &'a [Term] },
    /// Simultaneously replace the trailing `args.len()` polar variables.
    SubstP { args: &'a [Term] },
}

impl Op<'_> {
    fn touches_polar(&self) -> bool {
        matches!(self, Op::ShiftP { .. } | Op::SubstP { .. })
    }
}

fn map_neutral(i: usize, op: Op<'_>, depth: usize) -> Term {
    match op {
        Op::ShiftN { amount, cutoff } => {
            if i >= cutoff + depth {
                Term::VarN(i + amount)
            } else {
                Term::VarN(i)
            }
        }
        Op::SubstN { index, e } => {
            let j = index + depth;
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => weaken_neutral(e, j, 0),
                std::cmp::Ordering::Greater => Term::VarN(i - 1),
                std::cmp::Ordering::Less => Term::VarN(i),
            }
        }
        Op::InstN { args } => {
            if i < depth {
                Term::VarN(i)
            } else if i - depth < args.len() {
                weaken_neutral(&args[args.len() - 1 - (i - depth)], depth, 0)
            } else {
                Term::VarN(i - args.len())
            }
        }
        Op::ShiftP { .. } | Op::SubstP { .. } => Term::VarN(i),
    }
}

fn map_polar(i: usize, op: Op<'_>) -> Term {
    match op {
        Op::ShiftP { amount, cutoff } => {
            if i >= cutoff {
                Term::VarP(i + amount)
            } else {
                Term::VarP(i)
            }
        }
        Op::SubstP { args } => {
            if i < args.len() {
                args[args.len() - 1 - i].clone()
            } else {
                Term::VarP(i - args.len())
            }
        }
        _ => Term::VarP(i),
    }
}

fn apply_type(t: &Type, op: Op<'_>, depth: usize, polar_visible: bool) -> Type {
    match t {
        Type::Base { .. } => t.clone(),
        Type::Hom { carrier, dom, cod, m } => Type::Hom {
            carrier: Box::new(apply_type(carrier, op, depth, polar_visible)),
            dom: Box::new(apply_term(dom, op, depth, polar_visible)),
            cod: Box::new(apply_term(cod, op, depth, polar_visible)),
            m: *m,
        },
        Type::Neg(a) => Type::Neg(Box::new(apply_type(a, op, depth, polar_visible))),
        Type::Flat(a) => Type::Flat(Box::new(apply_type(a, op, depth, polar_visible))),
    }
}

fn apply_term(t: &Term, op: Op<'_>, depth: usize, polar_visible: bool) -> Term {
    let ty = |a: &Type| Box::new(apply_type(a, op, depth, polar_visible));
    let tm = |a: &Term| Box::new(apply_term(a, op, depth, polar_visible));
    match t {
        Term::VarN(i) => map_neutral(*i, op, depth),
        Term::VarP(i) => {
            if polar_visible {
                map_polar(*i, op)
            } else {
                Term::VarP(*i)
            }
        }
        Term::InjPlus(a, x) => Term::InjPlus(ty(a), tm(x)),
        Term::InjMinus(a, x) => Term::InjMinus(ty(a), tm(x)),
        Term::CoePlus(a, x) => Term::CoePlus(ty(a), tm(x)),
        Term::CoeMinus(a, x) => Term::CoeMinus(ty(a), tm(x)),
        Term::Refl(a, x) => Term::Refl(ty(a), tm(x)),
        Term::J(j) => {
            // Inner positions never see the outer polar zone.
            let (carrier, motive, base) = if op.touches_polar() {
                (j.carrier.clone(), j.motive.clone(), j.base.clone())
            } else {
                (
                    apply_type(&j.carrier, op, depth, false),
                    apply_type(&j.motive, op, depth + 1, false),
                    apply_term(&j.base, op, depth + 1, false),
                )
            };
            Term::J(Box::new(JElim {
                carrier,
                motive,
                base,
                anchor: apply_term(&j.anchor, op, depth, polar_visible),
                args: j.args.clone().map(|a| apply_term(&a, op, depth, polar_visible)),
            }))
        }
        Term::Uhp(p, q) => Term::Uhp(tm(p), tm(q)),
        Term::Fwd(x) => Term::Fwd(tm(x)),
        Term::Back(x) => Term::Back(tm(x)),
        Term::Sym(f, args) => Term::Sym(
            f.clone(),
            args.iter().map(|a| apply_term(a, op, depth, polar_visible)).collect(),
        ),
        Term::Const(c, ns, ps) => Term::Const(
            c.clone(),
            ns.iter().map(|a| apply_term(a, op, depth, polar_visible)).collect(),
            ps.iter().map(|a| apply_term(a, op, depth, polar_visible)).collect(),
        ),
    }
}

/// Shared interface for terms and types under the variable operations.
pub trait Syntax: Sized {
    #[doc(hidden)]
    fn apply(&self, op: Op<'_>) -> Self;
    fn is_polar_closed(&self) -> bool;
    /// Largest free neutral index plus one (0 if none).
    fn neutral_bound(&self) -> usize;
}

impl Syntax for Term {
    fn apply(&self, op: Op<'_>) -> Self {
        apply_term(self, op, 0, true)
    }
    fn is_polar_closed(&self) -> bool {
        term_polar_closed(self)
    }
    fn neutral_bound(&self) -> usize {
        term_neutral_bound(self, 0)
    }
}

impl Syntax for Type {
    fn apply(&self, op: Op<'_>) -> Self {
        apply_type(self, op, 0, true)
    }
    fn is_polar_closed(&self) -> bool {
        type_polar_closed(self)
    }
    fn neutral_bound(&self) -> usize {
        type_neutral_bound(self, 0)
    }
}

pub fn weaken_polar<S: Syntax>(s: &S, amount: usize, cutoff: usize) -> S {
    s.apply(Op::ShiftP { amount, cutoff })
}

pub fn weaken_neutral<S: Syntax>(s: &S, amount: usize, cutoff: usize) -> S {
    s.apply(Op::ShiftN { amount, cutoff })
}

/// Replaces the trailing `args.len()` polar variables of `body`; `args` are
/// listed in telescope order (leftmost first).
pub fn subst_polar<S: Syntax>(body: &S, args: &[Term]) -> S {
    body.apply(Op::SubstP { args })
}

/// Replaces neutral variable `index` by `e`, which must be polar-closed and
/// scoped over the neutral entries to the left of that variable.
pub fn subst_neutral<S: Syntax>(body: &S, index: usize, e: &Term) -> S {
    debug_assert!(e.is_polar_closed(), "neutral substitution by a polar-open term");
    body.apply(Op::SubstN { index, e })
}

/// Instantiates a body scoped exactly over a neutral telescope with
/// polar-closed arguments given in telescope order.
pub fn instantiate_neutral<S: Syntax>(body: &S, args: &[Term]) -> S {
    body.apply(Op::InstN { args })
}

pub fn is_polar_closed<S: Syntax>(s: &S) -> bool {
    s.is_polar_closed()
}

fn type_polar_closed(t: &Type) -> bool {
    match t {
        Type::Base { .. } => true,
        Type::Hom { carrier, dom, cod, .. } => {
            type_polar_closed(carrier) && term_polar_closed(dom) && term_polar_closed(cod)
        }
        Type::Neg(a) | Type::Flat(a) => type_polar_closed(a),
    }
}

fn term_polar_closed(t: &Term) -> bool {
    match t {
        Term::VarN(_) => true,
        Term::VarP(_) => false,
        Term::InjPlus(a, x)
        | Term::InjMinus(a, x)
        | Term::CoePlus(a, x)
        | Term::CoeMinus(a, x)
        | Term::Refl(a, x) => type_polar_closed(a) && term_polar_closed(x),
        // carrier, motive and base cannot reach the outer polar zone
        Term::J(j) => term_polar_closed(&j.anchor) && j.args.iter().all(term_polar_closed),
        Term::Uhp(p, q) => term_polar_closed(p) && term_polar_closed(q),
        Term::Fwd(x) | Term::Back(x) => term_polar_closed(x),
        Term::Sym(_, args) => args.iter().all(term_polar_closed),
        Term::Const(_, ns, ps) => ns.iter().chain(ps).all(term_polar_closed),
    }
}

fn type_neutral_bound(t: &Type, depth: usize) -> usize {
    match t {
        Type::Base { .. } => 0,
        Type::Hom { carrier, dom, cod, .. } => type_neutral_bound(carrier, depth)
            .max(term_neutral_bound(dom, depth))
            .max(term_neutral_bound(cod, depth)),
        Type::Neg(a) | Type::Flat(a) => type_neutral_bound(a, depth),
    }
}

fn term_neutral_bound(t: &Term, depth: usize) -> usize {
    match t {
        Term::VarN(i) => {
            if *i >= depth {
                i - depth + 1
            } else {
                0
            }
        }
        Term::VarP(_) => 0,
        Term::InjPlus(a, x)
        | Term::InjMinus(a, x)
        | Term::CoePlus(a, x)
        | Term::CoeMinus(a, x)
        | Term::Refl(a, x) => type_neutral_bound(a, depth).max(term_neutral_bound(x, depth)),
        Term::J(j) => {
            let mut b = type_neutral_bound(&j.carrier, depth)
                .max(type_neutral_bound(&j.motive, depth + 1))
                .max(term_neutral_bound(&j.base, depth + 1))
                .max(term_neutral_bound(&j.anchor, depth));
            for a in &j.args {
                b = b.max(term_neutral_bound(a, depth));
            }
            b
        }
        Term::Uhp(p, q) => term_neutral_bound(p, depth).max(term_neutral_bound(q, depth)),
        Term::Fwd(x) | Term::Back(x) => term_neutral_bound(x, depth),
        Term::Sym(_, args) => args.iter().map(|a| term_neutral_bound(a, depth)).max().unwrap_or(0),
        Term::Const(_, ns, ps) => ns
            .iter()
            .chain(ps)
            .map(|a| term_neutral_bound(a, depth))
            .max()
            .unwrap_or(0),
    }
}

/// Largest free polar index plus one, ignoring positions that cannot see the
/// outer polar zone.
pub fn polar_bound_term(t: &Term) -> usize {
    match t {
        Term::VarN(_) => 0,
        Term::VarP(i) => i + 1,
        Term::InjPlus(a, x)
        | Term::InjMinus(a, x)
        | Term::CoePlus(a, x)
        | Term::CoeMinus(a, x)
        | Term::Refl(a, x) => polar_bound_type(a).max(polar_bound_term(x)),
        Term::J(j) => j
            .args
            .iter()
            .map(polar_bound_term)
            .max()
            .unwrap_or(0)
            .max(polar_bound_term(&j.anchor)),
        Term::Uhp(p, q) => polar_bound_term(p).max(polar_bound_term(q)),
        Term::Fwd(x) | Term::Back(x) => polar_bound_term(x),
        Term::Sym(_, args) => args.iter().map(polar_bound_term).max().unwrap_or(0),
        Term::Const(_, ns, ps) => ns.iter().chain(ps).map(polar_bound_term).max().unwrap_or(0),
    }
}

pub fn polar_bound_type(t: &Type) -> usize {
    match t {
        Type::Base { .. } => 0,
        Type::Hom { carrier, dom, cod, .. } => polar_bound_type(carrier)
            .max(polar_bound_term(dom))
            .max(polar_bound_term(cod)),
        Type::Neg(a) | Type::Flat(a) => polar_bound_type(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Type {
        Type::base("A")
    }

    #[test]
    fn weaken_polar_examples() {
        assert_eq!(weaken_polar(&Term::VarP(0), 1, 0), Term::VarP(1));
        assert_eq!(weaken_polar(&Term::VarN(0), 5, 0), Term::VarN(0));
        assert_eq!(
            weaken_polar(&Term::coe_plus(a(), Term::VarP(1)), 2, 1),
            Term::coe_plus(a(), Term::VarP(3))
        );
    }

    #[test]
    fn weaken_neutral_examples() {
        assert_eq!(weaken_neutral(&Term::VarN(0), 1, 0), Term::VarN(1));
        assert_eq!(weaken_neutral(&Term::VarP(2), 1, 0), Term::VarP(2));
        assert_eq!(
            weaken_neutral(&Term::refl(a(), Term::VarN(0)), 1, 1),
            Term::refl(a(), Term::VarN(0))
        );
    }

    #[test]
    fn subst_polar_examples() {
        let e = Term::Sym("zero".into(), vec![]);
        assert_eq!(subst_polar(&Term::VarP(0), std::slice::from_ref(&e)), e);
        let s = Term::VarN(3);
        let t = Term::VarN(4);
        let h = Type::hom(a(), Term::VarP(1), Term::VarP(0));
        assert_eq!(subst_polar(&h, &[s.clone(), t.clone()]), Type::hom(a(), s, t));
    }

    #[test]
    fn subst_neutral_examples() {
        let t = Term::Sym("zero".into(), vec![]);
        assert_eq!(
            subst_neutral(&Term::coe_plus(a(), Term::VarN(0)), 0, &Term::inj_plus(a(), t.clone())),
            Term::coe_plus(a(), Term::inj_plus(a(), t))
        );
        let e = Term::VarN(7);
        assert_eq!(subst_neutral(&Term::VarN(1), 0, &e), Term::VarN(0));
        assert_eq!(subst_neutral(&Term::VarP(0), 0, &e), Term::VarP(0));
    }

    #[test]
    fn polar_closedness() {
        assert!(is_polar_closed(&Term::VarN(0)));
        assert!(!is_polar_closed(&Term::VarP(0)));
        let zero = Term::Sym("zero".into(), vec![]);
        let t = Term::Sym("plus".into(), vec![Term::coe_plus(a(), Term::VarN(0)), zero]);
        assert!(is_polar_closed(&t));
    }

    #[test]
    fn polar_ops_do_not_enter_eliminator_scopes() {
        let j = Term::J(Box::new(JElim {
            carrier: a(),
            motive: Type::hom(a(), Term::VarP(3), Term::VarP(2)),
            base: Term::refl(a(), Term::VarN(0)),
            anchor: Term::VarN(0),
            args: [Term::VarP(3), Term::VarP(2), Term::VarP(1), Term::VarP(0)],
        }));
        let Term::J(w) = weaken_polar(&j, 2, 0) else { unreachable!() };
        assert_eq!(w.motive, Type::hom(a(), Term::VarP(3), Term::VarP(2)));
        assert_eq!(w.args[0], Term::VarP(5));
        let Term::J(w) = weaken_neutral(&j, 1, 0) else { unreachable!() };
        // y is bound inside the base; the anchor is free
        assert_eq!(w.base, Term::refl(a(), Term::VarN(0)));
        assert_eq!(w.anchor, Term::VarN(1));
    }

    #[test]
    fn instantiate_telescope() {
        // [a, b] ⊢ plus(a, b) with a := x, b := y
        let body = Term::Sym("plus".into(), vec![Term::VarN(1), Term::VarN(0)]);
        let r = instantiate_neutral(&body, &[Term::VarN(5), Term::VarN(6)]);
        assert_eq!(r, Term::Sym("plus".into(), vec![Term::VarN(5), Term::VarN(6)]));
    }
}
