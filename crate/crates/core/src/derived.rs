//! Constructions derived from the kernel rules. Every builder returns a
//! [`DerivedDecl`] that has been re-checked by the kernel.

use crate::checker::{check_goal, j_context, CheckResult};
use crate::equality::normalize_type;
use crate::signature::Signature;
use crate::syntax::{weaken_neutral, weaken_polar, Context, JElim, Syntax, Term, Type};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedDecl {
    pub name: String,
    pub context: Context,
    pub term: Term,
    pub ty: Type,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitSide {
    Left,
    Right,
}

fn finish(sig: &Signature, name: &str, context: Context, term: Term, ty: Type) -> CheckResult<DerivedDecl> {
    let d = DerivedDecl {
        name: name.to_string(),
        context,
        term,
        ty,
    };
    check_goal(
        sig,
        &crate::checker::Goal {
            name: d.name.clone(),
            ctx: d.context.clone(),
            term: d.term.clone(),
            ty: d.ty.clone(),
        },
    )?;
    Ok(d)
}

/// Eliminator anchored at the last neutral variable `y :: a_y`.
///
/// `motive` is scoped over `Γ, y ∣ x, z, u, v`, `base` over `Γ, y ∣ •`, and
/// `args` over the ambient `Γ, y ∣ Δ`.
pub fn anchored_j(a_y: &Type, motive: &Type, base: &Term, args: [Term; 4]) -> Term {
    Term::J(Box::new(JElim {
        carrier: weaken_neutral(a_y, 1, 0),
        motive: weaken_neutral(motive, 1, 1),
        base: weaken_neutral(base, 1, 1),
        anchor: Term::VarN(0),
        args,
    }))
}

/// Composition at carrier `a` through anchor `e`: from `u : Hom a (x, coe+ e)`
/// and `v : Hom a (coe- e, z)` to `Hom a (x, z)`.
pub fn compose_at(a: &Type, e: Term, x: Term, z: Term, u: Term, v: Term) -> Term {
    let a1 = weaken_neutral(a, 1, 0);
    Term::J(Box::new(JElim {
        carrier: a.clone(),
        motive: Type::hom(a1.clone(), Term::VarP(3), Term::VarP(2)),
        base: Term::refl(a1, Term::VarN(0)),
        anchor: e,
        args: [x, z, u, v],
    }))
}

/// `z : A, v : Hom A (coe- y, z)` over `Γ, y :: A`.
pub fn plus_telescope(a_y: &Type) -> Vec<Type> {
    let a = weaken_neutral(a_y, 1, 0);
    vec![
        a.clone(),
        Type::hom(a.clone(), Term::coe_minus(a, Term::VarN(0)), Term::VarP(0)),
    ]
}

/// `x : A⁻, u : Hom A (x, coe+ y)` over `Γ, y :: A`.
pub fn minus_telescope(a_y: &Type) -> Vec<Type> {
    let a = weaken_neutral(a_y, 1, 0);
    vec![
        a.clone().neg(),
        Type::hom(a.clone(), Term::VarP(0), Term::coe_plus(a, Term::VarN(0))),
    ]
}

/// Arguments of the two-sided eliminator for a one-sided motive, in the
/// one-sided telescope over `Γ, y`.
pub fn one_sided_args(a_y: &Type, side: Side) -> [Term; 4] {
    let a = weaken_neutral(a_y, 1, 0);
    let y = Term::VarN(0);
    match side {
        Side::Plus => [
            Term::coe_minus(a.clone(), y.clone()),
            Term::VarP(1),
            Term::refl(a, y),
            Term::VarP(0),
        ],
        Side::Minus => [
            Term::VarP(1),
            Term::coe_plus(a.clone(), y.clone()),
            Term::VarP(0),
            Term::refl(a, y),
        ],
    }
}

/// Lifts a one-sided motive to the four-entry telescope.
pub fn widen_motive(motive: &Type, side: Side) -> Type {
    match side {
        Side::Plus => weaken_polar(&weaken_polar(motive, 1, 1), 1, 3),
        Side::Minus => weaken_polar(&weaken_polar(motive, 1, 0), 1, 2),
    }
}

/// The one-sided eliminator over `Γ, y :: a_y` with motive `m_ty` scoped
/// over the one-sided telescope.
pub fn one_sided_term(a_y: &Type, motive: &Type, base: &Term, side: Side) -> Term {
    anchored_j(a_y, &widen_motive(motive, side), base, one_sided_args(a_y, side))
}

pub fn derive_one_sided(
    sig: &Signature,
    gamma: &[Type],
    a: &Type,
    motive: &Type,
    base: &Term,
    side: Side,
) -> CheckResult<DerivedDecl> {
    let a = normalize_type(sig, a);
    let mut ctx = Context::new(gamma.to_vec(), vec![]).extend_neutral(a.clone());
    ctx.polar = match side {
        Side::Plus => plus_telescope(&a),
        Side::Minus => minus_telescope(&a),
    };
    let term = one_sided_term(&a, motive, base, side);
    let name = match side {
        Side::Plus => "J+",
        Side::Minus => "J-",
    };
    finish(sig, name, ctx, term, motive.clone())
}

pub fn make_compose(sig: &Signature, gamma: &[Type], a: &Type) -> CheckResult<DerivedDecl> {
    let a = normalize_type(sig, a);
    let ctx = j_context(&Context::new(gamma.to_vec(), vec![]), &a);
    let a1 = weaken_neutral(&a, 1, 0);
    let term = compose_at(
        &a1,
        Term::VarN(0),
        Term::VarP(3),
        Term::VarP(2),
        Term::VarP(1),
        Term::VarP(0),
    );
    finish(sig, "compose", ctx, term, Type::hom(a1, Term::VarP(3), Term::VarP(2)))
}

/// Transport along `v : Hom A (coe- y, z)` in a family `motive` over
/// `Γ, y ∣ z : A`; `base` inhabits the family at `coe+ y`.
pub fn transport_term(a_y: &Type, motive: &Type, base: &Term) -> Term {
    one_sided_term(a_y, &weaken_polar(motive, 1, 0), base, Side::Plus)
}

pub fn make_transport_plus(
    sig: &Signature,
    gamma: &[Type],
    a: &Type,
    motive: &Type,
    base: &Term,
) -> CheckResult<DerivedDecl> {
    let a = normalize_type(sig, a);
    let mut ctx = Context::new(gamma.to_vec(), vec![]).extend_neutral(a.clone());
    ctx.polar = plus_telescope(&a);
    let term = transport_term(&a, motive, base);
    finish(sig, "tr+", ctx, term, weaken_polar(motive, 1, 0))
}

/// Motive and base of core symmetry over `Γ, y :: A ∣ z : A, v`, for a
/// carrier `A` that is already flat.
pub fn core_symmetry_parts(a_y: &Type) -> (Type, Term) {
    let a = weaken_neutral(a_y, 1, 0);
    let yy = Term::coe_plus(a.clone(), Term::VarN(0));
    let motive = Type::hom(
        a.clone(),
        Term::coe_minus(a.clone(), Term::VarP(1)),
        Term::coe_plus(a.clone(), yy.clone()),
    );
    (motive, Term::refl(a, yy))
}

/// From `v : Hom A (coe- y, z)` to `Hom A (coe- z, coe+ coe+ y)` at
/// `A := B♭`.
pub fn make_core_symmetry(sig: &Signature, gamma: &[Type], b: &Type) -> CheckResult<DerivedDecl> {
    make_symmetry_at(sig, gamma, &b.clone().flat())
}

/// The same construction at an arbitrary carrier; fails unless it is flat.
pub fn make_symmetry_at(sig: &Signature, gamma: &[Type], carrier: &Type) -> CheckResult<DerivedDecl> {
    let a = normalize_type(sig, carrier);
    let (motive, base) = core_symmetry_parts(&a);
    derive_one_sided(sig, gamma, &a, &motive, &base, Side::Plus).map(|mut d| {
        d.name = "symCore".into();
        d
    })
}

/// `Hom (A♭) (coe- inj+ s, coe+ inj+ t)`.
pub fn make_id_flat(sig: &Signature, ctx: &Context, a: &Type, s: &Term, t: &Term) -> CheckResult<Type> {
    use crate::checker::{check, check_type, CheckError, ErrorKind};
    for (what, x) in [("left", s), ("right", t)] {
        if !x.is_polar_closed() {
            return Err(CheckError::new(
                ErrorKind::NotPolarClosed,
                format!("{what} side of IdFlat depends on the polar zone"),
            ));
        }
    }
    let outer = ctx.neutral_only();
    check_type(sig, &outer, a)?;
    check(sig, &outer, s, a)?;
    check(sig, &outer, t, a)?;
    let a = normalize_type(sig, a);
    let af = normalize_type(sig, &a.clone().flat());
    let ty = Type::hom(
        af.clone(),
        Term::coe_minus(af.clone(), Term::inj_plus(a.clone(), s.clone())),
        Term::coe_plus(af, Term::inj_plus(a, t.clone())),
    );
    check_type(sig, ctx, &ty)?;
    Ok(ty)
}

/// `UHP(compose(f, refl y), f)` or `UHP(compose(refl y, g), g)` over
/// `Γ, y :: A` with the hom in the polar zone.
pub fn make_unit_law(sig: &Signature, gamma: &[Type], a: &Type, side: UnitSide) -> CheckResult<DerivedDecl> {
    let a = normalize_type(sig, a);
    let mut ctx = Context::new(gamma.to_vec(), vec![]).extend_neutral(a.clone());
    let a1 = weaken_neutral(&a, 1, 0);
    let y = Term::VarN(0);
    let refl = Term::refl(a1.clone(), y.clone());
    let (h, term) = match side {
        UnitSide::Right => {
            ctx.polar = minus_telescope(&a);
            let f = Term::VarP(0);
            let c = compose_at(&a1, y.clone(), Term::VarP(1), Term::coe_plus(a1.clone(), y), f.clone(), refl);
            (ctx.polar[1].clone(), unit_witness(c, f))
        }
        UnitSide::Left => {
            ctx.polar = plus_telescope(&a);
            let g = Term::VarP(0);
            let c = compose_at(&a1, y.clone(), Term::coe_minus(a1.clone(), y), Term::VarP(1), refl, g.clone());
            (ctx.polar[1].clone(), unit_witness(c, g))
        }
    };
    let ty = normalize_type(sig, &weaken_polar(&h, 1, 0));
    let (l, r) = match &term {
        Term::Uhp(l, r) => ((**l).clone(), (**r).clone()),
        _ => unreachable!(),
    };
    let ty = Type::hom(ty.clone(), Term::coe_minus(ty.clone(), l), Term::coe_plus(ty, r));
    let name = match side {
        UnitSide::Left => "unitL",
        UnitSide::Right => "unitR",
    };
    finish(sig, name, ctx, term, ty)
}

fn unit_witness(composite: Term, h: Term) -> Term {
    Term::uhp(composite, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::{declare_type, ErrorKind};
    use crate::equality::{normalize_term, term_equal};
    use crate::syntax::subst_polar;

    fn sig() -> Signature {
        let mut s = Signature::new();
        declare_type(&mut s, "A").unwrap();
        s
    }

    fn a() -> Type {
        Type::base("A")
    }

    #[test]
    fn compose_checks_and_reduces_on_refl() {
        let s = sig();
        let d = make_compose(&s, &[], &a()).unwrap();
        let a1 = weaken_neutral(&a(), 1, 0);
        let refl = Term::refl(a1.clone(), Term::VarN(0));
        let inst = subst_polar(
            &d.term,
            &[
                Term::coe_minus(a1.clone(), Term::VarN(0)),
                Term::coe_plus(a1.clone(), Term::VarN(0)),
                refl.clone(),
                refl.clone(),
            ],
        );
        assert_eq!(normalize_term(&s, &inst), refl);
    }

    #[test]
    fn one_sided_beta() {
        let s = sig();
        let (m, base) = core_symmetry_parts(&normalize_type(&s, &a().flat()));
        let d = derive_one_sided(&s, &[], &a().flat(), &m, &base, Side::Plus).unwrap();
        let a1 = weaken_neutral(&normalize_type(&s, &a().flat()), 1, 0);
        let inst = subst_polar(
            &d.term,
            &[Term::coe_plus(a1.clone(), Term::VarN(0)), Term::refl(a1, Term::VarN(0))],
        );
        assert!(term_equal(&s, &inst, &base));
    }

    #[test]
    fn symmetry_needs_a_flat_carrier() {
        let s = sig();
        make_core_symmetry(&s, &[], &a()).unwrap();
        let e = make_symmetry_at(&s, &[], &a()).unwrap_err();
        assert_eq!(e.kind, ErrorKind::PolarityViolation);
    }

    #[test]
    fn id_flat_is_reflexive() {
        let mut s = sig();
        crate::checker::declare_sym(&mut s, "c", vec![], "A".into()).unwrap();
        let c = Term::Sym("c".into(), vec![]);
        let ty = make_id_flat(&s, &Context::empty(), &a(), &c, &c).unwrap();
        let af = normalize_type(&s, &a().flat());
        let w = Term::refl(af, Term::inj_plus(a(), c));
        crate::checker::check(&s, &Context::empty(), &w, &ty).unwrap();
    }

    #[test]
    fn unit_laws_check() {
        let s = sig();
        make_unit_law(&s, &[], &a(), UnitSide::Left).unwrap();
        make_unit_law(&s, &[], &a(), UnitSide::Right).unwrap();
    }

    #[test]
    fn transport_with_constant_motive_returns_base() {
        let mut s = sig();
        crate::checker::declare_type(&mut s, "B").unwrap();
        crate::checker::declare_sym(&mut s, "b0", vec![], "B".into()).unwrap();
        let b0 = Term::Sym("b0".into(), vec![]);
        let d = make_transport_plus(&s, &[], &a(), &Type::base("B"), &b0).unwrap();
        let a1 = weaken_neutral(&a(), 1, 0);
        let inst = subst_polar(
            &d.term,
            &[Term::coe_plus(a1.clone(), Term::VarN(0)), Term::refl(a1, Term::VarN(0))],
        );
        assert_eq!(normalize_term(&s, &inst), b0);
    }
}
