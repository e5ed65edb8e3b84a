//! Checks on the derived constructions shared with the acceptance report.

#![allow(dead_code)]

use dirtt_core::checker::{self, ErrorKind};
use dirtt_core::derived::{core_symmetry_parts, derive_one_sided, make_core_symmetry, make_symmetry_at, Side};
use dirtt_core::equality::{normalize_term, normalize_type, term_equal};
use dirtt_core::signature::Signature;
use dirtt_core::syntax::{subst_polar, weaken_neutral, Term, Type};

pub fn sig_with(types: &[&str]) -> Signature {
    let mut s = Signature::new();
    for t in types {
        checker::declare_type(&mut s, t).unwrap();
    }
    s
}

/// Both one-sided eliminators check at a directed carrier, and at
/// `(refl, refl)` they compute to their base.
pub fn one_sided_beta(sig: &Signature, a: &Type) -> Result<(), String> {
    let a = normalize_type(sig, a);
    let a1 = weaken_neutral(&a, 1, 0);
    let y = Term::VarN(0);
    let refl = Term::refl(a1.clone(), y.clone());
    let cases = [
        (
            Side::Plus,
            Type::hom(a1.clone(), Term::coe_minus(a1.clone(), y.clone()), Term::VarP(1)),
            [Term::coe_plus(a1.clone(), y.clone()), refl.clone()],
        ),
        (
            Side::Minus,
            Type::hom(a1.clone(), Term::VarP(1), Term::coe_plus(a1.clone(), y.clone())),
            [Term::coe_minus(a1.clone(), y.clone()), refl.clone()],
        ),
    ];
    for (side, motive, at_refl) in cases {
        let d = derive_one_sided(sig, &[], &a, &motive, &refl, side).map_err(|e| format!("{side:?}: {e}"))?;
        let inst = subst_polar(&d.term, &at_refl);
        if !term_equal(sig, &inst, &refl) {
            return Err(format!("{side:?}: the instance at refl does not compute to the base"));
        }
    }
    Ok(())
}

/// Core symmetry at `B♭` checks and its instance at refl is a refl.
pub fn core_symmetry(sig: &Signature, b: &Type) -> Result<(), String> {
    let d = make_core_symmetry(sig, &[], b).map_err(|e| e.to_string())?;
    let a = normalize_type(sig, &b.clone().flat());
    let a1 = weaken_neutral(&a, 1, 0);
    let y = Term::VarN(0);
    let inst = subst_polar(&d.term, &[Term::coe_plus(a1.clone(), y.clone()), Term::refl(a1, y)]);
    let (_, base) = core_symmetry_parts(&a);
    let nf = normalize_term(sig, &inst);
    if nf != normalize_term(sig, &base) || !matches!(nf, Term::Refl(..)) {
        return Err("instance at refl is not refl".into());
    }
    Ok(())
}

/// Symmetry at a directed carrier is rejected for polarity reasons, for
/// both orientations of the motive.
pub fn symmetry_motives_rejected(sig: &Signature, a: &Type) -> Result<(), String> {
    let e = make_symmetry_at(sig, &[], a).err().ok_or("symmetry checked at a directed carrier")?;
    if e.kind != ErrorKind::PolarityViolation {
        return Err(format!("first motive: {e}"));
    }
    let a = normalize_type(sig, a);
    let a1 = weaken_neutral(&a, 1, 0);
    let y = Term::VarN(0);
    let motive = Type::hom(
        a1.clone(),
        Term::coe_minus(a1.clone(), y.clone()),
        Term::coe_minus(a1.clone().neg(), Term::VarP(1)),
    );
    let e = derive_one_sided(sig, &[], &a, &motive, &Term::refl(a1, y), Side::Minus)
        .err()
        .ok_or("mirrored symmetry checked at a directed carrier")?;
    if e.kind != ErrorKind::PolarityViolation {
        return Err(format!("second motive: {e}"));
    }
    Ok(())
}
