//! One positive and (where a premise can fail) one negative surface program
//! per typing rule. Shared by the rule tests and the acceptance report.

#![allow(dead_code)]

use dirtt_core::frontend;

pub struct Case {
    pub rule: &'static str,
    pub src: &'static str,
    /// `None`: every declaration checks. `Some(kind)`: the first failure
    /// has this error kind.
    pub expect: Option<&'static str>,
}

const fn pass(rule: &'static str, src: &'static str) -> Case {
    Case { rule, src, expect: None }
}

const fn fail(rule: &'static str, src: &'static str, kind: &'static str) -> Case {
    Case { rule, src, expect: Some(kind) }
}

pub const CASES: &[Case] = &[
    pass("empty context", "type A; func c0 : A; axiom c : Hom A (coe- inj+ c0, c0);"),
    fail("empty context", "type A; check t : A := x;", "UnboundVariable"),
    pass("extend polar", "type A; check t (x : A, y : A^-) : A := x;"),
    fail("extend polar", "type A; check t (x : C) : A := x;", "UnboundVariable"),
    pass("extend neutral", "type A; check t [a :: A, b :: A^-] : A^b := a;"),
    fail("extend neutral", "type A; check t [a :: C] : A := coe+ a;", "UnboundVariable"),
    pass("type negation", "type A; check t (x : A^-) : A^- := x;"),
    fail("type negation", "type A; check t (x : A^-) : A := x;", "TypeMismatch"),
    pass("negation involution", "type A; check t (x : (A^-)^-) : A := x;"),
    fail("negation involution", "type A; check t (x : ((A^-)^-)^-) : A := x;", "TypeMismatch"),
    pass("core type", "type A; check t (x : A^b) : A^b := x;"),
    fail("core type", "type A; check t (x : A^b) : A := x;", "TypeMismatch"),
    pass("core variable", "type A; check t [a :: A] (x : A) : A^b := a;"),
    fail("core variable", "type A; check t [a :: A] (x : A) : A^b := x;", "PolarityViolation"),
    pass("core negation", "type A; check t (x : (A^-)^b) : (A^b)^- := x;"),
    fail("core negation", "type A; check t (x : (A^-)^b) : A^- := x;", "TypeMismatch"),
    pass("core idempotence", "type A; check t (x : (A^b)^b) : A^b := x;"),
    fail("core idempotence", "type A; check t (x : (A^b)^b) : A := x;", "TypeMismatch"),
    pass("core intro plus", "type A; check t [a :: A] (x : A) : A^b := inj+ coe+ a;"),
    fail("core intro plus", "type A; check t [a :: A] (x : A) : A^b := inj+ x;", "NotPolarClosed"),
    pass("core intro minus", "type A; check t [a :: A] (x : A) : A^b := inj- coe- a;"),
    fail("core intro minus", "type A; check t (x : A^-) : A^b := inj- x;", "NotPolarClosed"),
    pass("core elim plus", "type A; check t (x : A^b) : A := coe+ x;"),
    fail("core elim plus", "type A; check t (x : A) : A := coe+ x;", "PolarityViolation"),
    pass("core elim minus", "type A; check t (x : A^b) : A^- := coe- x;"),
    fail("core elim minus", "type A; check t (x : A) : A^- := coe- x;", "PolarityViolation"),
    pass(
        "core beta plus",
        "type A; check t [a :: A] : Hom A (coe- a, coe+ inj+ coe+ a) := refl a;",
    ),
    fail("core beta plus", "type A; check t (x : A) : A := coe+ inj+ x;", "NotPolarClosed"),
    pass(
        "core beta minus",
        "type A; check t [a :: A] : Hom A (coe- inj- coe- a, coe+ a) := refl a;",
    ),
    fail("core beta minus", "type A; check t (x : A^-) : A^- := coe- inj- x;", "NotPolarClosed"),
    pass(
        "core eta plus",
        "type A; check t [a :: A] : Hom A (coe- inj+ coe+ a, coe+ a) := refl a;",
    ),
    fail(
        "core eta plus",
        "type A; check t [a :: A, b :: A] : Hom A (coe- inj+ coe+ a, coe+ b) := refl a;",
        "TypeMismatch",
    ),
    pass(
        "core eta minus",
        "type A; check t [a :: A] : Hom A (coe- a, coe+ inj- coe- a) := refl a;",
    ),
    fail(
        "core eta minus",
        "type A; check t [a :: A, b :: A] : Hom A (coe- a, coe+ inj- coe- b) := refl a;",
        "TypeMismatch",
    ),
    pass(
        "core substitution",
        "type A; func c : A; axiom r [a :: A] : Hom A (coe- a, coe+ a);
         check t : Hom A (coe- inj+ c, c) := r@(inj+ c);",
    ),
    fail(
        "core substitution",
        "type A; func c : A; axiom r [a :: A] : Hom A (coe- a, coe+ a);
         check t (x : A) : Hom A (coe- inj+ c, c) := r@(x);",
        "PolarityViolation",
    ),
    pass("hom formation", "type A; check t (x : A^-, z : A, u : Hom A (x, z)) : Hom A (x, z) := u;"),
    fail("hom formation", "type A; check t (x : A, z : A, u : Hom A (x, z)) : A := z;", "TypeMismatch"),
    pass("hom intro", "type A; check t [a :: A] : Hom A (coe- a, coe+ a) := refl a;"),
    fail("hom intro", "type A; check t (x : A^b) : Hom A (coe- x, coe+ x) := refl x;", "NotPolarClosed"),
    pass(
        "hom elim",
        "type A;
         def comp [y :: A] (x : A^-, z : A, u : Hom A (x, coe+ y), v : Hom A (coe- y, z)) : Hom A (x, z) :=
           J {Hom A (x, z); refl y};",
    ),
    fail(
        "hom elim",
        "type A;
         def comp [y :: A] (x : A^-, z : A, u : Hom A (x, coe+ y)) : Hom A (x, z) :=
           J {Hom A (x, z); refl y};",
        "MalformedJTelescope",
    ),
    pass(
        "hom beta",
        "type A;
         def comp [y :: A] (x : A^-, z : A, u : Hom A (x, coe+ y), v : Hom A (coe- y, z)) : Hom A (x, z) :=
           J {Hom A (x, z); refl y};
         check beta [a :: A] : Id (Hom A (coe- a, coe+ a)) (comp@(a)(coe- a, coe+ a, refl a, refl a), refl a) :=
           refl refl a;",
    ),
    fail(
        "hom beta",
        "type A;
         def comp [y :: A] (x : A^-, z : A, u : Hom A (x, coe+ y), v : Hom A (coe- y, z)) : Hom A (x, z) :=
           J {Hom A (x, z); refl y};
         check nobeta [a :: A, b :: A, p :: Hom A (coe- a, coe+ b)] :
           Id (Hom A (coe- a, coe+ b)) (comp@(b)(coe- a, coe+ b, p, refl b), p) := refl p;",
        "TypeMismatch",
    ),
    pass(
        "hom neutrality",
        "type A; check t (x : A^-, z : A, u : Hom A (x, z)) : (Hom A (x, z))^b := u;",
    ),
    fail("hom neutrality", "type A; check t (x : A) : A^b := x;", "PolarityViolation"),
    pass(
        "uniqueness of homs",
        "type A; check t (x : A^-, z : A, p : Hom A (x, z), q : Hom A (x, z)) : Id (Hom A (x, z)) (p, q) := UHP(p, q);",
    ),
    fail(
        "uniqueness of homs",
        "type A; check t (x : A^-, z : A, p : Hom A (x, z), q : Hom A (x, x)) : A := UHP(p, q);",
        "TypeMismatch",
    ),
    pass(
        "opposite hom",
        "type A; check t (x : A^-, z : A, u : Hom A (x, z)) : Hom A^- (z, x) := u;",
    ),
    fail(
        "opposite hom",
        "type A; check t (x : A^-, z : A, u : Hom A (x, z)) : Hom A^- (x, z) := u;",
        "TypeMismatch",
    ),
    pass(
        "core hom forward",
        "type A; check t (x : (A^b)^-, z : A^b, i : Hom A^b (x, z)) : Hom A (coe+ x, coe+ z) := fwd i;",
    ),
    fail(
        "core hom forward",
        "type A; check t (x : A^-, z : A, i : Hom A (x, z)) : Hom A (x, z) := fwd i;",
        "PolarityViolation",
    ),
    pass(
        "core hom backward",
        "type A; check t (x : (A^b)^-, z : A^b, i : Hom A^b (x, z)) : Hom A (coe- z, coe- x) := back i;",
    ),
    fail(
        "core hom backward",
        "type A; check t (x : A^-, z : A, i : Hom A (x, z)) : Hom A (x, z) := back i;",
        "PolarityViolation",
    ),
];

/// Runs a case; the error describes the mismatch.
pub fn run(c: &Case) -> Result<(), String> {
    let p = frontend::load(c.src).map_err(|e| format!("parse error {e}"))?;
    let first = p.items.iter().find_map(|i| i.outcome.as_ref().err());
    match (c.expect, first) {
        (None, None) => Ok(()),
        (None, Some(e)) => Err(format!("expected success, got {e}")),
        (Some(k), None) => Err(format!("expected {k}, everything checked")),
        (Some(k), Some(e)) => {
            let got = format!("{:?}", e.kind);
            if got != k {
                return Err(format!("expected {k}, got {e}"));
            }
            if e.span.is_none() {
                return Err("error has no source span".into());
            }
            Ok(())
        }
    }
}
