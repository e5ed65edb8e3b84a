//! Random well-typed terms over a fixed signature and context, driven by a
//! byte string so that proptest can shrink them.

#![allow(dead_code)]

use dirtt_core::checker;
use dirtt_core::equality::{normalize_term, normalize_term_counted, normalize_type, type_equal};
use dirtt_core::signature::Signature;
use dirtt_core::syntax::{Context, JElim, Term, Type};

pub const MAX_DEPTH: usize = 8;

/// `type Expr; zero; succ; plus` and `[a, b :: Expr] (x : Expr^-, z : Expr, u : Hom Expr (x, z))`.
pub fn setup() -> (Signature, Context) {
    let mut sig = Signature::new();
    checker::declare_type(&mut sig, "Expr").unwrap();
    checker::declare_sym(&mut sig, "zero", vec![], "Expr".into()).unwrap();
    checker::declare_sym(&mut sig, "succ", vec!["Expr".into()], "Expr".into()).unwrap();
    checker::declare_sym(&mut sig, "plus", vec!["Expr".into(), "Expr".into()], "Expr".into()).unwrap();
    let e = expr();
    let ctx = Context::new(
        vec![e.clone(), e.clone()],
        vec![e.clone().neg(), e.clone(), Type::hom(e, Term::VarP(1), Term::VarP(0))],
    );
    (sig, ctx)
}

fn expr() -> Type {
    Type::base("Expr")
}

pub struct Gen<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Gen<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Gen { bytes, pos: 0 }
    }

    fn pick(&mut self, n: usize) -> usize {
        let b = self.bytes.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        b as usize % n
    }

    /// Any of the sorts below.
    pub fn any(&mut self) -> Term {
        match self.pick(5) {
            0 => self.pos_expr(MAX_DEPTH),
            1 => self.neg(MAX_DEPTH),
            2 => self.flat(MAX_DEPTH),
            _ => self.hom(MAX_DEPTH),
        }
    }

    /// `Expr`, free of polar variables.
    fn closed(&mut self, d: usize) -> Term {
        if d == 0 {
            return Term::Sym("zero".into(), vec![]);
        }
        match self.pick(5) {
            0 => Term::Sym("zero".into(), vec![]),
            1 => Term::Sym("succ".into(), vec![self.closed(d - 1)]),
            2 => Term::Sym("plus".into(), vec![self.closed(d - 1), self.closed(d - 1)]),
            3 => Term::coe_plus(expr(), self.flat(d - 1)),
            _ => Term::coe_plus(expr(), Term::inj_plus(expr(), self.closed(d - 1))),
        }
    }

    /// `Expr`, possibly mentioning `z`.
    fn pos_expr(&mut self, d: usize) -> Term {
        if d == 0 {
            return Term::VarP(1);
        }
        match self.pick(4) {
            0 => Term::VarP(1),
            1 => self.closed(d - 1),
            2 => Term::Sym("succ".into(), vec![self.pos_expr(d - 1)]),
            _ => Term::Sym("plus".into(), vec![self.pos_expr(d - 1), self.closed(d - 1)]),
        }
    }

    /// `Expr^b`, free of polar variables.
    fn flat(&mut self, d: usize) -> Term {
        if d == 0 {
            return Term::VarN(self.pick(2));
        }
        match self.pick(5) {
            0 => Term::VarN(self.pick(2)),
            1 => Term::inj_plus(expr(), self.closed(d - 1)),
            2 => Term::inj_minus(expr(), self.neg_closed(d - 1)),
            3 => Term::inj_plus(expr(), Term::coe_plus(expr(), self.flat(d - 1))),
            _ => Term::inj_minus(expr(), Term::coe_minus(expr(), self.flat(d - 1))),
        }
    }

    /// `Expr^-`, free of polar variables.
    fn neg_closed(&mut self, d: usize) -> Term {
        if d == 0 {
            return Term::coe_minus(expr(), Term::VarN(0));
        }
        match self.pick(2) {
            0 => Term::coe_minus(expr(), self.flat(d - 1)),
            _ => Term::coe_minus(expr(), Term::inj_minus(expr(), self.neg_closed(d - 1))),
        }
    }

    fn neg(&mut self, d: usize) -> Term {
        match self.pick(2) {
            0 => Term::VarP(2),
            _ => self.neg_closed(d),
        }
    }

    /// Some hom-term; its type is left to the checker.
    fn hom(&mut self, d: usize) -> Term {
        if d == 0 {
            return Term::VarP(0);
        }
        match self.pick(6) {
            0 => Term::VarP(0),
            1 => Term::refl(expr(), self.flat(d - 1)),
            2 => {
                // a J-redex: composition at refl, refl
                let f = self.flat(d - 1);
                let refl = Term::refl(expr(), f.clone());
                Term::J(Box::new(JElim {
                    carrier: expr(),
                    motive: Type::hom(expr(), Term::VarP(3), Term::VarP(2)),
                    base: Term::refl(expr(), Term::VarN(0)),
                    anchor: f.clone(),
                    args: [
                        Term::coe_minus(expr(), f.clone()),
                        Term::coe_plus(expr(), f),
                        refl.clone(),
                        refl,
                    ],
                }))
            }
            3 => {
                let h = self.hom(d - 1);
                Term::uhp(h.clone(), h)
            }
            4 => {
                let fl = Type::base("Expr").flat();
                Term::Fwd(Box::new(Term::refl(fl, self.flat(d - 1))))
            }
            _ => {
                let fl = Type::base("Expr").flat();
                Term::Back(Box::new(Term::refl(fl, self.flat(d - 1))))
            }
        }
    }
}

/// Idempotence, subject reduction, determinism and the step bound for one
/// generated term.
pub fn check_normalization(sig: &Signature, ctx: &Context, t: &Term) -> Result<(), String> {
    let ty = checker::infer(sig, ctx, t).map_err(|e| format!("generated an ill-typed term: {e}"))?;
    let (nf, steps) = normalize_term_counted(sig, t);
    if normalize_term(sig, &nf) != nf {
        return Err("normalization is not idempotent".into());
    }
    if normalize_term(sig, t) != nf {
        return Err("normalization is not deterministic".into());
    }
    let nty = checker::infer(sig, ctx, &nf).map_err(|e| format!("normal form is ill-typed: {e}"))?;
    if !type_equal(sig, &ty, &nty) {
        return Err(format!("type changed: {:?} vs {:?}", normalize_type(sig, &ty), normalize_type(sig, &nty)));
    }
    if steps > 4 * t.node_count() {
        return Err(format!("{steps} steps for a term of size {}", t.node_count()));
    }
    Ok(())
}
