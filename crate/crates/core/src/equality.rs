//! Normalization and definitional equality.
//!
//! Types are put in head-modality form: every `Neg`/`Flat` wrapper is pushed
//! into the modality slot of a `Base` or `Hom` head. Terms are normalized
//! innermost first with these rewrites, repeated until none applies:
//!
//! * `coe+_A (inj+_A t) ~> t` and `coe-_A (inj-_A s) ~> s`
//! * `inj+_A (coe+_A e) ~> e` and `inj-_A (coe-_A e) ~> e` for polar-closed `e`
//! * `J` applied to `refl_A e, refl_A e` at anchor `e` reduces to its base at `e`
//! * a defined constant unfolds to its instantiated body

use crate::signature::Signature;
use crate::syntax::{
    instantiate_neutral, subst_neutral, subst_polar, JElim, Modality, Syntax, Term, Type,
};

/// Composition in the modality monoid; see [`Modality::compose`].
pub fn mod_compose(outer: Modality, inner: Modality) -> Modality {
    outer.compose(inner)
}

/// Counts rewrite steps while normalizing.
pub struct Normalizer<'s> {
    sig: &'s Signature,
    pub steps: usize,
}

impl<'s> Normalizer<'s> {
    pub fn new(sig: &'s Signature) -> Self {
        Normalizer { sig, steps: 0 }
    }

    pub fn ty(&mut self, t: &Type) -> Type {
        self.ty_under(t, Modality::ID)
    }

    fn ty_under(&mut self, t: &Type, outer: Modality) -> Type {
        match t {
            Type::Base { name, m } => Type::Base {
                name: name.clone(),
                m: outer.compose(*m),
            },
            Type::Neg(a) => self.ty_under(a, outer.compose(Modality::NEG)),
            Type::Flat(a) => self.ty_under(a, outer.compose(Modality::FLAT)),
            Type::Hom { carrier, dom, cod, m } => {
                let m = outer.compose(*m);
                let mut carrier = self.ty(carrier);
                let mut dom = self.term(dom);
                let mut cod = self.term(cod);
                if head_modality(&carrier).neg {
                    set_head_neg(&mut carrier, false);
                    std::mem::swap(&mut dom, &mut cod);
                }
                Type::Hom {
                    carrier: Box::new(carrier),
                    dom: Box::new(dom),
                    cod: Box::new(cod),
                    m: Modality { flat: false, neg: m.neg },
                }
            }
        }
    }

    pub fn term(&mut self, t: &Term) -> Term {
        match t {
            Term::VarN(_) | Term::VarP(_) => t.clone(),
            Term::InjPlus(a, x) => {
                let a = self.ty(a);
                let x = self.term(x);
                match x {
                    Term::CoePlus(b, e) if *b == a && e.is_polar_closed() => {
                        self.steps += 1;
                        *e
                    }
                    x => Term::InjPlus(Box::new(a), Box::new(x)),
                }
            }
            Term::InjMinus(a, x) => {
                let a = self.ty(a);
                let x = self.term(x);
                match x {
                    Term::CoeMinus(b, e) if *b == a && e.is_polar_closed() => {
                        self.steps += 1;
                        *e
                    }
                    x => Term::InjMinus(Box::new(a), Box::new(x)),
                }
            }
            Term::CoePlus(a, x) => {
                let a = self.ty(a);
                let x = self.term(x);
                match x {
                    Term::InjPlus(b, t) if *b == a => {
                        self.steps += 1;
                        *t
                    }
                    x => Term::CoePlus(Box::new(a), Box::new(x)),
                }
            }
            Term::CoeMinus(a, x) => {
                let a = self.ty(a);
                let x = self.term(x);
                match x {
                    Term::InjMinus(b, s) if *b == a => {
                        self.steps += 1;
                        *s
                    }
                    x => Term::CoeMinus(Box::new(a), Box::new(x)),
                }
            }
            Term::Refl(a, x) => Term::refl(self.ty(a), self.term(x)),
            Term::J(j) => {
                let carrier = self.ty(&j.carrier);
                let motive = self.ty(&j.motive);
                let base = self.term(&j.base);
                let anchor = self.term(&j.anchor);
                let args = [
                    self.term(&j.args[0]),
                    self.term(&j.args[1]),
                    self.term(&j.args[2]),
                    self.term(&j.args[3]),
                ];
                if is_refl_at(&args[2], &carrier, &anchor) && is_refl_at(&args[3], &carrier, &anchor) {
                    self.steps += 1;
                    let r = subst_neutral(&base, 0, &anchor);
                    return self.term(&r);
                }
                Term::J(Box::new(JElim {
                    carrier,
                    motive,
                    base,
                    anchor,
                    args,
                }))
            }
            Term::Uhp(p, q) => Term::uhp(self.term(p), self.term(q)),
            Term::Fwd(x) => Term::Fwd(Box::new(self.term(x))),
            Term::Back(x) => Term::Back(Box::new(self.term(x))),
            Term::Sym(f, args) => Term::Sym(f.clone(), args.iter().map(|a| self.term(a)).collect()),
            Term::Const(c, ns, ps) => {
                let ns: Vec<Term> = ns.iter().map(|a| self.term(a)).collect();
                let ps: Vec<Term> = ps.iter().map(|a| self.term(a)).collect();
                match self.sig.def_body(c) {
                    Some(body) => {
                        self.steps += 1;
                        let r = subst_polar(&instantiate_neutral(body, &ns), &ps);
                        self.term(&r)
                    }
                    None => Term::Const(c.clone(), ns, ps),
                }
            }
        }
    }
}

fn is_refl_at(t: &Term, carrier: &Type, anchor: &Term) -> bool {
    matches!(t, Term::Refl(a, e) if **a == *carrier && **e == *anchor)
}

/// Head modality of a normalized type.
pub fn head_modality(t: &Type) -> Modality {
    match t {
        Type::Base { m, .. } | Type::Hom { m, .. } => *m,
        Type::Neg(a) => head_modality(a).compose(Modality::NEG),
        Type::Flat(a) => head_modality(a).compose(Modality::FLAT),
    }
}

fn set_head_neg(t: &mut Type, neg: bool) {
    match t {
        Type::Base { m, .. } | Type::Hom { m, .. } => m.neg = neg,
        _ => unreachable!("set_head_neg on unnormalized type"),
    }
}

/// Whether `t` (normalized) admits neutral use: flat types and hom types.
pub fn is_flat(t: &Type) -> bool {
    matches!(t, Type::Hom { .. }) || head_modality(t).flat
}

/// Removes flat from a normalized base head; homs are returned unchanged.
pub fn strip_flat(t: &Type) -> Type {
    match t {
        Type::Base { name, m } => Type::Base {
            name: name.clone(),
            m: Modality { flat: false, neg: m.neg },
        },
        other => other.clone(),
    }
}

/// Applies a modality to a type and normalizes the head.
pub fn apply_modality(m: Modality, t: &Type) -> Type {
    let mut r = t.clone();
    if m.neg {
        r = r.neg();
    }
    if m.flat {
        r = r.flat();
    }
    push_head(&r)
}

fn push_head(t: &Type) -> Type {
    fn go(t: &Type, outer: Modality) -> Type {
        match t {
            Type::Base { name, m } => Type::Base {
                name: name.clone(),
                m: outer.compose(*m),
            },
            Type::Neg(a) => go(a, outer.compose(Modality::NEG)),
            Type::Flat(a) => go(a, outer.compose(Modality::FLAT)),
            Type::Hom { carrier, dom, cod, m } => {
                let m = outer.compose(*m);
                Type::Hom {
                    carrier: carrier.clone(),
                    dom: dom.clone(),
                    cod: cod.clone(),
                    m: Modality { flat: false, neg: m.neg },
                }
            }
        }
    }
    go(t, Modality::ID)
}

pub fn normalize_type(sig: &Signature, t: &Type) -> Type {
    Normalizer::new(sig).ty(t)
}

pub fn normalize_term(sig: &Signature, t: &Term) -> Term {
    Normalizer::new(sig).term(t)
}

/// Normal form together with the number of rewrite steps taken.
pub fn normalize_term_counted(sig: &Signature, t: &Term) -> (Term, usize) {
    let mut n = Normalizer::new(sig);
    let r = n.term(t);
    (r, n.steps)
}

pub fn type_equal(sig: &Signature, a: &Type, b: &Type) -> bool {
    a == b || normalize_type(sig, a) == normalize_type(sig, b)
}

pub fn term_equal(sig: &Signature, a: &Term, b: &Term) -> bool {
    a == b || normalize_term(sig, a) == normalize_term(sig, b)
}
