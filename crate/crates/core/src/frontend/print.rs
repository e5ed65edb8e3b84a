//! Resugaring printer. Output re-parses to the same core syntax when names
//! are resolved against the same environment.

use std::collections::HashSet;

use crate::syntax::{Modality, Term, Type};

/// Variable names, leftmost first, plus names that binders must avoid.
#[derive(Clone, Debug, Default)]
pub struct Names {
    pub neutral: Vec<String>,
    pub polar: Vec<String>,
    pub reserved: HashSet<String>,
}

impl Names {
    pub fn new(neutral: Vec<String>, polar: Vec<String>) -> Self {
        Names {
            neutral,
            polar,
            reserved: HashSet::new(),
        }
    }

    fn taken(&self, s: &str) -> bool {
        self.reserved.contains(s) || self.neutral.iter().any(|n| n == s) || self.polar.iter().any(|n| n == s)
    }

    /// `hint`, or `hint` with a numeric suffix, avoiding every visible name.
    pub fn fresh(&self, hint: &str, also: &[String]) -> String {
        let free = |s: &str| !self.taken(s) && !also.iter().any(|a| a == s) && !is_reserved_word(s);
        if free(hint) {
            return hint.to_string();
        }
        (1..).map(|k| format!("{hint}{k}")).find(|s| free(s)).unwrap()
    }
}

pub fn is_reserved_word(s: &str) -> bool {
    matches!(
        s,
        "Hom" | "Id" | "IdFlat" | "refl" | "fwd" | "back" | "UHP" | "J" | "compose" | "unitL" | "unitR"
            | "symCore" | "type" | "func" | "axiom" | "def" | "check" | "refute" | "model" | "in"
    )
}

pub struct Printer {
    /// Print coercion and refl carriers in brackets.
    pub annotate: bool,
}

impl Printer {
    pub fn ty(&self, t: &Type, env: &Names) -> String {
        match t {
            Type::Base { name, m } => format!("{name}{}", suffix(*m)),
            Type::Hom { carrier, dom, cod, m } => {
                let body = format!(
                    "Hom {} ({}, {})",
                    self.postfix(carrier, env),
                    self.tm(dom, env),
                    self.tm(cod, env)
                );
                if *m == Modality::ID {
                    body
                } else {
                    format!("({body}){}", suffix(*m))
                }
            }
            Type::Neg(a) => format!("{}^-", self.postfix(a, env)),
            Type::Flat(a) => format!("{}^b", self.postfix(a, env)),
        }
    }

    fn postfix(&self, t: &Type, env: &Names) -> String {
        match t {
            Type::Hom { m, .. } if *m == Modality::ID => format!("({})", self.ty(t, env)),
            _ => self.ty(t, env),
        }
    }

    pub fn tm(&self, t: &Term, env: &Names) -> String {
        match t {
            Term::VarN(i) => env
                .neutral
                .len()
                .checked_sub(i + 1)
                .map(|k| env.neutral[k].clone())
                .unwrap_or_else(|| format!("#n{i}")),
            Term::VarP(i) => env
                .polar
                .len()
                .checked_sub(i + 1)
                .map(|k| env.polar[k].clone())
                .unwrap_or_else(|| format!("#p{i}")),
            Term::InjPlus(a, x) => self.coercion("inj+", a, x, env),
            Term::InjMinus(a, x) => self.coercion("inj-", a, x, env),
            Term::CoePlus(a, x) => self.coercion("coe+", a, x, env),
            Term::CoeMinus(a, x) => self.coercion("coe-", a, x, env),
            Term::Refl(a, x) => self.coercion("refl", a, x, env),
            Term::Uhp(p, q) => format!("UHP({}, {})", self.tm(p, env), self.tm(q, env)),
            Term::Fwd(x) => format!("fwd {}", self.tm(x, env)),
            Term::Back(x) => format!("back {}", self.tm(x, env)),
            Term::Sym(f, args) => {
                if args.is_empty() {
                    f.clone()
                } else {
                    format!("{f}({})", self.list(args, env))
                }
            }
            Term::Const(c, ns, ps) => {
                if ns.is_empty() && ps.is_empty() {
                    c.clone()
                } else if ps.is_empty() {
                    format!("{c}@({})", self.list(ns, env))
                } else {
                    format!("{c}@({})({})", self.list(ns, env), self.list(ps, env))
                }
            }
            Term::J(j) => {
                let carrier = self.ty(&j.carrier, &Names {
                    polar: vec![],
                    ..env.clone()
                });
                let mut names: Vec<String> = Vec::new();
                for hint in ["y", "x", "z", "u", "v"] {
                    let n = env.fresh(hint, &names);
                    names.push(n);
                }
                let mut inner = env.clone();
                inner.neutral.push(names[0].clone());
                inner.polar = names[1..].to_vec();
                let motive = self.ty(&j.motive, &inner);
                inner.polar.clear();
                let base = self.tm(&j.base, &inner);
                format!(
                    "J[{carrier}] {{{}. {motive}; {base}}} ({}; {})",
                    names.join(", "),
                    self.tm(&j.anchor, env),
                    self.list(&j.args, env)
                )
            }
        }
    }

    fn coercion(&self, kw: &str, a: &Type, x: &Term, env: &Names) -> String {
        if self.annotate {
            let closed = Names {
                polar: vec![],
                ..env.clone()
            };
            let env_a = if matches!(kw, "inj+" | "inj-" | "refl") { &closed } else { env };
            format!("{kw}[{}] {}", self.ty(a, env_a), self.tm(x, env))
        } else {
            format!("{kw} {}", self.tm(x, env))
        }
    }

    fn list(&self, ts: &[Term], env: &Names) -> String {
        ts.iter().map(|t| self.tm(t, env)).collect::<Vec<_>>().join(", ")
    }
}

fn suffix(m: Modality) -> &'static str {
    match (m.flat, m.neg) {
        (false, false) => "",
        (false, true) => "^-",
        (true, false) => "^b",
        (true, true) => "^b^-",
    }
}

pub fn type_to_string(t: &Type, env: &Names) -> String {
    Printer { annotate: false }.ty(t, env)
}

pub fn term_to_string(t: &Term, env: &Names) -> String {
    Printer { annotate: false }.tm(t, env)
}

/// For diagnostics without a naming environment.
pub fn type_to_string_anon(t: &Type) -> String {
    type_to_string(t, &Names::default())
}

pub fn term_to_string_anon(t: &Term) -> String {
    term_to_string(t, &Names::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variables_use_environment_names() {
        let env = Names::new(vec!["a".into()], vec![]);
        assert_eq!(term_to_string(&Term::VarN(0), &env), "a");
    }

    #[test]
    fn canonical_modalities() {
        let t = Type::Base {
            name: "A".into(),
            m: Modality::FLAT_NEG,
        };
        assert_eq!(type_to_string_anon(&t), "A^b^-");
    }

    #[test]
    fn hom_with_modality_is_parenthesized() {
        let h = Type::Hom {
            carrier: Box::new(Type::base("A")),
            dom: Box::new(Term::VarP(1)),
            cod: Box::new(Term::VarP(0)),
            m: Modality::NEG,
        };
        let env = Names::new(vec![], vec!["x".into(), "z".into()]);
        assert_eq!(type_to_string(&h, &env), "(Hom A (x, z))^-");
    }
}
