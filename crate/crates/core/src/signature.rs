//! Global declarations: base types, function symbols, axioms and definitions.

use indexmap::{IndexMap, IndexSet};

use crate::syntax::{Term, Type};

/// A first-order symbol `f : (A1, .., An) -> B` over base types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymDecl {
    pub args: Vec<String>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstDecl {
    /// `[neutral] ⊢ c : ty`, with an empty polar zone.
    Axiom { neutral: Vec<Type>, ty: Type },
    /// `[neutral] (polar) ⊢ c := body : ty`; unfolds during normalization.
    Def {
        neutral: Vec<Type>,
        polar: Vec<Type>,
        ty: Type,
        body: Term,
    },
}

impl ConstDecl {
    pub fn neutral(&self) -> &[Type] {
        match self {
            ConstDecl::Axiom { neutral, .. } | ConstDecl::Def { neutral, .. } => neutral,
        }
    }

    pub fn polar(&self) -> &[Type] {
        match self {
            ConstDecl::Axiom { .. } => &[],
            ConstDecl::Def { polar, .. } => polar,
        }
    }

    pub fn ty(&self) -> &Type {
        match self {
            ConstDecl::Axiom { ty, .. } | ConstDecl::Def { ty, .. } => ty,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Signature {
    pub types: IndexSet<String>,
    pub syms: IndexMap<String, SymDecl>,
    pub consts: IndexMap<String, ConstDecl>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.types.contains(name) || self.syms.contains_key(name) || self.consts.contains_key(name)
    }

    pub fn def_body(&self, name: &str) -> Option<&Term> {
        match self.consts.get(name) {
            Some(ConstDecl::Def { body, .. }) => Some(body),
            _ => None,
        }
    }
}
