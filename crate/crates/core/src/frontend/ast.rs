//! Surface syntax with named variables.

use crate::checker::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STy {
    pub kind: STyKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum STyKind {
    Name(String),
    Neg(Box<STy>),
    Flat(Box<STy>),
    Hom(Box<STy>, Box<STm>, Box<STm>),
    /// Hom at a flat carrier, or the two-sided equality at a non-flat one.
    Id(Box<STy>, Box<STm>, Box<STm>),
    IdFlat(Box<STy>, Box<STm>, Box<STm>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coercion {
    InjPlus,
    InjMinus,
    CoePlus,
    CoeMinus,
    Refl,
}

impl Coercion {
    pub fn keyword(self) -> &'static str {
        match self {
            Coercion::InjPlus => "inj+",
            Coercion::InjMinus => "inj-",
            Coercion::CoePlus => "coe+",
            Coercion::CoeMinus => "coe-",
            Coercion::Refl => "refl",
        }
    }
}

/// Eliminators written against the telescope already in scope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TeleElim {
    Both,
    Plus,
    Minus,
    TransportPlus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STm {
    pub kind: STmKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum STmKind {
    Name(String),
    Coerce(Coercion, Option<Box<STy>>, Box<STm>),
    Uhp(Box<STm>, Box<STm>),
    Fwd(Box<STm>),
    Back(Box<STm>),
    App(String, Vec<STm>),
    Inst(String, Vec<STm>, Vec<STm>),
    Tele(TeleElim, Box<STy>, Box<STm>),
    J(Box<SJ>),
    Compose(Box<STm>, Box<STm>),
    UnitL(Box<STm>),
    UnitR(Box<STm>),
    SymCore,
}

/// `J [A] {y, x, z, u, v. M ; m} (e; a, d, p, q)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SJ {
    pub carrier: STy,
    pub binders: [String; 5],
    pub motive: STy,
    pub base: STm,
    pub anchor: STm,
    pub args: [STm; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub name: String,
    pub ty: STy,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STele {
    pub neutral: Vec<Binder>,
    pub polar: Vec<Binder>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreorderSrc {
    pub name: String,
    pub elems: Vec<String>,
    pub le: Vec<Vec<bool>>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssignSrc {
    Type {
        name: String,
        preorder: String,
        span: Span,
    },
    Table {
        name: String,
        rows: Vec<(Vec<String>, String)>,
        span: Span,
    },
}

/// Contents of a model file or a `model NAME { .. }` block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelSrc {
    pub preorders: Vec<PreorderSrc>,
    pub assigns: Vec<AssignSrc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Type,
    Func { args: Vec<String>, result: String },
    Axiom { tele: STele, ty: STy },
    Def { tele: STele, ty: STy, body: STm },
    Check { tele: STele, ty: STy, body: STm },
    Refute { tele: STele, ty: STy, model: Option<String> },
    Model(ModelSrc),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub kind: DeclKind,
    pub span: Span,
}
