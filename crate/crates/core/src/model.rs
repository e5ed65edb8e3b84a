//! Finite setoid–preorder semantics.
//!
//! Types denote families of finite preorders over a finite semantic context.
//! Every family reindexes by the identity on element ids: base types have
//! constant fibers and hom-types have subsingleton fibers, so a morphism of
//! contexts can only move an element to the same id or fail to land. Terms
//! denote sections, stored by their object part only.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;

use crate::equality::normalize_type;
use crate::frontend::ast::{AssignSrc, ModelSrc};
use crate::signature::{ConstDecl, Signature};
use crate::syntax::{Context, Term, Type};

pub const DEFAULT_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPreorder {
    pub names: Vec<String>,
    pub le: Vec<Vec<bool>>,
}

/// A preorder whose relation is symmetric.
pub type FinSetoid = FinPreorder;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreorderViolation {
    Shape,
    Reflexivity(usize),
    Transitivity(usize, usize, usize),
}

impl fmt::Display for PreorderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreorderViolation::Shape => write!(f, "relation matrix is not square"),
            PreorderViolation::Reflexivity(i) => write!(f, "reflexivity fails at {i}"),
            PreorderViolation::Transitivity(i, j, k) => {
                write!(f, "transitivity fails: {i} <= {j} and {j} <= {k} but not {i} <= {k}")
            }
        }
    }
}

impl FinPreorder {
    pub fn new(le: Vec<Vec<bool>>) -> Self {
        let names = (0..le.len()).map(|i| i.to_string()).collect();
        FinPreorder { names, le }
    }

    pub fn named(names: Vec<String>, le: Vec<Vec<bool>>) -> Self {
        FinPreorder { names, le }
    }

    pub fn size(&self) -> usize {
        self.le.len()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn discrete(n: usize) -> Self {
        Self::new((0..n).map(|i| (0..n).map(|j| i == j).collect()).collect())
    }

    pub fn codiscrete(n: usize) -> Self {
        Self::new(vec![vec![true; n]; n])
    }

    pub fn chain(n: usize) -> Self {
        Self::new((0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect())
    }

    /// `{*}`.
    pub fn point() -> Self {
        Self::named(vec!["*".into()], vec![vec![true]])
    }

    pub fn empty() -> Self {
        Self::named(vec![], vec![])
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.le[i][j] == self.le[j][i]))
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub fn validate_preorder(p: &FinPreorder) -> Result<(), PreorderViolation> {
    let n = p.size();
    if p.le.iter().any(|r| r.len() != n) || p.names.len() != n {
        return Err(PreorderViolation::Shape);
    }
    for i in 0..n {
        if !p.le[i][i] {
            return Err(PreorderViolation::Reflexivity(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !p.le[i][j] {
                continue;
            }
            for k in 0..n {
                if p.le[j][k] && !p.le[i][k] {
                    return Err(PreorderViolation::Transitivity(i, j, k));
                }
            }
        }
    }
    Ok(())
}

pub fn opposite(p: &FinPreorder) -> FinPreorder {
    let n = p.size();
    FinPreorder {
        names: p.names.clone(),
        le: (0..n).map(|i| (0..n).map(|j| p.le[j][i]).collect()).collect(),
    }
}

pub fn core(p: &FinPreorder) -> FinSetoid {
    let n = p.size();
    FinPreorder {
        names: p.names.clone(),
        le: (0..n).map(|i| (0..n).map(|j| p.le[i][j] && p.le[j][i]).collect()).collect(),
    }
}

// ---------------------------------------------------------------------------
// Errors

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SemError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("size limit exceeded: {needed} > {limit}")]
    SizeLimitExceeded { limit: u64, needed: u64 },
    #[error("ill-scoped input: {0}")]
    Internal(String),
}

pub type SemResult<T> = Result<T, SemError>;

fn invalid<T>(msg: impl Into<String>) -> SemResult<T> {
    Err(SemError::InvalidModel(msg.into()))
}

// ---------------------------------------------------------------------------
// Model assignments

/// Interpretation of a table-driven symbol or axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub rows: HashMap<Vec<usize>, usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelAssignment {
    pub types: IndexMap<String, FinPreorder>,
    pub tables: IndexMap<String, Table>,
}

impl ModelAssignment {
    /// Resolves a parsed model against a signature and validates it.
    pub fn from_src(sig: &Signature, src: &ModelSrc) -> SemResult<Self> {
        let mut pre: IndexMap<String, FinPreorder> = IndexMap::new();
        for p in &src.preorders {
            let fp = FinPreorder::named(p.elems.clone(), p.le.clone());
            validate_preorder(&fp).map_err(|v| {
                SemError::InvalidModel(format!("preorder `{}` at {}: {v}", p.name, p.span))
            })?;
            if pre.insert(p.name.clone(), fp).is_some() {
                return invalid(format!("preorder `{}` is defined twice", p.name));
            }
        }
        let mut m = ModelAssignment::default();
        for a in &src.assigns {
            if let AssignSrc::Type { name, preorder, span } = a {
                let Some(p) = pre.get(preorder) else {
                    return invalid(format!("{span}: unknown preorder `{preorder}`"));
                };
                // a model may cover several signatures
                if sig.types.contains(name) {
                    m.types.insert(name.clone(), p.clone());
                }
            }
        }
        for t in &sig.types {
            if !m.types.contains_key(t) {
                return invalid(format!("base type `{t}` has no assigned preorder"));
            }
        }
        for a in &src.assigns {
            let AssignSrc::Table { name, rows, span } = a else { continue };
            if !sig.syms.contains_key(name) && !sig.consts.contains_key(name) {
                continue;
            }
            let (arg_fibers, result) = m.table_shape(sig, name).map_err(|e| match e {
                SemError::InvalidModel(s) => SemError::InvalidModel(format!("{span}: {s}")),
                e => e,
            })?;
            let mut table = HashMap::new();
            for (args, r) in rows {
                if args.len() != arg_fibers.len() {
                    return invalid(format!("{span}: `{name}` takes {} arguments", arg_fibers.len()));
                }
                let mut key = Vec::new();
                for (a, p) in args.iter().zip(&arg_fibers) {
                    key.push(p.element(a).ok_or_else(|| {
                        SemError::InvalidModel(format!("{span}: `{a}` is not an element of the argument preorder"))
                    })?);
                }
                let v = result
                    .element(r)
                    .ok_or_else(|| SemError::InvalidModel(format!("{span}: `{r}` is not a result element")))?;
                if table.insert(key, v).is_some() {
                    return invalid(format!("{span}: duplicate row for `{name}`"));
                }
            }
            m.tables.insert(name.clone(), Table { rows: table });
        }
        m.validate(sig)?;
        Ok(m)
    }

    /// Argument and result preorders of a table-interpreted name.
    fn table_shape(&self, sig: &Signature, name: &str) -> SemResult<(Vec<FinPreorder>, FinPreorder)> {
        if let Some(s) = sig.syms.get(name) {
            let args = s.args.iter().map(|a| self.types[a].clone()).collect();
            return Ok((args, self.types[&s.result].clone()));
        }
        if let Some(ConstDecl::Axiom { neutral, ty }) = sig.consts.get(name) {
            // closed base-typed telescopes only
            let interp = Interp { sig, model: self };
            let empty = Env::default();
            let mut args = Vec::new();
            for t in neutral {
                args.push(core(&interp.fiber(t, &empty)?));
            }
            return Ok((args, interp.fiber(ty, &empty)?));
        }
        invalid(format!("`{name}` is not a function symbol or axiom"))
    }

    pub fn validate(&self, sig: &Signature) -> SemResult<()> {
        for (f, s) in &sig.syms {
            let Some(table) = self.tables.get(f) else {
                return invalid(format!("function symbol `{f}` has no table"));
            };
            let arg_ps: Vec<&FinPreorder> = s.args.iter().map(|a| &self.types[a]).collect();
            let res = &self.types[&s.result];
            let tuples = product(&arg_ps.iter().map(|p| p.size()).collect::<Vec<_>>());
            for t in &tuples {
                if !table.rows.contains_key(t) {
                    return invalid(format!("table for `{f}` is missing a row for {}", show_tuple(&arg_ps, t)));
                }
            }
            for t in &tuples {
                for u in &tuples {
                    let below = t.iter().zip(u).zip(&arg_ps).all(|((a, b), p)| p.leq(*a, *b));
                    if below && !res.leq(table.rows[t], table.rows[u]) {
                        return invalid(format!(
                            "`{f}` is not monotone: {} <= {} but their images are unrelated",
                            show_tuple(&arg_ps, t),
                            show_tuple(&arg_ps, u)
                        ));
                    }
                }
            }
        }
        let interp = Interp { sig, model: self };
        for (c, d) in &sig.consts {
            let ConstDecl::Axiom { neutral, ty } = d else { continue };
            let ctx = Context::new(neutral.clone(), vec![]);
            let n = neutral.len();
            let t = Term::Const(c.clone(), (0..n).rev().map(Term::VarN).collect(), vec![]);
            let sc = interp.sem_ctx(&ctx, DEFAULT_LIMIT)?;
            let fam = interp.family(&sc, ty)?;
            let sec = interp.section(&sc, &t)?;
            if let Err(v) = check_section(&sc, &fam, &sec) {
                return invalid(format!("axiom `{c}` does not hold: {v}"));
            }
        }
        Ok(())
    }
}

fn show_tuple(ps: &[&FinPreorder], t: &[usize]) -> String {
    let parts: Vec<&str> = t.iter().zip(ps).map(|(i, p)| p.names[*i].as_str()).collect();
    format!("({})", parts.join(", "))
}

fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in sizes {
        let mut next = Vec::new();
        for t in &out {
            for i in 0..n {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Semantic contexts

/// Values of the neutral and polar variables, leftmost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Env {
    pub neutral: Vec<usize>,
    pub polar: Vec<usize>,
}

/// All objects of the total category of a context, with its preorder.
#[derive(Clone, Debug)]
pub struct SemCtx {
    pub envs: Vec<Env>,
    /// Fiber of each context entry at each object.
    pub entry_fibers: Vec<Vec<FinPreorder>>,
    pub n_neutral: usize,
    related: Vec<Vec<bool>>,
}

impl SemCtx {
    pub fn len(&self) -> usize {
        self.envs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.envs.is_empty()
    }

    /// Whether there is a morphism from object `i` to object `j`.
    pub fn related(&self, i: usize, j: usize) -> bool {
        self.related[i][j]
    }

    /// Objects as a setoid when the context has no polar zone.
    pub fn as_preorder(&self) -> FinPreorder {
        FinPreorder::new(self.related.clone())
    }
}

pub struct Interp<'a> {
    pub sig: &'a Signature,
    pub model: &'a ModelAssignment,
}

impl<'a> Interp<'a> {
    pub fn new(sig: &'a Signature, model: &'a ModelAssignment) -> Self {
        Interp { sig, model }
    }

    /// The fiber of `t` at one object.
    pub fn fiber(&self, t: &Type, env: &Env) -> SemResult<FinPreorder> {
        match t {
            Type::Base { name, m } => {
                let Some(p) = self.model.types.get(name) else {
                    return invalid(format!("base type `{name}` has no assigned preorder"));
                };
                let mut p = p.clone();
                if m.flat {
                    p = core(&p);
                }
                if m.neg {
                    p = opposite(&p);
                }
                Ok(p)
            }
            Type::Neg(a) => Ok(opposite(&self.fiber(a, env)?)),
            Type::Flat(a) => Ok(core(&self.fiber(a, env)?)),
            Type::Hom { carrier, dom, cod, .. } => {
                let c = self.fiber(carrier, env)?;
                let d = self.eval(dom, env)?;
                let z = self.eval(cod, env)?;
                if d >= c.size() || z >= c.size() {
                    return Err(SemError::Internal("hom endpoint outside its carrier".into()));
                }
                Ok(if c.leq(d, z) { FinPreorder::point() } else { FinPreorder::empty() })
            }
        }
    }

    pub fn eval(&self, t: &Term, env: &Env) -> SemResult<usize> {
        let lookup = |v: &[usize], i: usize| {
            v.len()
                .checked_sub(i + 1)
                .map(|k| v[k])
                .ok_or_else(|| SemError::Internal(format!("variable {i} out of range")))
        };
        match t {
            Term::VarN(i) => lookup(&env.neutral, *i),
            Term::VarP(i) => lookup(&env.polar, *i),
            Term::InjPlus(_, x) | Term::InjMinus(_, x) | Term::CoePlus(_, x) | Term::CoeMinus(_, x) => {
                self.eval(x, env)
            }
            Term::Refl(..) | Term::Uhp(..) | Term::Fwd(_) | Term::Back(_) => Ok(0),
            Term::J(j) => {
                let e = self.eval(&j.anchor, env)?;
                let mut inner = Env {
                    neutral: env.neutral.clone(),
                    polar: vec![],
                };
                inner.neutral.push(e);
                self.eval(&j.base, &inner)
            }
            Term::Sym(f, args) => {
                let key = args.iter().map(|a| self.eval(a, env)).collect::<SemResult<Vec<_>>>()?;
                let Some(t) = self.model.tables.get(f) else {
                    return invalid(format!("function symbol `{f}` has no table"));
                };
                t.rows
                    .get(&key)
                    .copied()
                    .ok_or_else(|| SemError::InvalidModel(format!("table for `{f}` is missing a row")))
            }
            Term::Const(c, ns, ps) => {
                let nv = ns.iter().map(|a| self.eval(a, env)).collect::<SemResult<Vec<_>>>()?;
                let pv = ps.iter().map(|a| self.eval(a, env)).collect::<SemResult<Vec<_>>>()?;
                match self.sig.consts.get(c) {
                    Some(ConstDecl::Def { body, .. }) => self.eval(body, &Env { neutral: nv, polar: pv }),
                    Some(ConstDecl::Axiom { .. }) => match self.model.tables.get(c) {
                        Some(t) => t
                            .rows
                            .get(&nv)
                            .copied()
                            .ok_or_else(|| SemError::InvalidModel(format!("table for `{c}` is missing a row"))),
                        None => Ok(0),
                    },
                    None => Err(SemError::Internal(format!("unknown constant `{c}`"))),
                }
            }
        }
    }

    /// Enumerates the objects of a context and its morphism relation.
    pub fn sem_ctx(&self, ctx: &Context, limit: u64) -> SemResult<SemCtx> {
        let mut envs = vec![Env::default()];
        let mut fibers: Vec<Vec<FinPreorder>> = vec![vec![]];
        let entries = ctx.neutral.iter().map(|t| (true, t)).chain(ctx.polar.iter().map(|t| (false, t)));
        for (neutral, ty) in entries {
            let mut next_envs = Vec::new();
            let mut next_fibers = Vec::new();
            for (env, fs) in envs.iter().zip(&fibers) {
                let f = self.fiber(ty, env)?;
                for a in 0..f.size() {
                    let mut e = env.clone();
                    if neutral {
                        e.neutral.push(a);
                    } else {
                        e.polar.push(a);
                    }
                    let mut fs2 = fs.clone();
                    fs2.push(f.clone());
                    next_envs.push(e);
                    next_fibers.push(fs2);
                }
                if next_envs.len() as u64 > limit {
                    return Err(SemError::SizeLimitExceeded {
                        limit,
                        needed: next_envs.len() as u64,
                    });
                }
            }
            envs = next_envs;
            fibers = next_fibers;
        }
        let n = envs.len() as u64;
        if n * n > limit {
            return Err(SemError::SizeLimitExceeded { limit, needed: n * n });
        }
        let nn = ctx.neutral.len();
        let comps = |e: &Env| e.neutral.iter().chain(&e.polar).copied().collect::<Vec<_>>();
        let flat: Vec<Vec<usize>> = envs.iter().map(comps).collect();
        let related = (0..envs.len())
            .map(|i| {
                (0..envs.len())
                    .map(|j| {
                        flat[i].iter().zip(&flat[j]).zip(&fibers[j]).enumerate().all(|(k, ((&a, &b), f))| {
                            a < f.size() && (f.leq(a, b) && (k >= nn || f.leq(b, a)))
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(SemCtx {
            envs,
            entry_fibers: fibers,
            n_neutral: nn,
            related,
        })
    }

    pub fn family(&self, sc: &SemCtx, t: &Type) -> SemResult<DepFamily> {
        let fibers = sc.envs.iter().map(|e| self.fiber(t, e)).collect::<SemResult<Vec<_>>>()?;
        Ok(DepFamily { fibers })
    }

    pub fn section(&self, sc: &SemCtx, t: &Term) -> SemResult<SectionVal> {
        let values = sc.envs.iter().map(|e| self.eval(t, e)).collect::<SemResult<Vec<_>>>()?;
        Ok(SectionVal { values })
    }
}

// ---------------------------------------------------------------------------
// Families and sections

/// Fibers over the objects of a [`SemCtx`]; reindexing is the identity on
/// element ids wherever it lands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepFamily {
    pub fibers: Vec<FinPreorder>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionVal {
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    Fiber(usize, PreorderViolation),
    /// An element of the source fiber has no image in the target fiber.
    Reindex { from: usize, to: usize },
    NotMonotone { from: usize, to: usize },
}

impl DepFamily {
    /// The reindex map along a morphism, if every element lands.
    pub fn reindex(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let (s, t) = (self.fibers[from].size(), self.fibers[to].size());
        if s <= t {
            Some((0..s).collect())
        } else {
            None
        }
    }

    /// Exhaustively checks fibers, reindex maps, monotonicity and
    /// functoriality over every morphism and composable pair.
    pub fn validate(&self, sc: &SemCtx) -> Result<(), FamilyViolation> {
        for (i, f) in self.fibers.iter().enumerate() {
            validate_preorder(f).map_err(|v| FamilyViolation::Fiber(i, v))?;
        }
        let n = sc.len();
        let mut maps: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if !sc.related(i, j) {
                    continue;
                }
                let m = self.reindex(i, j).ok_or(FamilyViolation::Reindex { from: i, to: j })?;
                let (fi, fj) = (&self.fibers[i], &self.fibers[j]);
                for a in 0..fi.size() {
                    for b in 0..fi.size() {
                        if fi.leq(a, b) && !fj.leq(m[a], m[b]) {
                            return Err(FamilyViolation::NotMonotone { from: i, to: j });
                        }
                    }
                }
                if i == j && m.iter().enumerate().any(|(a, &b)| a != b) {
                    return Err(FamilyViolation::Reindex { from: i, to: j });
                }
                maps.insert((i, j), m);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let Some(m1) = maps.get(&(i, j)) else { continue };
                for k in 0..n {
                    let (Some(m2), Some(m3)) = (maps.get(&(j, k)), maps.get(&(i, k))) else { continue };
                    if m1.iter().map(|&a| m2[a]).ne(m3.iter().copied()) {
                        return Err(FamilyViolation::Reindex { from: i, to: k });
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionViolation {
    /// The value at this object is not an element of its fiber.
    Missing(usize),
    NotMonotone { from: usize, to: usize },
}

impl fmt::Display for SectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionViolation::Missing(i) => write!(f, "no element in the fiber at object {i}"),
            SectionViolation::NotMonotone { from, to } => {
                write!(f, "not monotone along the morphism {from} -> {to}")
            }
        }
    }
}

pub fn check_section(sc: &SemCtx, fam: &DepFamily, s: &SectionVal) -> Result<(), SectionViolation> {
    for (i, (&v, f)) in s.values.iter().zip(&fam.fibers).enumerate() {
        if v >= f.size() {
            return Err(SectionViolation::Missing(i));
        }
    }
    for i in 0..sc.len() {
        for j in 0..sc.len() {
            if sc.related(i, j) {
                let ok = fam
                    .reindex(i, j)
                    .map(|m| fam.fibers[j].leq(m[s.values[i]], s.values[j]))
                    .unwrap_or(false);
                if !ok {
                    return Err(SectionViolation::NotMonotone { from: i, to: j });
                }
            }
        }
    }
    Ok(())
}

/// Number of monotone sections, by backtracking over objects in order. The
/// limit bounds the number of object/value combinations tried.
pub fn count_sections(sc: &SemCtx, fam: &DepFamily, limit: u64) -> SemResult<u64> {
    let n = sc.len();
    let mut vals = vec![usize::MAX; n];
    let mut tried = 0u64;
    fn go(
        k: usize,
        sc: &SemCtx,
        fam: &DepFamily,
        vals: &mut Vec<usize>,
        tried: &mut u64,
        limit: u64,
    ) -> SemResult<u64> {
        if k == sc.len() {
            return Ok(1);
        }
        let mut total = 0;
        for v in 0..fam.fibers[k].size() {
            *tried += 1;
            if *tried > limit {
                return Err(SemError::SizeLimitExceeded { limit, needed: *tried });
            }
            let ok = (0..k).all(|i| {
                let fwd = !sc.related(i, k)
                    || fam.reindex(i, k).is_some_and(|m| fam.fibers[k].leq(m[vals[i]], v));
                let bwd = !sc.related(k, i)
                    || fam.reindex(k, i).is_some_and(|m| fam.fibers[i].leq(m[v], vals[i]));
                fwd && bwd
            }) && (!sc.related(k, k) || fam.reindex(k, k).is_some());
            if ok {
                vals[k] = v;
                total += go(k + 1, sc, fam, vals, tried, limit)?;
            }
        }
        Ok(total)
    }
    go(0, sc, fam, &mut vals, &mut tried, limit)
}

/// Counts sections of `ty` over `ctx`.
pub fn count_goal_sections(
    sig: &Signature,
    model: &ModelAssignment,
    ctx: &Context,
    ty: &Type,
    limit: u64,
) -> SemResult<u64> {
    let it = Interp::new(sig, model);
    let sc = it.sem_ctx(ctx, limit)?;
    let fam = it.family(&sc, &normalize_type(sig, ty))?;
    count_sections(&sc, &fam, limit)
}
