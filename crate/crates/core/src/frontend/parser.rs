use super::ast::*;
use super::lexer::{lex, Tok, Token};
use crate::checker::Span;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

type PResult<T> = Result<T, ParseError>;

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn join(a: Span, b: Span) -> Span {
    Span {
        start: a.start,
        end: b.end.max(a.end),
        line: a.line,
        col: a.col,
    }
}

impl Parser {
    pub fn new(src: &str) -> PResult<Self> {
        let toks = lex(src).map_err(|e| ParseError {
            span: e.span,
            message: e.message,
        })?;
        Ok(Parser { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            span: self.span(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().span;
                Ok((s, sp))
            }
            t => self.error(format!("expected an identifier, found {}", t.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        if self.is_keyword(kw) {
            Ok(self.bump().span)
        } else {
            self.error(format!("expected `{kw}`, found {}", self.peek().describe()))
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn expect_eof(&self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.peek().describe()))
        }
    }

    fn comma_list<T>(&mut self, close: Tok, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.eat(&close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(close.clone())?;
            return Ok(out);
        }
    }

    // ------------------------------------------------------------------
    // Types

    pub fn ty(&mut self) -> PResult<STy> {
        let start = self.span();
        for (kw, ctor) in [
            ("Hom", STyKind::Hom as fn(_, _, _) -> STyKind),
            ("Id", STyKind::Id),
            ("IdFlat", STyKind::IdFlat),
        ] {
            if self.is_keyword(kw) {
                self.bump();
                let carrier = self.postfix_ty()?;
                self.expect(Tok::LParen)?;
                let s = self.term()?;
                let t = if self.eat(&Tok::Comma) {
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    t
                } else {
                    self.expect(Tok::RParen)?;
                    self.expect(Tok::LParen)?;
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    t
                };
                return Ok(STy {
                    kind: ctor(Box::new(carrier), Box::new(s), Box::new(t)),
                    span: join(start, self.prev_span()),
                });
            }
        }
        self.postfix_ty()
    }

    fn postfix_ty(&mut self) -> PResult<STy> {
        let start = self.span();
        let mut t = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                STy {
                    kind: t.kind,
                    span: join(start, self.prev_span()),
                }
            }
            Tok::Ident(name) if !matches!(name.as_str(), "Hom" | "Id" | "IdFlat") => {
                self.bump();
                STy {
                    kind: STyKind::Name(name),
                    span: start,
                }
            }
            t => return self.error(format!("expected a type, found {}", t.describe())),
        };
        while let Tok::Caret(c) = *self.peek() {
            self.bump();
            let span = join(start, self.prev_span());
            t = STy {
                kind: if c == '-' {
                    STyKind::Neg(Box::new(t))
                } else {
                    STyKind::Flat(Box::new(t))
                },
                span,
            };
        }
        Ok(t)
    }

    // ------------------------------------------------------------------
    // Terms

    pub fn term(&mut self) -> PResult<STm> {
        let start = self.span();
        let coercion = match self.peek() {
            Tok::Signed(h, '+') if h == "inj" => Some(Coercion::InjPlus),
            Tok::Signed(h, '-') if h == "inj" => Some(Coercion::InjMinus),
            Tok::Signed(h, '+') if h == "coe" => Some(Coercion::CoePlus),
            Tok::Signed(h, '-') if h == "coe" => Some(Coercion::CoeMinus),
            Tok::Ident(s) if s == "refl" => Some(Coercion::Refl),
            _ => None,
        };
        if let Some(c) = coercion {
            self.bump();
            let ann = if self.eat(&Tok::LBrack) {
                let a = self.ty()?;
                self.expect(Tok::RBrack)?;
                Some(Box::new(a))
            } else {
                None
            };
            let body = self.term()?;
            return Ok(STm {
                span: join(start, body.span),
                kind: STmKind::Coerce(c, ann, Box::new(body)),
            });
        }
        if self.is_keyword("fwd") || self.is_keyword("back") {
            let fwd = self.is_keyword("fwd");
            self.bump();
            let body = self.term()?;
            return Ok(STm {
                span: join(start, body.span),
                kind: if fwd {
                    STmKind::Fwd(Box::new(body))
                } else {
                    STmKind::Back(Box::new(body))
                },
            });
        }
        self.primary()
    }

    fn args(&mut self) -> PResult<Vec<STm>> {
        self.expect(Tok::LParen)?;
        self.comma_list(Tok::RParen, |p| p.term())
    }

    fn fixed_args<const N: usize>(&mut self, what: &str) -> PResult<[STm; N]> {
        let sp = self.span();
        let v = self.args()?;
        let n = v.len();
        v.try_into().map_err(|_| ParseError {
            span: sp,
            message: format!("`{what}` takes {N} argument(s), got {n}"),
        })
    }

    fn primary(&mut self) -> PResult<STm> {
        let start = self.span();
        let kind = match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                return Ok(STm {
                    kind: t.kind,
                    span: join(start, self.prev_span()),
                });
            }
            Tok::Signed(h, c) if h == "J" || h == "tr" => {
                self.bump();
                let which = match (h.as_str(), c) {
                    ("J", '+') => TeleElim::Plus,
                    ("J", _) => TeleElim::Minus,
                    ("tr", '+') => TeleElim::TransportPlus,
                    _ => return self.error("only `tr+` is available"),
                };
                self.tele_elim(which)?
            }
            Tok::Ident(name) => match name.as_str() {
                "J" => {
                    self.bump();
                    if *self.peek() == Tok::LBrack {
                        self.general_j()?
                    } else {
                        self.tele_elim(TeleElim::Both)?
                    }
                }
                "UHP" => {
                    self.bump();
                    let [p, q] = self.fixed_args::<2>("UHP")?;
                    STmKind::Uhp(Box::new(p), Box::new(q))
                }
                "compose" => {
                    self.bump();
                    let [f, g] = self.fixed_args::<2>("compose")?;
                    STmKind::Compose(Box::new(f), Box::new(g))
                }
                "unitL" => {
                    self.bump();
                    let [g] = self.fixed_args::<1>("unitL")?;
                    STmKind::UnitL(Box::new(g))
                }
                "unitR" => {
                    self.bump();
                    let [f] = self.fixed_args::<1>("unitR")?;
                    STmKind::UnitR(Box::new(f))
                }
                "symCore" => {
                    self.bump();
                    STmKind::SymCore
                }
                _ => {
                    self.bump();
                    match self.peek() {
                        Tok::LParen => STmKind::App(name, self.args()?),
                        Tok::At => {
                            self.bump();
                            let ns = self.args()?;
                            let ps = if *self.peek() == Tok::LParen {
                                self.args()?
                            } else {
                                Vec::new()
                            };
                            STmKind::Inst(name, ns, ps)
                        }
                        _ => STmKind::Name(name),
                    }
                }
            },
            t => return self.error(format!("expected a term, found {}", t.describe())),
        };
        Ok(STm {
            kind,
            span: join(start, self.prev_span()),
        })
    }

    fn tele_elim(&mut self, which: TeleElim) -> PResult<STmKind> {
        self.expect(Tok::LBrace)?;
        let motive = self.ty()?;
        self.expect(Tok::Semi)?;
        let base = self.term()?;
        self.expect(Tok::RBrace)?;
        Ok(STmKind::Tele(which, Box::new(motive), Box::new(base)))
    }

    fn general_j(&mut self) -> PResult<STmKind> {
        self.expect(Tok::LBrack)?;
        let carrier = self.ty()?;
        self.expect(Tok::RBrack)?;
        self.expect(Tok::LBrace)?;
        let mut names = Vec::new();
        for k in 0..5 {
            names.push(self.ident()?.0);
            if k < 4 {
                self.expect(Tok::Comma)?;
            }
        }
        self.expect(Tok::Dot)?;
        let motive = self.ty()?;
        self.expect(Tok::Semi)?;
        let base = self.term()?;
        self.expect(Tok::RBrace)?;
        self.expect(Tok::LParen)?;
        let anchor = self.term()?;
        self.expect(Tok::Semi)?;
        let sp = self.span();
        let args = self.comma_list(Tok::RParen, |p| p.term())?;
        let args: [STm; 4] = args.try_into().map_err(|_| ParseError {
            span: sp,
            message: "the eliminator takes four arguments after its anchor".into(),
        })?;
        let binders: [String; 5] = names.try_into().expect("five binders");
        Ok(STmKind::J(Box::new(SJ {
            carrier,
            binders,
            motive,
            base,
            anchor,
            args,
        })))
    }

    // ------------------------------------------------------------------
    // Declarations

    fn binder(&mut self, sep: Tok) -> PResult<Binder> {
        let (name, sp) = self.ident()?;
        self.expect(sep)?;
        let ty = self.ty()?;
        Ok(Binder {
            name,
            span: join(sp, ty.span),
            ty,
        })
    }

    pub fn tele(&mut self) -> PResult<STele> {
        let neutral = if self.eat(&Tok::LBrack) {
            self.comma_list(Tok::RBrack, |p| p.binder(Tok::ColonColon))?
        } else {
            Vec::new()
        };
        let polar = if self.eat(&Tok::LParen) {
            self.comma_list(Tok::RParen, |p| p.binder(Tok::Colon))?
        } else {
            Vec::new()
        };
        Ok(STele { neutral, polar })
    }

    /// `[..] (..) |- T`, or a bare type in the empty context.
    pub fn goal_type(&mut self) -> PResult<(STele, STy)> {
        if matches!(self.peek(), Tok::LBrack) || self.paren_is_tele() {
            let tele = self.tele()?;
            self.expect(Tok::Turnstile)?;
            let ty = self.ty()?;
            return Ok((tele, ty));
        }
        let ty = self.ty()?;
        Ok((
            STele {
                neutral: vec![],
                polar: vec![],
            },
            ty,
        ))
    }

    fn paren_is_tele(&self) -> bool {
        *self.peek() == Tok::LParen
            && matches!(self.peek_at(1), Tok::Ident(_))
            && *self.peek_at(2) == Tok::Colon
    }

    pub fn decl(&mut self) -> PResult<Decl> {
        let start = self.span();
        let (kw, _) = self.ident()?;
        let (name, _) = self.ident()?;
        let kind = match kw.as_str() {
            "type" => DeclKind::Type,
            "func" => {
                let args = if self.eat(&Tok::LParen) {
                    self.comma_list(Tok::RParen, |p| p.ident().map(|x| x.0))?
                } else {
                    Vec::new()
                };
                self.expect(Tok::Colon)?;
                let (result, _) = self.ident()?;
                DeclKind::Func { args, result }
            }
            "axiom" => {
                let tele = self.tele()?;
                if !tele.polar.is_empty() {
                    return Err(ParseError {
                        span: tele.polar[0].span,
                        message: "axioms take only a neutral telescope".into(),
                    });
                }
                self.expect(Tok::Colon)?;
                DeclKind::Axiom { tele, ty: self.ty()? }
            }
            "def" | "check" => {
                let tele = self.tele()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::ColonEq)?;
                let body = self.term()?;
                if kw == "def" {
                    DeclKind::Def { tele, ty, body }
                } else {
                    DeclKind::Check { tele, ty, body }
                }
            }
            "refute" => {
                let tele = self.tele()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                let model = if self.is_keyword("in") {
                    self.bump();
                    Some(self.ident()?.0)
                } else {
                    None
                };
                DeclKind::Refute { tele, ty, model }
            }
            "model" => {
                self.expect(Tok::LBrace)?;
                let m = self.model_items(Some(Tok::RBrace))?;
                self.expect(Tok::RBrace)?;
                return Ok(Decl {
                    name,
                    kind: DeclKind::Model(m),
                    span: join(start, self.prev_span()),
                });
            }
            other => {
                return Err(ParseError {
                    span: start,
                    message: format!("unknown declaration keyword `{other}`"),
                })
            }
        };
        self.expect(Tok::Semi)?;
        Ok(Decl {
            name,
            kind,
            span: join(start, self.prev_span()),
        })
    }

    pub fn program(&mut self) -> PResult<Vec<Decl>> {
        let mut out = Vec::new();
        while !self.at_eof() {
            out.push(self.decl()?);
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Models

    pub fn model_items(&mut self, close: Option<Tok>) -> PResult<ModelSrc> {
        let mut m = ModelSrc::default();
        loop {
            if self.at_eof() || close.as_ref() == Some(self.peek()) {
                return Ok(m);
            }
            let start = self.span();
            if self.is_keyword("preorder") {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Tok::LBrace)?;
                self.keyword("elems")?;
                self.expect(Tok::Colon)?;
                self.expect(Tok::LBrack)?;
                let elems = self.comma_list(Tok::RBrack, |p| p.ident().map(|x| x.0))?;
                self.eat(&Tok::Semi);
                self.keyword("le")?;
                self.expect(Tok::Colon)?;
                self.expect(Tok::LBrack)?;
                let le = self.comma_list(Tok::RBrack, |p| {
                    p.expect(Tok::LBrack)?;
                    p.comma_list(Tok::RBrack, |p| {
                        let (w, sp) = p.ident()?;
                        match w.as_str() {
                            "1" | "true" => Ok(true),
                            "0" | "false" => Ok(false),
                            _ => Err(ParseError {
                                span: sp,
                                message: format!("expected 0/1 or true/false, found `{w}`"),
                            }),
                        }
                    })
                })?;
                self.eat(&Tok::Semi);
                self.expect(Tok::RBrace)?;
                self.eat(&Tok::Semi);
                m.preorders.push(PreorderSrc {
                    name,
                    elems,
                    le,
                    span: join(start, self.prev_span()),
                });
            } else if self.is_keyword("assign") {
                self.bump();
                let (name, _) = self.ident()?;
                self.expect(Tok::Eq)?;
                if self.is_keyword("table") {
                    self.bump();
                    self.expect(Tok::LBrace)?;
                    let mut rows = Vec::new();
                    while *self.peek() != Tok::RBrace {
                        self.expect(Tok::LParen)?;
                        let args = self.comma_list(Tok::RParen, |p| p.ident().map(|x| x.0))?;
                        self.expect(Tok::Arrow)?;
                        let (r, _) = self.ident()?;
                        self.expect(Tok::Semi)?;
                        rows.push((args, r));
                    }
                    self.expect(Tok::RBrace)?;
                    self.expect(Tok::Semi)?;
                    m.assigns.push(AssignSrc::Table {
                        name,
                        rows,
                        span: join(start, self.prev_span()),
                    });
                } else {
                    let (preorder, _) = self.ident()?;
                    self.expect(Tok::Semi)?;
                    m.assigns.push(AssignSrc::Type {
                        name,
                        preorder,
                        span: join(start, self.prev_span()),
                    });
                }
            } else {
                return self.error(format!(
                    "expected `preorder` or `assign`, found {}",
                    self.peek().describe()
                ));
            }
        }
    }
}

pub fn parse_program(src: &str) -> PResult<Vec<Decl>> {
    Parser::new(src)?.program()
}

pub fn parse_model(src: &str) -> PResult<ModelSrc> {
    let mut p = Parser::new(src)?;
    let m = p.model_items(None)?;
    p.expect_eof()?;
    Ok(m)
}

pub fn parse_type(src: &str) -> PResult<STy> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_term(src: &str) -> PResult<STm> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_goal_type(src: &str) -> PResult<(STele, STy)> {
    let mut p = Parser::new(src)?;
    let g = p.goal_type()?;
    p.expect_eof()?;
    Ok(g)
}

/// A type or a term, optionally preceded by `[..] (..) |-`.
pub fn parse_scoped(src: &str) -> PResult<(STele, Result<STy, STm>)> {
    let mut p = Parser::new(src)?;
    let tele = if matches!(p.peek(), Tok::LBrack) || p.paren_is_tele() {
        let t = p.tele()?;
        p.expect(Tok::Turnstile)?;
        t
    } else {
        STele {
            neutral: vec![],
            polar: vec![],
        }
    };
    let start = p.pos;
    if let Ok(t) = p.ty() {
        if p.at_eof() {
            return Ok((tele, Ok(t)));
        }
    }
    p.pos = start;
    let t = p.term()?;
    p.expect_eof()?;
    Ok((tele, Err(t)))
}
