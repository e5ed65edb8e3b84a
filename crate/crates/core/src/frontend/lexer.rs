use crate::checker::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `inj+`, `coe-`, `J+`, `tr+` and friends: an identifier glued to a sign.
    Signed(String, char),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    ColonColon,
    ColonEq,
    Arrow,
    Turnstile,
    At,
    Dot,
    Eq,
    Caret(char),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Signed(s, c) => format!("`{s}{c}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::ColonColon => "`::`".into(),
            Tok::ColonEq => "`:=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::At => "`@`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Caret(c) => format!("`^{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

const SIGNED_HEADS: [&str; 4] = ["inj", "coe", "J", "tr"];

pub fn lex(src: &str) -> Result<Vec<Token>, LexError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut line_start = 0;
    let span = |s: usize, e: usize, line: usize, line_start: usize| Span {
        start: s,
        end: e,
        line,
        col: src[line_start..s].chars().count() + 1,
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if src[i..].starts_with("--") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let two = src.get(i..i + 2).unwrap_or("");
        let tok = match two {
            "::" => Some(Tok::ColonColon),
            ":=" => Some(Tok::ColonEq),
            "->" => Some(Tok::Arrow),
            "|-" => Some(Tok::Turnstile),
            "^-" => Some(Tok::Caret('-')),
            "^b" => Some(Tok::Caret('b')),
            _ => None,
        };
        if let Some(tok) = tok {
            i += 2;
            out.push(Token {
                tok,
                span: span(start, i, line, line_start),
            });
            continue;
        }
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBrack),
            b']' => Some(Tok::RBrack),
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            b':' => Some(Tok::Colon),
            b'@' => Some(Tok::At),
            b'.' => Some(Tok::Dot),
            b'=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push(Token {
                tok,
                span: span(start, i, line, line_start),
            });
            continue;
        }
        if c.is_ascii_alphanumeric() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            let word = &src[start..i];
            let tok = match bytes.get(i) {
                Some(&s @ (b'+' | b'-')) if SIGNED_HEADS.contains(&word) => {
                    i += 1;
                    Tok::Signed(word.to_string(), s as char)
                }
                _ => Tok::Ident(word.to_string()),
            };
            out.push(Token {
                tok,
                span: span(start, i, line, line_start),
            });
            continue;
        }
        let ch = src[i..].chars().next().unwrap_or('?');
        return Err(LexError {
            span: span(start, start + ch.len_utf8(), line, line_start),
            message: format!("unexpected character `{ch}`"),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(src.len(), src.len(), line, line_start),
    });
    Ok(out)
}
