//! Parser for types and wffs, with Table-2 sugar and theory definitions expanded.

use super::signature::{Family, Signature, WFF_PREFIX};
use super::sugar;
use super::typecheck::{type_of, type_of_open, TypeError};
use super::types::Type;
use super::wff::{Var, Wff};

/// A syntax or resolution error with its position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown constant `{name}` at {line}:{col}")]
    UnknownConstant { name: String, line: usize, col: usize },
    #[error(transparent)]
    Type(#[from] TypeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    LParen,
    RParen,
    Lt,
    Gt,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Dot,
    Backslash,
    Hash,
    Caret,
    Assign,
    Op(&'static str),
    Ident(String),
    Num(String),
}

const OPS: &[&str] = &["<=>", "==", "=>", "~~", "&", "|", "~", "!", "?"];

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '%'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '%' || c == '-' || c == '\''
}

pub(crate) fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            adv(1, &mut i, &mut col);
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        if let Some(op) = OPS.iter().find(|op| rest.starts_with(**op)) {
            out.push(Token { tok: Tok::Op(op), line: tl, col: tc });
            adv(op.len(), &mut i, &mut col);
            continue;
        }
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            '\\' => Some(Tok::Backslash),
            '#' => Some(Tok::Hash),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Assign),
            _ => None,
        };
        if let Some(t) = simple {
            out.push(Token { tok: t, line: tl, col: tc });
            adv(1, &mut i, &mut col);
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
                col += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Ident(s), line: tl, col: tc });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
                col += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Num(s), line: tl, col: tc });
            continue;
        }
        return Err(ParseError::Syntax { line: tl, col: tc, msg: format!("unexpected character `{}`", c) });
    }
    Ok(out)
}

/// Recursive-descent parser over a token stream.
pub(crate) struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'a Signature,
    end: (usize, usize),
    /// Accept undeclared nonlogical constants at their written type.
    pub open: bool,
}

const KEYWORDS: &[&str] = &[
    "if", "quote", "eval", "forall", "exists", "exists1", "desc", "fst", "snd", "syn-closed",
];

impl<'a> Parser<'a> {
    pub fn new(text: &str, sig: &'a Signature) -> Result<Parser<'a>, ParseError> {
        let toks = lex(text)?;
        let lines: Vec<&str> = text.split('\n').collect();
        let end = (lines.len(), lines.last().map(|l| l.len() + 1).unwrap_or(1));
        Ok(Parser { toks, pos: 0, sig, end, open: false })
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::Syntax { line, col, msg: msg.into() })
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {:?}", t))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    pub fn ty(&mut self) -> Result<Type, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "i" => Ok(Type::I),
                    "o" => Ok(Type::O),
                    "eps" => Ok(Type::Eps),
                    _ => {
                        self.pos -= 1;
                        self.err(format!("unknown type `{}`", s))
                    }
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let r = self.ty()?;
                let a = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(Type::fun(r, a))
            }
            Some(Tok::Lt) => {
                self.pos += 1;
                let a = self.ty()?;
                self.expect(Tok::Comma)?;
                let b = self.ty()?;
                self.expect(Tok::Gt)?;
                Ok(Type::pair(a, b))
            }
            _ => self.err("expected type"),
        }
    }

    fn typed_var(&mut self) -> Result<Var, ParseError> {
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let ty = self.ty()?;
        Ok(Var::new(&name, ty))
    }

    fn binder_form(&mut self) -> Result<(Var, Wff), ParseError> {
        let x = self.typed_var()?;
        self.expect(Tok::Dot)?;
        let body = self.wff()?;
        self.expect(Tok::RParen)?;
        Ok((x, body))
    }

    /// Parses one wff. Sugar is expanded; the result is not yet type-checked.
    pub fn wff(&mut self) -> Result<Wff, ParseError> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Hash) => {
                self.pos += 1;
                let mut name = self.ident()?;
                if name == "wff" && self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    let t = self.ty()?;
                    name = format!("{}{}", WFF_PREFIX, t);
                }
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.resolve(&name, ty, line, col)
            }
            Some(Tok::Ident(s)) => {
                if self.peek2() == Some(&Tok::Colon) {
                    let x = self.typed_var()?;
                    if &*x.name == "bot" {
                        return Ok(sugar::bottom(x.ty));
                    }
                    return Ok(Wff::Var(x));
                }
                self.pos += 1;
                match s.as_str() {
                    "T" => Ok(sugar::t()),
                    "F" => Ok(sugar::f()),
                    _ => {
                        self.pos -= 1;
                        self.err(format!("expected `:` after `{}`", s))
                    }
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                self.paren_form()
            }
            _ => self.err("expected wff"),
        }
    }

    fn resolve(&self, name: &str, ty: Type, line: usize, col: usize) -> Result<Wff, ParseError> {
        if Family::of_name(name).is_some() {
            return Ok(Wff::constant(name, ty));
        }
        if let Some(t) = self.sig.const_type(name) {
            if *t == ty {
                return Ok(Wff::constant(name, ty));
            }
        }
        if let Some(d) = self.sig.definition(name) {
            if d.ty == ty {
                return Ok(d.body.clone());
            }
        }
        if self.open && self.sig.definition(name).is_none() && self.sig.const_type(name).is_none() {
            return Ok(Wff::constant(name, ty));
        }
        Err(ParseError::UnknownConstant { name: name.to_string(), line, col })
    }

    fn paren_form(&mut self) -> Result<Wff, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Backslash) => {
                self.pos += 1;
                let (x, b) = self.binder_form()?;
                return Ok(Wff::abs(x, b));
            }
            Some(Tok::Op("~")) => {
                self.pos += 1;
                let a = self.wff()?;
                self.expect(Tok::RParen)?;
                return Ok(sugar::not(a));
            }
            Some(Tok::Ident(k)) if self.peek2() != Some(&Tok::Colon) => {
                if let Some(w) = self.keyword_form(&k)? {
                    return Ok(w);
                }
            }
            _ => {}
        }
        let a = self.wff()?;
        match self.peek().cloned() {
            Some(Tok::RParen) => {
                self.pos += 1;
                Ok(a)
            }
            Some(Tok::Op(op)) if op == "!" || op == "?" => {
                self.pos += 1;
                self.expect(Tok::RParen)?;
                Ok(if op == "!" { sugar::defined(a) } else { sugar::undefined(a) })
            }
            Some(Tok::Op(op)) => {
                self.pos += 1;
                let b = self.wff()?;
                self.expect(Tok::RParen)?;
                Ok(match op {
                    "==" | "<=>" => sugar::eq(a, b),
                    "&" => sugar::and(a, b),
                    "|" => sugar::or(a, b),
                    "=>" => sugar::implies(a, b),
                    "~~" => sugar::qeq(a, b),
                    _ => return self.err(format!("unexpected operator `{}`", op)),
                })
            }
            _ => {
                let mut f = a;
                while self.peek() != Some(&Tok::RParen) {
                    let b = self.wff()?;
                    f = Wff::app(f, b);
                }
                self.expect(Tok::RParen)?;
                Ok(f)
            }
        }
    }

    fn keyword_form(&mut self, k: &str) -> Result<Option<Wff>, ParseError> {
        let base = match k {
            "var" => Some(sugar::BaseKind::Var),
            "con" => Some(sugar::BaseKind::Con),
            "eval-free" => Some(sugar::BaseKind::EvalFree),
            _ => None,
        };
        if let Some(kind) = base {
            if self.peek2() != Some(&Tok::Caret) {
                return Ok(None);
            }
            self.pos += 2;
            let alpha = self.ty()?;
            let a = self.wff()?;
            self.expect(Tok::RParen)?;
            return Ok(Some(Wff::app(kind.comb(alpha), a)));
        }
        if !KEYWORDS.contains(&k) {
            return Ok(None);
        }
        self.pos += 1;
        let w = match k {
            "if" => {
                let t = self.wff()?;
                let a = self.wff()?;
                let b = self.wff()?;
                self.expect(Tok::RParen)?;
                Wff::cond(t, a, b)
            }
            "quote" => {
                let a = self.wff()?;
                self.expect(Tok::RParen)?;
                Wff::quote(a)
            }
            "eval" => {
                let a = self.wff()?;
                self.expect(Tok::Colon)?;
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Wff::eval(a, t)
            }
            "forall" => {
                let (x, b) = self.binder_form()?;
                sugar::forall(x, b)
            }
            "exists" => {
                let (x, b) = self.binder_form()?;
                sugar::exists(x, b)
            }
            "exists1" => {
                let (x, b) = self.binder_form()?;
                sugar::exists1(x, b)
            }
            "desc" => {
                let (x, b) = self.binder_form()?;
                sugar::desc(x, b)?
            }
            "fst" | "snd" => {
                let a = self.wff()?;
                self.expect(Tok::RParen)?;
                if k == "fst" {
                    sugar::fst(a)?
                } else {
                    sugar::snd(a)?
                }
            }
            "syn-closed" => {
                let a = self.wff()?;
                self.expect(Tok::RParen)?;
                sugar::syn_closed(a)
            }
            _ => unreachable!("keyword list"),
        };
        Ok(Some(w))
    }
}

/// Parses a complete type.
pub fn parse_type(text: &str) -> Result<Type, ParseError> {
    let sig = Signature::new();
    let mut p = Parser::new(text, &sig)?;
    let t = p.ty()?;
    if !p.at_end() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Parses and type-checks a complete wff against `sig`.
pub fn parse_wff(text: &str, sig: &Signature) -> Result<Wff, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let w = p.wff()?;
    if !p.at_end() {
        return p.err("trailing input");
    }
    type_of(&w, sig)?;
    Ok(w)
}

/// Parses a wff, accepting any nonlogical constant at its written type.
pub fn parse(text: &str) -> Result<Wff, ParseError> {
    let sig = Signature::new();
    let mut p = Parser::new(text, &sig)?;
    p.open = true;
    let w = p.wff()?;
    if !p.at_end() {
        return p.err("trailing input");
    }
    type_of_open(&w)?;
    Ok(w)
}
