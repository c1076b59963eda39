//! Parser for the surface syntax.
//!
//! Grammar (whitespace-insensitive; `->` and `+` right-associative,
//! application left-associative, `+` binds tighter than `->`):
//!
//! ```text
//! type  ::= "nat" | "unit" | "bool" | type "+" type | type "->" type | "(" type ")"
//! term  ::= ident | natlit | "()" | "true" | "false"
//!         | "fun" ident ":" type "." term
//!         | term term
//!         | "inj1" "{" type "}" term | "inj2" "{" type "}" term
//!         | "case" term "of" "{" "inj1" ident "->" term "|" "inj2" ident "->" term "}"
//!         | "if" term "then" term "else" term
//!         | "(" term ")"
//! ```
//!
//! Booleans are sugar: `bool` is `unit + unit`, `true`/`false` are the two
//! injections of `()`, and `if` is a case that ignores its binders. Names
//! are resolved to de Bruijn indices here; the abstract syntax carries none.

use std::fmt;

use num_bigint::BigUint;

use crate::ast::{Side, Term, Type};

/// A byte range in the source, with the 1-based line of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start_offset: usize,
    pub end_offset: usize,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Unexpected {
        span: SourceSpan,
        expected: Vec<String>,
        found: String,
    },
    UnboundVariable {
        span: SourceSpan,
        name: String,
    },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Unexpected { span, .. } | ParseError::UnboundVariable { span, .. } => *span,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Unexpected { span, expected, found } => write!(
                f,
                "parse error at line {}, offset {}: found {}, expected {}",
                span.line,
                span.start_offset,
                found,
                expected.join(" or ")
            ),
            ParseError::UnboundVariable { span, name } => write!(
                f,
                "unbound variable `{}` at line {}, offset {}",
                name, span.line, span.start_offset
            ),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Nat(BigUint),
    KwFun,
    KwCase,
    KwOf,
    KwIf,
    KwThen,
    KwElse,
    KwTrue,
    KwFalse,
    KwInj1,
    KwInj2,
    KwNat,
    KwUnit,
    KwBool,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Dot,
    Arrow,
    Plus,
    Pipe,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Nat(n) => format!("literal `{n}`"),
            Token::KwFun => "`fun`".into(),
            Token::KwCase => "`case`".into(),
            Token::KwOf => "`of`".into(),
            Token::KwIf => "`if`".into(),
            Token::KwThen => "`then`".into(),
            Token::KwElse => "`else`".into(),
            Token::KwTrue => "`true`".into(),
            Token::KwFalse => "`false`".into(),
            Token::KwInj1 => "`inj1`".into(),
            Token::KwInj2 => "`inj2`".into(),
            Token::KwNat => "`nat`".into(),
            Token::KwUnit => "`unit`".into(),
            Token::KwBool => "`bool`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBrace => "`{`".into(),
            Token::RBrace => "`}`".into(),
            Token::Colon => "`:`".into(),
            Token::Dot => "`.`".into(),
            Token::Arrow => "`->`".into(),
            Token::Plus => "`+`".into(),
            Token::Pipe => "`|`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

fn lex(source: &str) -> Result<Vec<(Token, SourceSpan)>, ParseError> {
    let bytes = source.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line = 1;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '\n' {
            line += 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => {
                i += 1;
                Token::LParen
            }
            ')' => {
                i += 1;
                Token::RParen
            }
            '{' => {
                i += 1;
                Token::LBrace
            }
            '}' => {
                i += 1;
                Token::RBrace
            }
            ':' => {
                i += 1;
                Token::Colon
            }
            '.' => {
                i += 1;
                Token::Dot
            }
            '+' => {
                i += 1;
                Token::Plus
            }
            '|' => {
                i += 1;
                Token::Pipe
            }
            '-' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'>' {
                    i += 2;
                    Token::Arrow
                } else {
                    return Err(ParseError::Unexpected {
                        span: SourceSpan { start_offset: i, end_offset: i + 1, line },
                        expected: vec!["`->`".into()],
                        found: "`-`".into(),
                    });
                }
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n = source[i..j].parse::<BigUint>().expect("digits parse");
                i = j;
                Token::Nat(n)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len() {
                    let b = bytes[j] as char;
                    if b.is_ascii_alphanumeric() || b == '_' || b == '\'' {
                        j += 1;
                    } else {
                        break;
                    }
                }
                let word = &source[i..j];
                i = j;
                match word {
                    "fun" => Token::KwFun,
                    "case" => Token::KwCase,
                    "of" => Token::KwOf,
                    "if" => Token::KwIf,
                    "then" => Token::KwThen,
                    "else" => Token::KwElse,
                    "true" => Token::KwTrue,
                    "false" => Token::KwFalse,
                    "inj1" => Token::KwInj1,
                    "inj2" => Token::KwInj2,
                    "nat" => Token::KwNat,
                    "unit" => Token::KwUnit,
                    "bool" => Token::KwBool,
                    other => Token::Ident(other.to_string()),
                }
            }
            other => {
                return Err(ParseError::Unexpected {
                    span: SourceSpan { start_offset: i, end_offset: i + other.len_utf8(), line },
                    expected: vec!["a token".into()],
                    found: format!("`{other}`"),
                });
            }
        };
        toks.push((
            tok,
            SourceSpan { start_offset: start, end_offset: i, line },
        ));
    }
    toks.push((
        Token::Eof,
        SourceSpan { start_offset: bytes.len(), end_offset: bytes.len(), line },
    ));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Token, SourceSpan)>,
    pos: usize,
    scope: Vec<String>,
}

/// Parse a whole program: one term followed by end of input.
pub fn parse_program(source: &str) -> Result<Term, ParseError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0, scope: Vec::new() };
    let t = p.term()?;
    p.expect(&Token::Eof)?;
    Ok(t)
}

/// Parse a type on its own (used by tests and tooling).
pub fn parse_type(source: &str) -> Result<Type, ParseError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0, scope: Vec::new() };
    let ty = p.ty()?;
    p.expect(&Token::Eof)?;
    Ok(ty)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos].0
    }

    fn peek_span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::Unexpected {
            span: self.peek_span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, want: &Token) -> Result<(), ParseError> {
        if self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[&want.describe()]))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                Ok(name)
            }
            _ => Err(self.unexpected(&["an identifier"])),
        }
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        let lhs = self.sum_ty()?;
        if *self.peek() == Token::Arrow {
            self.bump();
            let rhs = self.ty()?;
            Ok(Type::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn sum_ty(&mut self) -> Result<Type, ParseError> {
        let lhs = self.atom_ty()?;
        if *self.peek() == Token::Plus {
            self.bump();
            let rhs = self.sum_ty()?;
            Ok(Type::sum(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn atom_ty(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Token::KwNat => {
                self.bump();
                Ok(Type::Nat)
            }
            Token::KwUnit => {
                self.bump();
                Ok(Type::Unit)
            }
            Token::KwBool => {
                self.bump();
                Ok(Type::bool())
            }
            Token::LParen => {
                self.bump();
                let ty = self.ty()?;
                self.expect(&Token::RParen)?;
                Ok(ty)
            }
            _ => Err(self.unexpected(&["a type"])),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Token::KwFun => {
                self.bump();
                let name = self.ident()?;
                self.expect(&Token::Colon)?;
                let annot = self.ty()?;
                self.expect(&Token::Dot)?;
                self.scope.push(name);
                let body = self.term();
                self.scope.pop();
                Ok(Term::lam(annot, body?))
            }
            Token::KwIf => {
                self.bump();
                let cond = self.term()?;
                self.expect(&Token::KwThen)?;
                let then = self.term()?;
                self.expect(&Token::KwElse)?;
                let els = self.term()?;
                Ok(Term::ite(cond, then, els))
            }
            Token::KwCase => {
                self.bump();
                let scrutinee = self.term()?;
                self.expect(&Token::KwOf)?;
                self.expect(&Token::LBrace)?;
                self.expect(&Token::KwInj1)?;
                let x1 = self.ident()?;
                self.expect(&Token::Arrow)?;
                self.scope.push(x1);
                let branch1 = self.term();
                self.scope.pop();
                let branch1 = branch1?;
                self.expect(&Token::Pipe)?;
                self.expect(&Token::KwInj2)?;
                let x2 = self.ident()?;
                self.expect(&Token::Arrow)?;
                self.scope.push(x2);
                let branch2 = self.term();
                self.scope.pop();
                let branch2 = branch2?;
                self.expect(&Token::RBrace)?;
                Ok(Term::case(scrutinee, branch1, branch2))
            }
            Token::KwInj1 | Token::KwInj2 => {
                let side = if *self.peek() == Token::KwInj1 { Side::One } else { Side::Two };
                self.bump();
                self.expect(&Token::LBrace)?;
                let annot = self.ty()?;
                self.expect(&Token::RBrace)?;
                let payload = self.term()?;
                Ok(Term::inj(side, annot, payload))
            }
            _ => self.app_chain(),
        }
    }

    fn starts_atom(tok: &Token) -> bool {
        matches!(
            tok,
            Token::Ident(_)
                | Token::Nat(_)
                | Token::KwTrue
                | Token::KwFalse
                | Token::LParen
        )
    }

    fn app_chain(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while Self::starts_atom(self.peek()) {
            let arg = self.atom()?;
            t = Term::app(t, arg);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Token::Ident(name) => {
                let span = self.peek_span();
                self.bump();
                match self.scope.iter().rev().position(|n| *n == name) {
                    Some(index) => Ok(Term::Var(index)),
                    None => Err(ParseError::UnboundVariable { span, name }),
                }
            }
            Token::Nat(n) => {
                self.bump();
                Ok(Term::NatLit(n))
            }
            Token::KwTrue => {
                self.bump();
                Ok(Term::tru())
            }
            Token::KwFalse => {
                self.bump();
                Ok(Term::fls())
            }
            Token::LParen => {
                self.bump();
                if *self.peek() == Token::RParen {
                    self.bump();
                    return Ok(Term::UnitIntro);
                }
                let t = self.term()?;
                self.expect(&Token::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected(&["a term"])),
        }
    }
}
