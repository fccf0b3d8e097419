//! Position-annotated s-expression reader.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum SExpr {
    Atom(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Result<&str> {
        match self {
            SExpr::Atom(s, _) => Ok(s),
            SExpr::List(_, p) => Err(p.err("expected an atom")),
        }
    }

    pub fn as_list(&self) -> Result<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Ok(items),
            SExpr::Atom(s, p) => Err(p.err(format!("expected a list, found `{s}`"))),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

#[derive(Debug)]
enum Token {
    LParen(Pos),
    RParen(Pos),
    Atom(String, Pos),
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn next_token(&mut self) -> Option<Token> {
        loop {
            let p = self.pos();
            let c = *self.chars.peek()?;
            match c {
                ';' => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                c if c.is_whitespace() => {
                    self.bump();
                }
                '(' => {
                    self.bump();
                    return Some(Token::LParen(p));
                }
                ')' => {
                    self.bump();
                    return Some(Token::RParen(p));
                }
                _ => {
                    let mut s = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                            break;
                        }
                        s.push(c);
                        self.bump();
                    }
                    return Some(Token::Atom(s, p));
                }
            }
        }
    }
}

/// Reads all toplevel s-expressions.
pub fn parse_all(text: &str) -> Result<Vec<SExpr>> {
    let mut lexer = Lexer::new(text);
    let mut stack: Vec<(Vec<SExpr>, Pos)> = Vec::new();
    let mut top: Vec<SExpr> = Vec::new();
    while let Some(tok) = lexer.next_token() {
        match tok {
            Token::LParen(p) => stack.push((Vec::new(), p)),
            Token::RParen(p) => {
                let Some((items, start)) = stack.pop() else {
                    return Err(p.err("unmatched closing parenthesis"));
                };
                let e = SExpr::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
            Token::Atom(s, p) => {
                let e = SExpr::Atom(s, p);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
        }
    }
    if let Some((_, p)) = stack.pop() {
        return Err(p.err("unclosed parenthesis"));
    }
    Ok(top)
}
