//! Recursive descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := 'top' | 'bot' | IDENT | '(' formula ')'
//!          | 'box' formula | 'dia' formula
//!          | formula '&' formula | formula '|' formula
//!          | 'nu' IDENT '.' formula | 'mu' IDENT '.' formula
//! ```
//!
//! `box`/`dia` bind tighter than `&`, which binds tighter than `|`; both
//! binary operators associate to the left. A binder body extends as far to
//! the right as possible. `#` starts a comment running to the end of the line.
//!
//! Identifiers bound by an enclosing binder become [`Formula::Var`]; all
//! others are atoms.

use super::{Binder, Formula};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Box,
    Dia,
    Nu,
    Mu,
    And,
    Or,
    LParen,
    RParen,
    Dot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Top => "`top`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::Box => "`box`".into(),
            Tok::Dia => "`dia`".into(),
            Tok::Nu => "`nu`".into(),
            Tok::Mu => "`mu`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn syntax(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "top" => Tok::Top,
                "bot" => Tok::Bot,
                "box" => Tok::Box,
                "dia" => Tok::Dia,
                "nu" => Tok::Nu,
                "mu" => Tok::Mu,
                _ => Tok::Ident(word),
            };
            out.push((tok, pos));
            continue;
        }
        let tok = match c {
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    scope: Vec<(String, Binder)>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!(
                    "expected {}, found {}",
                    want.describe(),
                    self.peek().describe()
                ),
            ))
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let pos = self.pos();
        match self.bump() {
            Tok::Box => Ok(Formula::boxed(self.unary()?)),
            Tok::Dia => Ok(Formula::dia(self.unary()?)),
            Tok::Nu => self.binder(Binder::Nu),
            Tok::Mu => self.binder(Binder::Mu),
            Tok::Top => Ok(Formula::Top),
            Tok::Bot => Ok(Formula::Bot),
            Tok::Ident(name) => Ok(match self.scope.iter().rev().find(|(x, _)| *x == name) {
                Some((_, b)) => Formula::Var(name, b.var_kind()),
                None => Formula::Atom(name),
            }),
            Tok::LParen => {
                let inner = self.disjunction()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(syntax(
                pos,
                format!("expected a formula, found {}", other.describe()),
            )),
        }
    }

    fn binder(&mut self, binder: Binder) -> Result<Formula> {
        let pos = self.pos();
        let var = match self.bump() {
            Tok::Ident(x) => x,
            other => {
                return Err(syntax(
                    pos,
                    format!(
                        "expected a variable after `{}`, found {}",
                        binder.keyword(),
                        other.describe()
                    ),
                ))
            }
        };
        self.expect(Tok::Dot)?;
        self.scope.push((var.clone(), binder));
        let body = self.disjunction();
        self.scope.pop();
        Ok(Formula::binder(binder, &var, body?))
    }
}

/// Parses a formula. Identifiers not bound by an enclosing binder are atoms;
/// use [`Formula::open_var`] to read one of them as a free variable.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        scope: Vec::new(),
    };
    let f = p.disjunction()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(
            p.pos(),
            format!("unexpected {} after formula", p.peek().describe()),
        ));
    }
    Ok(f)
}
