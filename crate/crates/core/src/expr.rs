//! Expressions over elementary vague attribute values.
//!
//! Surface syntax:
//!
//! ```text
//! expr    := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := ('!' | 'not') unary | primary
//! primary := 'bot' | 'top' | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers are letters, digits and `_`, not starting with a digit.
//! Both binary operators associate to the left.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Deepest tree the parser will build.
pub const MAX_DEPTH: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VagueExpr {
    Bot,
    Top,
    Atom(String),
    Neg(Box<VagueExpr>),
    And(Box<VagueExpr>, Box<VagueExpr>),
    Or(Box<VagueExpr>, Box<VagueExpr>),
}

impl VagueExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        VagueExpr::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: VagueExpr) -> Self {
        VagueExpr::Neg(Box::new(e))
    }

    pub fn and(a: VagueExpr, b: VagueExpr) -> Self {
        VagueExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: VagueExpr, b: VagueExpr) -> Self {
        VagueExpr::Or(Box::new(a), Box::new(b))
    }

    /// Distinct atom names.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                VagueExpr::Bot | VagueExpr::Top => {}
                VagueExpr::Atom(a) => {
                    out.insert(a.as_str());
                }
                VagueExpr::Neg(c) => stack.push(c),
                VagueExpr::And(l, r) | VagueExpr::Or(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
            }
        }
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            VagueExpr::Bot | VagueExpr::Top | VagueExpr::Atom(_) => 1,
            VagueExpr::Neg(c) => 1 + c.depth(),
            VagueExpr::And(l, r) | VagueExpr::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            VagueExpr::Or(..) => 1,
            VagueExpr::And(..) => 2,
            VagueExpr::Neg(_) => 3,
            _ => 4,
        }
    }
}

/// Canonical text with the fewest parentheses that still parses back to
/// the same tree.
impl fmt::Display for VagueExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrapped(f: &mut fmt::Formatter<'_>, e: &VagueExpr, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            VagueExpr::Bot => f.write_str("bot"),
            VagueExpr::Top => f.write_str("top"),
            VagueExpr::Atom(a) => f.write_str(a),
            VagueExpr::Neg(c) => {
                f.write_str("!")?;
                wrapped(f, c, c.precedence() < 3)
            }
            VagueExpr::And(l, r) | VagueExpr::Or(l, r) => {
                let p = self.precedence();
                wrapped(f, l, l.precedence() < p)?;
                f.write_str(if p == 1 { " | " } else { " & " })?;
                wrapped(f, r, r.precedence() <= p)
            }
        }
    }
}

impl FromStr for VagueExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Ident(&'a str),
    Bot,
    Top,
    Not,
    And,
    Or,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Bot => f.write_str("`bot`"),
            Tok::Top => f.write_str("`top`"),
            Tok::Not => f.write_str("negation"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let mut toks = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let single = match c {
            '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((i, t));
            it.next();
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if d.is_alphanumeric() || d == '_' {
                    end = j + d.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            let word = &src[i..end];
            toks.push((
                i,
                match word {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    "not" => Tok::Not,
                    _ => Tok::Ident(word),
                },
            ));
            continue;
        }
        return Err(ParseError {
            offset: i,
            expected: "an expression token".into(),
            found: format!("character {c:?}"),
        });
    }
    toks.push((src.len(), Tok::End));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
}

type Parsed = (VagueExpr, usize);

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok<'a> {
        &self.toks[self.pos].1
    }

    fn error(&self, expected: &str) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        ParseError {
            offset: *offset,
            expected: expected.into(),
            found: tok.to_string(),
        }
    }

    fn too_deep(&self) -> ParseError {
        self.error(&format!("an expression at most {MAX_DEPTH} levels deep"))
    }

    fn binary(&mut self, depth: usize, op: Tok<'static>) -> Result<Parsed, ParseError> {
        let next = |p: &mut Self| {
            if op == Tok::Or {
                p.binary(depth, Tok::And)
            } else {
                p.unary(depth)
            }
        };
        let (mut lhs, mut d) = next(self)?;
        while *self.peek() == op {
            self.pos += 1;
            let (rhs, rd) = next(self)?;
            d = d.max(rd) + 1;
            if d > MAX_DEPTH {
                return Err(self.too_deep());
            }
            lhs = if op == Tok::Or {
                VagueExpr::or(lhs, rhs)
            } else {
                VagueExpr::and(lhs, rhs)
            };
        }
        Ok((lhs, d))
    }

    fn unary(&mut self, depth: usize) -> Result<Parsed, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.too_deep());
        }
        match self.peek().clone() {
            Tok::Not => {
                self.pos += 1;
                let (e, d) = self.unary(depth + 1)?;
                if d + 1 > MAX_DEPTH {
                    return Err(self.too_deep());
                }
                Ok((VagueExpr::not(e), d + 1))
            }
            Tok::Bot => {
                self.pos += 1;
                Ok((VagueExpr::Bot, 1))
            }
            Tok::Top => {
                self.pos += 1;
                Ok((VagueExpr::Top, 1))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                Ok((VagueExpr::atom(name), 1))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.binary(depth + 1, Tok::Or)?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("an atom, `bot`, `top`, negation or `(`")),
        }
    }
}

pub fn parse(src: &str) -> Result<VagueExpr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let (e, _) = p.binary(0, Tok::Or)?;
    if *p.peek() != Tok::End {
        return Err(p.error("`&`, `|` or end of input"));
    }
    Ok(e)
}
