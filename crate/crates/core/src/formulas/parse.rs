//! Tokenizer and precedence-climbing parser shared by LTL and CTL.
//!
//! Binding, tightest first: prefix operators (`!`, `X`, `F`, `G`, and the
//! quantifiers `E`, `A`), the binary temporal operators `U R W M` (right
//! associative), `&`, `|` (both left associative), `->` (right associative),
//! `<->` (left associative).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use super::{Alphabet, BinaryOp, Ctl, Ltl, PathFormula, Proposition, Quantifier, UnaryOp};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownProposition(String),
    /// An LTL formula mentioned `E` or `A`.
    QuantifierInLtl,
    /// A CTL temporal operator was not directly under a quantifier.
    MissingQuantifier(&'static str),
    /// A CTL quantifier was not directly followed by a temporal operator.
    QuantifierWithoutTemporal,
}

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected token `{t}`"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnknownProposition(p) => {
                write!(f, "proposition `{p}` is not in the alphabet")
            }
            ParseErrorKind::QuantifierInLtl => {
                f.write_str("path quantifiers are not allowed in LTL formulas")
            }
            ParseErrorKind::MissingQuantifier(op) => {
                write!(f, "temporal operator `{op}` must be directly preceded by E or A")
            }
            ParseErrorKind::QuantifierWithoutTemporal => {
                f.write_str("a path quantifier must be directly followed by a temporal operator")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Unary(UnaryOp),
    Binary(BinaryOp),
    Quant(Quantifier),
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => f.write_str(s),
            Tok::Unary(op) => f.write_str(op.symbol()),
            Tok::Binary(op) => f.write_str(op.symbol()),
            Tok::Quant(q) => f.write_str(q.symbol()),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "X" => Tok::Unary(UnaryOp::Next),
                "F" => Tok::Unary(UnaryOp::Finally),
                "G" => Tok::Unary(UnaryOp::Globally),
                "U" => Tok::Binary(BinaryOp::Until),
                "R" => Tok::Binary(BinaryOp::Release),
                "W" => Tok::Binary(BinaryOp::WeakUntil),
                "M" => Tok::Binary(BinaryOp::MightyRelease),
                "E" => Tok::Quant(Quantifier::Exists),
                "A" => Tok::Quant(Quantifier::Forall),
                _ => Tok::Ident(word.to_string()),
            };
            out.push((start, tok));
            continue;
        }
        let rest = &text[i..];
        let (len, tok) = if rest.starts_with("<->") || rest.starts_with("<=>") {
            (3, Tok::Binary(BinaryOp::Iff))
        } else if rest.starts_with("->") || rest.starts_with("=>") {
            (2, Tok::Binary(BinaryOp::Implies))
        } else if rest.starts_with("&&") {
            (2, Tok::Binary(BinaryOp::And))
        } else if rest.starts_with("||") {
            (2, Tok::Binary(BinaryOp::Or))
        } else {
            match c {
                b'!' | b'~' => (1, Tok::Unary(UnaryOp::Not)),
                b'&' => (1, Tok::Binary(BinaryOp::And)),
                b'|' => (1, Tok::Binary(BinaryOp::Or)),
                b'(' => (1, Tok::LParen),
                b')' => (1, Tok::RParen),
                _ => {
                    let ch = rest.chars().next().unwrap();
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnexpectedChar(ch),
                    });
                }
            }
        };
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

/// Untyped syntax tree; converted to [`Ltl`] or [`Ctl`] afterwards.
#[derive(Debug)]
enum Raw {
    Prop(usize, String),
    Unary(usize, UnaryOp, Box<Raw>),
    Binary(usize, BinaryOp, Box<Raw>, Box<Raw>),
    Quant(usize, Quantifier, Box<Raw>),
}

impl Raw {
    fn position(&self) -> usize {
        match self {
            Raw::Prop(p, _) | Raw::Unary(p, ..) | Raw::Binary(p, ..) | Raw::Quant(p, ..) => *p,
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn binary_level(op: BinaryOp) -> u8 {
    match op {
        BinaryOp::Iff => 1,
        BinaryOp::Implies => 2,
        BinaryOp::Or => 3,
        BinaryOp::And => 4,
        _ => 5,
    }
}

fn right_associative(op: BinaryOp) -> bool {
    op == BinaryOp::Implies || op.is_temporal()
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error_here(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((p, t)) => ParseError {
                position: *p,
                kind: ParseErrorKind::UnexpectedToken(t.to_string()),
            },
            None => ParseError {
                position: self.end,
                kind: ParseErrorKind::UnexpectedEnd,
            },
        }
    }

    fn expr(&mut self, min_level: u8) -> Result<Raw, ParseError> {
        let mut left = self.prefix()?;
        while let Some(&Tok::Binary(op)) = self.peek() {
            let level = binary_level(op);
            if level < min_level {
                break;
            }
            let at = self.here();
            self.pos += 1;
            let next_min = if right_associative(op) { level } else { level + 1 };
            let right = self.expr(next_min)?;
            left = Raw::Binary(at, op, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn prefix(&mut self) -> Result<Raw, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Unary(op)) => {
                self.pos += 1;
                Ok(Raw::Unary(at, op, Box::new(self.prefix()?)))
            }
            Some(Tok::Quant(q)) => {
                self.pos += 1;
                Ok(Raw::Quant(at, q, Box::new(self.prefix()?)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Raw::Prop(at, name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr(1)?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.error_here()),
                }
            }
            _ => Err(self.error_here()),
        }
    }
}

fn parse_raw(text: &str) -> Result<Raw, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let raw = parser.expr(1)?;
    if parser.pos != parser.toks.len() {
        return Err(parser.error_here());
    }
    Ok(raw)
}

fn resolve(at: usize, name: &str, alphabet: Option<&Alphabet>) -> Result<Proposition, ParseError> {
    let unknown = || ParseError {
        position: at,
        kind: ParseErrorKind::UnknownProposition(name.to_string()),
    };
    match alphabet {
        Some(a) => a.get(name).cloned().ok_or_else(unknown),
        None => Proposition::new(name).map_err(|_| unknown()),
    }
}

fn to_ltl(raw: &Raw, alphabet: Option<&Alphabet>) -> Result<Ltl, ParseError> {
    Ok(match raw {
        Raw::Prop(at, name) => Ltl::Prop(resolve(*at, name, alphabet)?),
        Raw::Unary(_, op, c) => Ltl::Unary(*op, Arc::new(to_ltl(c, alphabet)?)),
        Raw::Binary(_, op, l, r) => Ltl::Binary(
            *op,
            Arc::new(to_ltl(l, alphabet)?),
            Arc::new(to_ltl(r, alphabet)?),
        ),
        Raw::Quant(at, ..) => {
            return Err(ParseError {
                position: *at,
                kind: ParseErrorKind::QuantifierInLtl,
            })
        }
    })
}

fn to_ctl(raw: &Raw, alphabet: Option<&Alphabet>) -> Result<Ctl, ParseError> {
    Ok(match raw {
        Raw::Prop(at, name) => Ctl::Prop(resolve(*at, name, alphabet)?),
        Raw::Unary(_, UnaryOp::Not, c) => Ctl::Not(Arc::new(to_ctl(c, alphabet)?)),
        Raw::Unary(at, op, _) => {
            return Err(ParseError {
                position: *at,
                kind: ParseErrorKind::MissingQuantifier(op.symbol()),
            })
        }
        Raw::Binary(at, op, l, r) => {
            if op.is_temporal() {
                return Err(ParseError {
                    position: *at,
                    kind: ParseErrorKind::MissingQuantifier(op.symbol()),
                });
            }
            Ctl::Binary(
                *op,
                Arc::new(to_ctl(l, alphabet)?),
                Arc::new(to_ctl(r, alphabet)?),
            )
        }
        Raw::Quant(at, q, body) => match body.as_ref() {
            Raw::Unary(_, op, c) if op.is_temporal() => Ctl::Quantified(
                *q,
                PathFormula::Unary(*op, Arc::new(to_ctl(c, alphabet)?)),
            ),
            Raw::Binary(_, op, l, r) if op.is_temporal() => Ctl::Quantified(
                *q,
                PathFormula::Binary(
                    *op,
                    Arc::new(to_ctl(l, alphabet)?),
                    Arc::new(to_ctl(r, alphabet)?),
                ),
            ),
            other => {
                let _ = other.position();
                return Err(ParseError {
                    position: *at,
                    kind: ParseErrorKind::QuantifierWithoutTemporal,
                });
            }
        },
    })
}

/// Parses an LTL formula whose propositions must all belong to `alphabet`.
pub fn parse_ltl(text: &str, alphabet: &Alphabet) -> Result<Ltl, ParseError> {
    to_ltl(&parse_raw(text)?, Some(alphabet))
}

/// Parses a CTL formula whose propositions must all belong to `alphabet`.
pub fn parse_ctl(text: &str, alphabet: &Alphabet) -> Result<Ctl, ParseError> {
    to_ctl(&parse_raw(text)?, Some(alphabet))
}

impl FromStr for Ltl {
    type Err = ParseError;

    /// Parses without an alphabet restriction.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        to_ltl(&parse_raw(s)?, None)
    }
}

impl FromStr for Ctl {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        to_ctl(&parse_raw(s)?, None)
    }
}
