//! The monomial grammar.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '·') factor)*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | '(' expr ')' | name ['[' int ']']
//! ```
//!
//! `name[k]` is the k-th divided power of a divided-power generator; for
//! other generators it is rejected. Names may also refer to aliases, which
//! are substituted verbatim.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::{AlgebraError, Element, GeneratorKind, Presentation};
use crate::ring::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    /// Character offset into the parsed text.
    pub offset: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at character {})", self.message, self.offset + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Token::Int(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Token::Name(chars[start..i].iter().collect())));
        } else if "+-*·^[]()/".contains(c) {
            out.push((i, Token::Sym(if c == '·' { '*' } else { c })));
            i += 1;
        } else {
            return Err(ParseError { message: format!("unexpected character `{c}`"), offset: i });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    p: &'a Presentation,
    aliases: &'a BTreeMap<String, Element>,
}

/// Parses `text` into an element of `p`; `aliases` maps extra names to
/// elements of `p`.
pub fn parse_element(p: &Presentation, text: &str, aliases: &BTreeMap<String, Element>) -> Result<Element, AlgebraError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError { message: "empty expression".into(), offset: 0 }.into());
    }
    let mut parser = Parser { tokens, pos: 0, end: text.chars().count(), p, aliases };
    let e = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error("unexpected trailing input").into());
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError { message: message.to_string(), offset: self.offset() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Token::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let offset = self.offset();
        let n = self.int()?;
        u32::try_from(n).map_err(|_| ParseError { message: "exponent too large".into(), offset })
    }

    fn expr(&mut self) -> Result<Element, AlgebraError> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(&self.p.ring().from_int(-1), self.p);
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.add(&t, self.p)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.sub(&t, self.p)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element, AlgebraError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = self.p.multiply(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element, AlgebraError> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.small_int()?;
            return self.p.power(&base, k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Element, AlgebraError> {
        let ring = self.p.ring();
        match self.peek().cloned() {
            Some(Token::Int(_)) => {
                let num = self.int()?;
                let mut value = Scalar::from_integer(num);
                if self.eat('/') {
                    let offset = self.offset();
                    let den = self.int()?;
                    if den == BigInt::from(0) {
                        return Err(ParseError { message: "division by zero".into(), offset }.into());
                    }
                    value /= Scalar::from_integer(den);
                }
                let offset = self.offset();
                let value = ring
                    .try_reduce(value)
                    .map_err(|e| ParseError { message: e.to_string(), offset })?;
                Ok(self.p.unit().scale(&value, self.p))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`").into());
                }
                Ok(e)
            }
            Some(Token::Name(name)) => {
                let offset = self.offset();
                self.pos += 1;
                let divided = if self.eat('[') {
                    let k = self.small_int()?;
                    if !self.eat(']') {
                        return Err(self.error("expected `]`").into());
                    }
                    Some(k)
                } else {
                    None
                };
                if let Some(alias) = self.aliases.get(&name) {
                    if divided.is_some() {
                        return Err(ParseError { message: format!("alias `{name}` has no divided powers"), offset }.into());
                    }
                    return Ok(alias.clone());
                }
                let index = self
                    .p
                    .index_of(&name)
                    .ok_or_else(|| ParseError { message: format!("unknown generator `{name}`"), offset })?;
                match (divided, self.p.generators()[index].kind) {
                    (None, _) => Ok(self.p.generator(index)),
                    (Some(k), GeneratorKind::DividedPower) => Ok(self.p.generator_power(index, k)),
                    (Some(_), _) => Err(ParseError {
                        message: format!("`{name}` is not a divided-power generator"),
                        offset,
                    }
                    .into()),
                }
            }
            _ => Err(self.error("expected a coefficient, generator or `(`").into()),
        }
    }
}
