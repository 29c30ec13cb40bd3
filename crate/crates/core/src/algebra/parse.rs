//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' power)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! Exponents must evaluate to non-negative integer constants and divisors to
//! nonzero constants. Juxtaposition (`2x`, `x y`) is rejected. Identifiers
//! that are not ring variables may be bound to integers through
//! [`ParseOptions::params`].

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::polynomial::{Polynomial, Ring};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, AlgebraError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "+-*/^(),".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
            column += 1;
            i += 1;
            continue;
        }
        return Err(AlgebraError::Syntax {
            line: l0,
            column: c0,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Optional integer bindings for identifiers that are not ring variables.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    pub params: BTreeMap<String, i64>,
}

impl ParseOptions {
    pub fn with_param(mut self, name: &str, value: i64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: &'a Arc<Ring>,
    opts: &'a ParseOptions,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expr(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            if self.is_sym('+') {
                self.bump();
                acc = &acc + &self.term()?;
            } else if self.is_sym('-') {
                self.bump();
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.bump();
                acc = &acc * &self.unary()?;
            } else if self.is_sym('/') {
                let slash = self.bump();
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(self.error_at(&slash, "division is only allowed by a nonzero constant"));
                }
                let c = d.coefficient(&super::ExponentVector::zero(self.ring.nvars()));
                acc = acc.scale(&c.inverse());
            } else {
                let t = self.peek().clone();
                if matches!(t.tok, Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(')) {
                    return Err(self.error_at(&t, "implicit multiplication is not allowed; use `*`"));
                }
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, AlgebraError> {
        if self.is_sym('-') {
            self.bump();
            return Ok(-&self.unary()?);
        }
        if self.is_sym('+') {
            self.bump();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, AlgebraError> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        let caret = self.bump();
        let exp_tok = self.peek().clone();
        let e = self.power()?;
        let k = constant_integer(&e)
            .and_then(|k| k.to_u32())
            .ok_or_else(|| self.error_at(&exp_tok, "exponent must be a non-negative integer constant"))?;
        let _ = caret;
        Ok(base.pow(k))
    }

    fn atom(&mut self) -> Result<Polynomial, AlgebraError> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(v) => Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(v))),
            Tok::Ident(name) => {
                if let Some(i) = self.ring.var_index(name) {
                    Ok(Polynomial::var(self.ring, i))
                } else if let Some(&v) = self.opts.params.get(name) {
                    Ok(Polynomial::from_i64(self.ring, v))
                } else {
                    Err(AlgebraError::UnknownVariable {
                        name: name.clone(),
                        line: t.line,
                        column: t.column,
                    })
                }
            }
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.is_sym(')') {
                    let here = self.peek().clone();
                    return Err(self.error_at(&here, "expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(self.error_at(&t, "unexpected end of input")),
            Tok::Sym(c) => Err(self.error_at(&t, format!("unexpected `{c}`"))),
        }
    }
}

/// Integer value of a constant polynomial; only meaningful over `Q` for
/// exponents, but prime-field constants fall back to their representative.
fn constant_integer(p: &Polynomial) -> Option<BigInt> {
    if !p.is_constant() {
        return None;
    }
    if p.is_zero() {
        return Some(BigInt::from(0));
    }
    let c = p.coefficient(&super::ExponentVector::zero(p.ring().nvars()));
    let v = c.to_integer()?;
    if v.is_negative() {
        None
    } else {
        Some(v)
    }
}

fn run<T>(
    text: &str,
    ring: &Arc<Ring>,
    opts: &ParseOptions,
    body: impl FnOnce(&mut Parser<'_>) -> Result<T, AlgebraError>,
) -> Result<T, AlgebraError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        opts,
    };
    let out = body(&mut p)?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.error_at(&t, "trailing input"));
    }
    Ok(out)
}

/// Parses a single polynomial over `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, AlgebraError> {
    parse_polynomial_with(text, ring, &ParseOptions::default())
}

pub fn parse_polynomial_with(
    text: &str,
    ring: &Arc<Ring>,
    opts: &ParseOptions,
) -> Result<Polynomial, AlgebraError> {
    run(text, ring, opts, |p| p.expr())
}

/// Parses a comma-separated list, optionally wrapped in `( )` or `[ ]`.
pub fn parse_polynomial_list(
    text: &str,
    ring: &Arc<Ring>,
    opts: &ParseOptions,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let trimmed = text.trim();
    let inner = strip_brackets(trimmed);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    run(inner, ring, opts, |p| {
        let mut v = vec![p.expr()?];
        while p.is_sym(',') {
            p.bump();
            v.push(p.expr()?);
        }
        Ok(v)
    })
}

/// Removes one pair of enclosing `()` or `[]` when they match each other.
pub(crate) fn strip_brackets(s: &str) -> &str {
    let s = s.trim();
    let pairs = [('(', ')'), ('[', ']'), ('{', '}')];
    for (open, close) in pairs {
        if s.starts_with(open) && s.ends_with(close) {
            let mut depth = 0i32;
            let mut closes_at_end = true;
            for (i, c) in s.char_indices() {
                if c == open {
                    depth += 1;
                } else if c == close {
                    depth -= 1;
                    if depth == 0 && i != s.len() - 1 {
                        closes_at_end = false;
                        break;
                    }
                }
            }
            if closes_at_end {
                return &s[1..s.len() - 1];
            }
        }
    }
    s
}

/// Identifiers appearing in `text`, sorted, excluding bound parameters.
pub fn infer_variables(text: &str, opts: &ParseOptions) -> Result<Vec<String>, AlgebraError> {
    let mut names = BTreeSet::new();
    for t in tokenize(text)? {
        if let Tok::Ident(n) = t.tok {
            if !opts.params.contains_key(&n) {
                names.insert(n);
            }
        }
    }
    Ok(names.into_iter().collect())
}
