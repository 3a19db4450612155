//! Shared expression grammar for polynomials and crossed-product elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | identifier | '(' expr ')'
//! ```
//!
//! Products keep their written order, so the same tree evaluates correctly
//! in commutative and noncommutative rings.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coefficients::Rational;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    Number(Rational),
    Ident { name: String, column: usize },
    Group(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub atom: Atom,
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub negative: bool,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let factors = self.term()?;
            terms.push(Term { negative, factors });
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negative = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negative = true;
                }
                _ => break,
            }
        }
        Ok(Expr { terms })
    }

    fn term(&mut self) -> Result<Vec<Factor>, ParseError> {
        let mut factors = vec![self.factor()?];
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        let atom = self.atom()?;
        let mut power = 1;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let col = self.column();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    power = u32::try_from(n)
                        .map_err(|_| ParseError::new(col, "exponent too large"))?;
                }
                _ => return Err(ParseError::new(col, "expected a nonnegative integer exponent")),
            }
        }
        Ok(Factor { atom, power })
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let col = self.column();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dcol = self.column();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => Ok(Atom::Number(Rational::new(n, d))),
                        Some(Tok::Int(_)) => Err(ParseError::new(dcol, "zero denominator")),
                        _ => Err(ParseError::new(dcol, "expected an integer denominator")),
                    }
                } else {
                    Ok(Atom::Number(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => Ok(Atom::Ident { name, column: col }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let rcol = self.column();
                match self.bump() {
                    Some(Tok::RParen) => Ok(Atom::Group(inner)),
                    _ => Err(ParseError::new(rcol, "expected `)`")),
                }
            }
            Some(_) => Err(ParseError::new(col, "expected a number, identifier, or `(`")),
            None => Err(ParseError::new(col, "unexpected end of input")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::new(p.column(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Ring operations needed to fold an [`Expr`] into a value.
pub trait Evaluator {
    type Value: Clone;
    fn number(&self, r: &Rational) -> Self::Value;
    fn ident(&self, name: &str, column: usize) -> Result<Self::Value, ParseError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
}

pub fn evaluate<E: Evaluator>(expr: &Expr, ev: &E) -> Result<E::Value, ParseError> {
    let mut acc: Option<E::Value> = None;
    for term in &expr.terms {
        let mut prod = ev.number(&Rational::one());
        for f in &term.factors {
            let base = match &f.atom {
                Atom::Number(r) => ev.number(r),
                Atom::Ident { name, column } => ev.ident(name, *column)?,
                Atom::Group(inner) => evaluate(inner, ev)?,
            };
            for _ in 0..f.power {
                prod = ev.mul(&prod, &base);
            }
        }
        if term.negative {
            prod = ev.neg(&prod);
        }
        acc = Some(match acc {
            None => prod,
            Some(a) => ev.add(&a, &prod),
        });
    }
    Ok(acc.unwrap_or_else(|| ev.number(&Rational::zero())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_coefficients() {
        let e = parse("3/2*x1^2*x2 - x3 + 1").unwrap();
        assert_eq!(e.terms.len(), 3);
        assert!(e.terms[1].negative);
        assert_eq!(e.terms[0].factors[1].power, 2);
    }

    #[test]
    fn reports_error_column() {
        let err = parse("x + * y").unwrap_err();
        assert_eq!(err.column, 4);
        let err = parse("x $ y").unwrap_err();
        assert_eq!(err.column, 2);
        let err = parse("(x + y").unwrap_err();
        assert_eq!(err.column, 6);
        assert!(parse("1/0").is_err());
        assert!(parse("").is_err());
    }
}
