//! Shared text grammar for scalars and noncommutative polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | power
//! power  := atom ['^' ['-'] int | '^' '(' ['-'] int ')']
//! atom   := int | ident | '(' expr ')'
//! ```
//!
//! `i` and `sqrt2` are reserved; any other identifier (letters, digits, `_`,
//! trailing `'`) is resolved by the evaluator.

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::{FieldElement, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    BadChar(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected token {0:?} at offset {1}")]
    Unexpected(String, usize),
    #[error("exponent out of range: {0}")]
    Exponent(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|x| x.1).collect();
            out.push((Tok::Num(digits.parse().unwrap()), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            while k < chars.len() && chars[k].1 == '\'' {
                k += 1;
            }
            let name: String = chars[start..k].iter().map(|x| x.1).collect();
            out.push((Tok::Ident(name), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), pos));
            k += 1;
        } else {
            return Err(ParseError::BadChar(c, pos));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Tok::Sym(s)) if *s == c)
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.at) {
            Some((t, pos)) => ParseError::Unexpected(
                match t {
                    Tok::Num(n) => n.to_string(),
                    Tok::Ident(s) => s.clone(),
                    Tok::Sym(c) => c.to_string(),
                },
                *pos,
            ),
            None => ParseError::Eof,
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_sym(c) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = if self.peek_sym('-') {
            self.at += 1;
            Expr::Neg(Box::new(self.term()?))
        } else {
            if self.peek_sym('+') {
                self.at += 1;
            }
            self.term()?
        };
        loop {
            if self.peek_sym('+') {
                self.at += 1;
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.peek_sym('-') {
                self.at += 1;
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.peek_sym('*') {
                self.at += 1;
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.peek_sym('/') {
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek_sym('-') {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.peek_sym('^') {
            return Ok(base);
        }
        self.at += 1;
        let paren = self.peek_sym('(');
        if paren {
            self.at += 1;
        }
        let neg = self.peek_sym('-');
        if neg {
            self.at += 1;
        }
        let n = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return Err(self.unexpected()),
        };
        self.at += 1;
        if paren {
            self.expect_sym(')')?;
        }
        let mut e: i64 = n.to_string().parse().map_err(|_| ParseError::Exponent(n.to_string()))?;
        if neg {
            e = -e;
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(Expr::Ident(s))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

impl Expr {
    /// Identifiers in order of first appearance.
    pub fn identifiers(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Num(_) => {}
                Expr::Ident(s) => {
                    if !out.contains(s) {
                        out.push(s.clone())
                    }
                }
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                    walk(a, out);
                    walk(b, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// Interprets an [`Expr`] in some ring.
pub(crate) trait Evaluator {
    type Value;
    type Error: From<ParseError>;

    fn constant(&self, f: FieldElement) -> Self::Value;
    fn ident(&self, name: &str) -> Result<Self::Value, Self::Error>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, Self::Error>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value, Self::Error>;
    fn pow(&self, a: Self::Value, e: i64) -> Result<Self::Value, Self::Error>;

    fn eval(&self, e: &Expr) -> Result<Self::Value, Self::Error> {
        Ok(match e {
            Expr::Num(n) => self.constant(FieldElement::from_rational(Rational::from_integer(n.clone()))),
            Expr::Ident(s) => match s.as_str() {
                "i" => self.constant(FieldElement::i()),
                "sqrt2" => self.constant(FieldElement::sqrt2()),
                _ => self.ident(s)?,
            },
            Expr::Neg(a) => {
                let a = self.eval(a)?;
                self.neg(a)?
            }
            Expr::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.add(a, b)?
            }
            Expr::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.sub(a, b)?
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.mul(a, b)?
            }
            Expr::Div(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.div(a, b)?
            }
            Expr::Pow(a, n) => {
                let a = self.eval(a)?;
                self.pow(a, *n)?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("a - b*c^-2").unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Ident("a".into())),
                Box::new(Expr::Mul(
                    Box::new(Expr::Ident("b".into())),
                    Box::new(Expr::Pow(Box::new(Expr::Ident("c".into())), -2))
                ))
            )
        );
    }

    #[test]
    fn primes_and_parens() {
        let e = parse_expr("(a' + b)*c'^(2)").unwrap();
        assert_eq!(e.identifiers(), vec!["a'", "b", "c'"]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expr("a +"), Err(ParseError::Eof)));
        assert!(matches!(parse_expr("a $ b"), Err(ParseError::BadChar('$', 2))));
        assert!(matches!(parse_expr("a b"), Err(ParseError::Unexpected(_, 2))));
    }
}
