//! Parser for the polynomial text form: caret powers, `*` products,
//! integer or `a/b` coefficients, e.g. `x^2*y - 3*z + 1`.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{Monomial, PolyRing, Polynomial};
use crate::arith::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Caret,
    Star,
    Plus,
    Minus,
    Slash,
}

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col_offset: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize, col_offset: usize) -> Self {
        Lexer { src, chars: src.char_indices().collect(), pos: 0, line, col_offset }
    }

    fn col(&self) -> usize {
        let byte = self
            .chars
            .get(self.pos)
            .map(|(b, _)| *b)
            .unwrap_or(self.src.len());
        self.col_offset + byte + 1
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn next_token(&mut self) -> Result<Option<(Token, usize)>> {
        while let Some((_, c)) = self.chars.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
        let col = self.col();
        let Some(&(_, c)) = self.chars.get(self.pos) else {
            return Ok(None);
        };
        let tok = match c {
            '^' => {
                self.pos += 1;
                Token::Caret
            }
            '*' => {
                self.pos += 1;
                Token::Star
            }
            '+' => {
                self.pos += 1;
                Token::Plus
            }
            '-' => {
                self.pos += 1;
                Token::Minus
            }
            '/' => {
                self.pos += 1;
                Token::Slash
            }
            d if d.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .map(|(_, c)| c.is_ascii_digit())
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
                Token::Int(BigInt::from_str(&text).expect("digits parse"))
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .map(|(_, c)| c.is_alphanumeric() || *c == '_')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
                Token::Ident(text)
            }
            other => return Err(self.error(format!("unexpected character '{other}'"))),
        };
        Ok(Some((tok, col)))
    }
}

struct Parser<F: Field> {
    ring: Arc<PolyRing<F>>,
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<F: Field> Parser<F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn cur_col(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.cur_col(), msg)
    }

    fn error_at(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.line, col, msg)
    }

    fn parse_poly(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.ring.zero();
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Token::Plus) => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let term = self.parse_term()?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Token::Minus) => {
                    self.bump();
                    negate = true;
                }
                None => return Ok(acc),
                Some(t) => return Err(self.error(format!("expected '+' or '-', found {t:?}"))),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.parse_factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            let f = self.parse_factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial<F>> {
        match self.bump() {
            Some((Token::Int(n), col)) => {
                // optional /denominator
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some((Token::Int(d), dcol)) => {
                            let c = self
                                .ring
                                .field()
                                .from_decimal(&n, &d)
                                .map_err(|e| self.error_at(dcol, e.to_string()))?;
                            Ok(self.ring.constant(c))
                        }
                        _ => Err(self.error("expected denominator after '/'")),
                    }
                } else {
                    let c = self
                        .ring
                        .field()
                        .from_decimal(&n, &BigInt::one())
                        .map_err(|e| self.error_at(col, e.to_string()))?;
                    Ok(self.ring.constant(c))
                }
            }
            Some((Token::Ident(name), col)) => {
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| self.error_at(col, format!("unknown variable '{name}'")))?;
                let exp: u32 = if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    match self.bump() {
                        Some((Token::Int(e), ecol)) => u32::try_from(&e)
                            .map_err(|_| self.error_at(ecol, "exponent out of range"))?,
                        _ => return Err(self.error("expected exponent after '^'")),
                    }
                } else {
                    1
                };
                let mut exps = vec![0u32; self.ring.nvars()];
                exps[idx] = exp;
                Ok(self.ring.monomial_poly(Monomial::from_exponents(&exps)))
            }
            Some((t, col)) => {
                Err(self.error_at(col, format!("expected coefficient or variable, found {t:?}")))
            }
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parse one polynomial. `line` and `col_offset` locate the text inside a
/// larger file so errors carry file positions.
pub fn parse_polynomial_at<F: Field>(
    ring: &Arc<PolyRing<F>>,
    text: &str,
    line: usize,
    col_offset: usize,
) -> Result<Polynomial<F>> {
    let mut lexer = Lexer::new(text, line, col_offset);
    let mut tokens = Vec::new();
    while let Some(tok) = lexer.next_token()? {
        tokens.push(tok);
    }
    if tokens.is_empty() {
        return Err(Error::parse(line, col_offset + 1, "empty polynomial"));
    }
    let end_col = col_offset + text.len() + 1;
    let mut parser = Parser { ring: Arc::clone(ring), tokens, pos: 0, line, end_col };
    parser.parse_poly()
}

pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Polynomial<F>> {
    parse_polynomial_at(ring, text, 1, 0)
}
