//! Parser for the CLI polynomial syntax: sums of terms like
//! `3*X^2*Y - Z^3 + 2`, integer coefficients, variables X, Y, Z in either
//! case, `*` between factors optional.

use num_bigint::BigInt;

use super::{Monomial, RawPoly};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            chars: src.char_indices().peekable(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        self.chars.next().map(|(_, c)| c)
    }

    fn err(&mut self, what: &str) -> Error {
        let at = self
            .chars
            .peek()
            .map(|&(i, _)| i)
            .unwrap_or(self.src.len());
        Error::Parse(format!("{what} at byte {at} in {:?}", self.src))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let mut digits = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.bump().unwrap());
        }
        if digits.is_empty() {
            return Err(self.err("expected digits"));
        }
        digits
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {digits:?}: {e}")))
    }

    /// One term: optional integer coefficient and any number of variable
    /// factors, joined by optional `*`.
    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        self.skip_ws();
        let mut coeff = BigInt::from(1);
        let mut exps = [0u32; 3];
        let mut saw_anything = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.integer()?;
            saw_anything = true;
        }
        loop {
            self.skip_ws();
            let mut consumed_star = false;
            if self.peek() == Some('*') {
                if !saw_anything {
                    return Err(self.err("'*' needs a left factor"));
                }
                self.bump();
                self.skip_ws();
                consumed_star = true;
            }
            let var = match self.peek() {
                Some('X') | Some('x') => 0usize,
                Some('Y') | Some('y') => 1,
                Some('Z') | Some('z') => 2,
                _ => {
                    if consumed_star {
                        return Err(self.err("expected a factor after '*'"));
                    }
                    break;
                }
            };
            self.bump();
            saw_anything = true;
            let mut e = 1u32;
            self.skip_ws();
            if self.peek() == Some('^') {
                self.bump();
                self.skip_ws();
                let big = self.integer()?;
                e = big
                    .try_into()
                    .map_err(|_| Error::Parse("exponent too large".into()))?;
            }
            exps[var] = exps[var]
                .checked_add(e)
                .ok_or_else(|| Error::Parse("exponent too large".into()))?;
        }
        if !saw_anything {
            return Err(self.err("expected a term"));
        }
        Ok((Monomial::new(exps[0], exps[1], exps[2]), coeff))
    }
}

pub fn parse_polynomial(src: &str) -> Result<RawPoly> {
    let mut cur = Cursor::new(src);
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut sign = BigInt::from(1);
    if cur.peek() == Some('-') {
        cur.bump();
        sign = BigInt::from(-1);
    } else if cur.peek() == Some('+') {
        cur.bump();
    }
    loop {
        let (mon, coeff) = cur.term()?;
        terms.push((mon, coeff * &sign));
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.bump();
                sign = BigInt::from(1);
            }
            Some('-') => {
                cur.bump();
                sign = BigInt::from(-1);
            }
            Some(_) => return Err(cur.err("expected '+', '-', or end of input")),
        }
    }
    Ok(RawPoly { terms })
}
