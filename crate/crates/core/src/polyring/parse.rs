//! Recursive-descent parser for polynomial expressions:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | name | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::mpoly::MPoly;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: at,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e = e
                .to_u32()
                .filter(|&e| e <= 1000)
                .ok_or(Error::Syntax {
                    offset: at,
                    message: "exponent out of range".into(),
                })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return self.err(start, "expected an integer");
        }
        self.pos += len;
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<MPoly> {
        let n = self.vars.len();
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => self.err(at, "unexpected end of input"),
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.eat('/') {
                    self.skip_ws();
                    let dat = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err(dat, "zero denominator");
                    }
                    return Ok(MPoly::constant(n, BigRational::new(num, den)));
                }
                Ok(MPoly::constant(n, BigRational::from_integer(num)))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    let at = self.pos;
                    return self.err(at, "expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let len = self.src[at..]
                    .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                    .unwrap_or(self.src.len() - at);
                let name = &self.src[at..at + len];
                self.pos += len;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MPoly::var(n, i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        offset: at,
                    }),
                }
            }
            Some(c) => self.err(at, format!("unexpected {c:?}")),
        }
    }
}

/// Parses `text` as a polynomial in the named variables.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MPoly> {
    let mut p = Parser { src: text, pos: 0, vars };
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        let at = p.pos;
        return p.err(at, format!("unexpected {c:?}"));
    }
    Ok(out)
}
