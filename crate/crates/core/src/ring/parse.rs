//! Text form of polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! coeff  := int | int '/' nat
//! ```
//!
//! Whitespace is ignored. `Display` on [`Polynomial`] prints the same grammar.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ring::monomial::Monomial;
use crate::ring::polynomial::{Polynomial, Ring};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut terms: Vec<(Monomial, FieldElement)> = Vec::new();
        let mut negate = false;
        match self.peek() {
            None => return Err(self.error("empty polynomial")),
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { c.neg() } else { c }));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, FieldElement)> {
        let field = self.ring.field();
        let mut coeff = field.one();
        let mut exps = alloc::vec![0u32; self.ring.nvars()];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = self.coefficient()?;
                    coeff = coeff.mul(&v);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let (var, e) = self.factor()?;
                    exps[var] += e;
                }
                _ => return Err(self.error("expected a coefficient or a variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }

    fn coefficient(&mut self) -> Result<FieldElement> {
        let num = self.natural()?;
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.error("expected a denominator"));
            }
            self.natural()?
        } else {
            BigInt::one()
        };
        self.ring.field().fraction(&num, &den)
    }

    fn natural(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| self.error("expected an integer"))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let var = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(String::from(name)))?;
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                return Err(self.error("expected an exponent"));
            }
            let n = self.natural()?;
            e = u32::try_from(n).map_err(|_| self.error("exponent too large"))?;
        }
        Ok((var, e))
    }
}
