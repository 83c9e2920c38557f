use num_bigint::BigUint;

use super::{Monomial, Poly};
use crate::coeff::Ring;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn uint(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn small_uint(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.uint()?;
        u32::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("exponent too large")
        })
    }

    fn factor(&mut self, mono: &mut [u32; 3]) -> Result<()> {
        if self.peek() != Some(b'x') {
            return self.err("expected x1, x2 or x3");
        }
        self.pos += 1;
        let var = match self.src.get(self.pos) {
            Some(c @ b'1'..=b'3') => (c - b'1') as usize,
            _ => return self.err("expected variable index 1, 2 or 3 after 'x'"),
        };
        self.pos += 1;
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.small_uint()?;
        }
        mono[var] = mono[var]
            .checked_add(exp)
            .ok_or(Error::Syntax {
                pos: self.pos,
                msg: "exponent too large".into(),
            })?;
        Ok(())
    }

    fn term<R: Ring>(&mut self, ring: &R) -> Result<(Monomial, R::Elem)> {
        let mut mono = [0u32; 3];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.uint()?;
                    if den == BigUint::from(0u8) {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    Some(den)
                } else {
                    None
                };
                let c = ring.parse_literal(&num, den.as_ref())?;
                loop {
                    match self.peek() {
                        Some(b'*') => {
                            self.pos += 1;
                            self.factor(&mut mono)?;
                        }
                        Some(b'x') => self.factor(&mut mono)?,
                        _ => break,
                    }
                }
                c
            }
            Some(b'x') => {
                self.factor(&mut mono)?;
                while self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.factor(&mut mono)?;
                }
                ring.one()
            }
            Some(_) => return self.err("expected a coefficient or a variable"),
            None => return self.err("unexpected end of input"),
        };
        Ok((Monomial(mono), coeff))
    }
}

/// Parses the text grammar
///
/// ```text
/// poly   := '-'? term (('+'|'-') term)*
/// term   := coeff ('*'? factor)* | factor ('*' factor)*
/// factor := ('x1'|'x2'|'x3') ('^' uint)?
/// coeff  := uint | uint '/' uint
/// ```
///
/// Fractions are accepted only over Q. Error positions are byte offsets.
pub fn parse_poly<R: Ring>(text: &str, ring: &R) -> Result<Poly<R>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negate = false;
    if p.peek() == Some(b'-') {
        p.pos += 1;
        negate = true;
    }
    loop {
        let (m, c) = p.term(ring)?;
        terms.push((m, if negate { ring.neg(&c) } else { c }));
        match p.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return p.err("expected '+', '-' or end of input"),
        }
        p.pos += 1;
    }
    Ok(Poly::from_terms(ring, terms))
}
