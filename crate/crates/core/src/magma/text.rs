//! Text format for polynomials, words and contexts.
//!
//! ```text
//! poly     := ['-'] term (('+'|'-') term)*  |  '0'
//! term     := [rational '*'] word
//! word     := var | '(' word '*' word ')'
//! var      := 'x' int
//! rational := int ['/' int]
//! ```
//!
//! Whitespace is ignored. Contexts use the same word grammar with a single `_` leaf.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::MultiPoly;
use super::word::{Context, MagmaWord, VarId, HOLE, NODE};
use crate::error::{Error, Result};
use crate::Coefficient;

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn word_tokens(&mut self, out: &mut Vec<u16>, allow_hole: bool) -> Result<()> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                out.push(NODE);
                self.word_tokens(out, allow_hole)?;
                self.expect(b'*')?;
                self.word_tokens(out, allow_hole)?;
                self.expect(b')')
            }
            Some(b'x') => {
                self.pos += 1;
                let d = self.digits()?;
                let idx: u32 = d.parse().map_err(|_| self.error("variable index too large"))?;
                let v = VarId::new(idx)?;
                out.push(v.token());
                Ok(())
            }
            Some(b'_') if allow_hole => {
                self.pos += 1;
                out.push(HOLE);
                Ok(())
            }
            _ => Err(self.error("expected a word")),
        }
    }

    fn rational(&mut self) -> Result<Coefficient> {
        let num: BigInt = self.digits()?.parse().expect("digit string");
        let den: BigInt = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.digits()?.parse().expect("digit string")
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return Err(self.error("zero denominator"));
        }
        Ok(Coefficient::new(num, den))
    }

    fn term(&mut self) -> Result<(MagmaWord, Coefficient)> {
        let coeff = if matches!(self.peek(), Some(b'0'..=b'9')) {
            let c = self.rational()?;
            self.expect(b'*')?;
            c
        } else {
            Coefficient::one()
        };
        let mut tokens = Vec::new();
        self.word_tokens(&mut tokens, false)?;
        Ok((MagmaWord::from_tokens(tokens), coeff))
    }
}

pub fn parse_word(s: &str) -> Result<MagmaWord> {
    let mut cur = Cursor::new(s);
    let mut tokens = Vec::new();
    cur.word_tokens(&mut tokens, false)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(MagmaWord::from_tokens(tokens))
}

pub fn parse_context(s: &str) -> Result<Context> {
    let mut cur = Cursor::new(s);
    let mut tokens = Vec::new();
    cur.word_tokens(&mut tokens, true)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    if tokens.iter().filter(|&&t| t == HOLE).count() != 1 {
        return Err(Error::Parse(format!("context {s:?} must contain exactly one '_'")));
    }
    Ok(Context::from_tokens(tokens))
}

pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let mut cur = Cursor::new(s);
    if cur.peek() == Some(b'0') {
        let save = cur.pos;
        cur.pos += 1;
        if cur.at_end() {
            return Ok(MultiPoly::zero());
        }
        cur.pos = save;
    }
    let mut out = MultiPoly::zero();
    let mut negate = false;
    if cur.peek() == Some(b'-') {
        cur.pos += 1;
        negate = true;
    }
    loop {
        let (w, c) = cur.term()?;
        out.add_term(w, if negate { -c } else { c });
        match cur.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return Err(cur.error("expected '+' or '-'")),
        }
        cur.pos += 1;
    }
    Ok(out)
}

pub fn parse_rational(s: &str) -> Result<Coefficient> {
    let mut cur = Cursor::new(s);
    let neg = if cur.peek() == Some(b'-') {
        cur.pos += 1;
        true
    } else {
        false
    };
    let c = cur.rational()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(if neg { -c } else { c })
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(c: &Coefficient) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{}*", format_rational(&a))?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}
