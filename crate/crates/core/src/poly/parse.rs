use num_bigint::BigInt;

use super::IntPoly;
use crate::{Error, Result};

/// Largest accepted exponent; anything bigger is almost certainly a typo and
/// would only waste memory.
const MAX_EXPONENT: u32 = 10_000;

/// Parse an integer polynomial in one variable.
///
/// Accepted syntax: signed integer coefficients, a single ASCII letter as the
/// variable, `^` for powers, optional `*` between coefficient and variable,
/// and arbitrary whitespace, e.g. `t^2 - t + 10` or `-7*u^4 + 3`. Returns
/// the polynomial and the variable letter (`None` when the input is
/// constant). Errors carry the byte position of the offending character.
pub fn parse_poly(input: &str) -> Result<(IntPoly, Option<char>)> {
    Parser { bytes: input.as_bytes(), pos: 0 }.parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<(IntPoly, Option<char>)> {
        let mut poly = IntPoly::zero();
        let mut var: Option<char> = None;
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(_) => return Err(self.error("expected '+' or '-' between terms")),
                None => break,
            };
            first = false;
            let (coeff, exp) = self.term(&mut var)?;
            let coeff = if negative { -coeff } else { coeff };
            poly = &poly + &IntPoly::monomial(coeff, exp as usize);
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok((poly, var))
    }

    /// One term: `integer`, `var`, `var^k`, `c*var^k`, `c var^k`, ...
    fn term(&mut self, var: &mut Option<char>) -> Result<(BigInt, u32)> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.integer()?;
                self.skip_ws();
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        self.skip_ws();
                        let exp = self.var_part(var)?;
                        Ok((coeff, exp))
                    }
                    Some(c) if c.is_ascii_alphabetic() => {
                        let exp = self.var_part(var)?;
                        Ok((coeff, exp))
                    }
                    _ => Ok((coeff, 0)),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let exp = self.var_part(var)?;
                Ok((BigInt::from(1), exp))
            }
            _ => Err(self.error("expected a coefficient or a variable")),
        }
    }

    /// `x` or `x^k` where `x` is a letter; checks variable consistency.
    fn var_part(&mut self, var: &mut Option<char>) -> Result<u32> {
        let at = self.pos;
        let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic()) else {
            return Err(self.error("expected a variable after '*'"));
        };
        let letter = c as char;
        match var {
            Some(v) if *v != letter => {
                self.pos = at;
                return Err(self.error(&format!("mixed variables '{v}' and '{letter}'")));
            }
            Some(_) => {}
            None => *var = Some(letter),
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let exp = self.integer()?;
            let exp: u32 = exp.try_into().map_err(|_| Error::Parse {
                position: at,
                message: "exponent must be a nonnegative integer".to_string(),
            })?;
            if exp > MAX_EXPONENT {
                return Err(Error::Parse {
                    position: at,
                    message: format!("exponent exceeds {MAX_EXPONENT}"),
                });
            }
            Ok(exp)
        } else {
            Ok(1)
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let digits = &self.bytes[start..self.pos];
        Ok(BigInt::parse_bytes(digits, 10).expect("digits parse"))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.to_string() }
    }
}
