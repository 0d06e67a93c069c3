//! Parser for the canonical textual scalar syntax.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | 'q' | 'z' | 'X' digits | '(' expr ')'
//! ```
//!
//! `q` is only available in the generic regime, `z` (for `ζ`) only in the
//! cyclotomic regime and `X1 … XN` only in the formal regime.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;

use num_bigint::BigInt;

use super::{CycloField, Mode, Rational, Scalar};

/// A scalar syntax error with its byte offset in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl core::error::Error for ScalarParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: Mode,
    n: u32,
    field: Option<Arc<CycloField>>,
}

type PResult<T> = Result<T, ScalarParseError>;

impl Parser<'_> {
    fn err<T>(&self, message: impl ToString) -> PResult<T> {
        Err(ScalarParseError {
            offset: self.pos,
            message: message.to_string(),
        })
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

    fn digits(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn expr(&mut self) -> PResult<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    match d.try_inv() {
                        Some(inv) => acc = acc.mul(&inv),
                        None => {
                            self.pos = at;
                            return self.err("division by a non-invertible value");
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<Scalar> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e: i64 = match i64::try_from(self.digits()?) {
            Ok(e) => e,
            Err(_) => {
                self.pos = at;
                return self.err("exponent out of range");
            }
        };
        let e = if neg { -e } else { e };
        if e < 0 && base.try_inv().is_none() {
            self.pos = at;
            return self.err("negative power of a non-invertible value");
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> PResult<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(Scalar::Const(Rational::from_integer(self.digits()?)))
            }
            Some(b'q') => {
                if self.mode != Mode::QGeneric {
                    return self.err("'q' is only available in mode q");
                }
                self.pos += 1;
                Ok(Scalar::q_pow(1))
            }
            Some(b'z') => {
                let Some(field) = self.field.clone() else {
                    return self.err("'z' is only available in mode zeta");
                };
                self.pos += 1;
                Ok(Scalar::zeta(&field, 1))
            }
            Some(b'X') => {
                if self.mode != Mode::FormalX {
                    return self.err("'X' variables are only available in mode formalX");
                }
                self.pos += 1;
                let at = self.pos;
                let i = self.digits()?;
                match usize::try_from(i) {
                    Ok(i) if (1..=self.n as usize).contains(&i) => {
                        Ok(Scalar::x_var(self.n as usize, i))
                    }
                    _ => {
                        self.pos = at;
                        self.err("variable index out of range")
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a scalar in the given regime with ambient rank `n`.
pub fn parse_scalar(text: &str, mode: Mode, n: u32) -> Result<Scalar, ScalarParseError> {
    let field = (mode == Mode::Zeta && n >= 2).then(|| CycloField::new(n));
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        mode,
        n,
        field,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn round_trips_canonical_renderings() {
        for (text, mode, n) in [
            ("3/2*z^2 - 1", Mode::Zeta, 5),
            ("q^2 + 1 + q^-2", Mode::QGeneric, 2),
            ("X1*X2^-1", Mode::FormalX, 2),
            ("-1/2", Mode::Zeta, 3),
            ("-z^3 - 2*z", Mode::Zeta, 7),
        ] {
            let v = parse_scalar(text, mode, n).unwrap();
            assert_eq!(v.to_string(), text);
        }
    }

    #[test]
    fn arithmetic() {
        let v = parse_scalar("(q - q^-1)*(q + q^-1)/2", Mode::QGeneric, 2).unwrap();
        assert_eq!(v.to_string(), "1/2*q^2 - 1/2*q^-2");
        assert_eq!(parse_scalar("z^3", Mode::Zeta, 3).unwrap(), Scalar::one());
    }

    #[test]
    fn errors() {
        assert!(parse_scalar("q", Mode::Zeta, 3).is_err());
        assert!(parse_scalar("X3", Mode::FormalX, 2).is_err());
        assert!(parse_scalar("1/0", Mode::Zeta, 2).is_err());
        assert_eq!(parse_scalar("1 +", Mode::Zeta, 2).unwrap_err().offset, 3);
    }
}
