//! Recursive-descent parser for the scalar grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | symbol | '(' expr ')'
//! ```

use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::{MultiPoly, Var};
use super::{ExactScalar, Rational};
use crate::error::Error;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::ParseError(format!(
            "{msg} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactScalar, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactScalar, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = acc.div(&d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactScalar, Error> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<ExactScalar, Error> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("expected exponent"));
        }
        let k: i64 = digits.parse().map_err(|_| self.err("exponent too large"))?;
        if neg && base.is_zero() {
            return Err(self.err("division by zero"));
        }
        Ok(base.pow(if neg { -k } else { k }))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<ExactScalar, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(ExactScalar::from_rational(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(ExactScalar::from_poly(MultiPoly::var(Var::new(name))))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

/// Parses a rational literal such as `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let v: ExactScalar = text.parse()?;
    v.as_rational()
        .ok_or_else(|| Error::ParseError(format!("not a rational number: {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let v: ExactScalar = "1 - 2 - 3".parse().unwrap();
        assert_eq!(v, ExactScalar::from_int(-4));
        assert!("2^3^1".parse::<ExactScalar>().is_err());
        let v: ExactScalar = "-2^2".parse().unwrap();
        assert_eq!(v, ExactScalar::from_int(-4));
        let v: ExactScalar = "12/4/3".parse().unwrap();
        assert_eq!(v, ExactScalar::one());
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "1 +", "(s", "s)", "1/0", "2 $ 3", "s^"] {
            assert!(bad.parse::<ExactScalar>().is_err(), "{bad}");
        }
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/2").unwrap().to_string(), "-3/2");
        assert!(parse_rational("c").is_err());
    }
}
