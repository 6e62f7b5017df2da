//! Recursive-descent parser for scalar expressions in `q` (and `s = q^(1/2)`).
//!
//! Accepts everything the renderer emits plus ordinary arithmetic:
//! `+ - * /`, parentheses, integer literals, `q^k`, `q^(k/2)`, `q^{k/2}`, `s^k`.

use num_bigint::BigInt;
use num_rational::Rational64;

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let pos = self.pos;
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| Error::Parse {
                    pos,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let (base, gen) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        match gen {
            Some(weight) => {
                let k = e * Rational64::from_integer(weight);
                if !k.is_integer() {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "exponent is not a multiple of 1/2 in q".into(),
                    });
                }
                Ok(Scalar::s_pow(k.to_integer()))
            }
            None => {
                if !e.is_integer() {
                    return Err(Error::Parse {
                        pos: start,
                        msg: "fractional power of a compound expression".into(),
                    });
                }
                let k = e.to_integer();
                if k < 0 && base.is_zero() {
                    return Err(self.err("negative power of zero"));
                }
                Ok(base.pow(k))
            }
        }
    }

    /// Returns the value and, for a bare generator, its weight in powers of `s`.
    fn atom(&mut self) -> Result<(Scalar, Option<i64>)> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok((v, None))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok((Scalar::q(), Some(2)))
            }
            Some(b's') => {
                self.pos += 1;
                Ok((Scalar::s(), Some(1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok((Scalar::integer(n), None))
            }
            _ => Err(self.err("expected number, 'q', 's' or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small_integer(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let pos = self.pos;
        let n: i64 = self.integer()?.try_into().map_err(|_| Error::Parse {
            pos,
            msg: "exponent too large".into(),
        })?;
        Ok(if neg { -n } else { n })
    }

    fn exponent(&mut self) -> Result<Rational64> {
        let close = if self.eat(b'(') {
            Some(b')')
        } else if self.eat(b'{') {
            Some(b'}')
        } else {
            None
        };
        let n = self.small_integer()?;
        let Some(close) = close else {
            return Ok(Rational64::from_integer(n));
        };
        let d = if self.eat(b'/') {
            self.small_integer()?
        } else {
            1
        };
        if d == 0 {
            return Err(self.err("zero denominator in exponent"));
        }
        if !self.eat(close) {
            return Err(self.err("unterminated exponent"));
        }
        Ok(Rational64::new(n, d))
    }
}
