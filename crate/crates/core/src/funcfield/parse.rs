//! Text syntax for rational functions, places and divisors.
//!
//! Functions are expressions over `t` (and the field generator `g` when q
//! is not prime): `(t^2+1)/t^3`, `2*t+g`. Divisors are signed sums of
//! places with integer multiplicities: `3*(t^2+t+1) - 2*inf`, `0`.

use super::divisor::{Divisor, Place};
use super::fq::{check_q, tables, Fq};
use super::poly::Poly;
use super::ratfn::RatFn;
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    q: u8,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str, q: u8) -> Result<Self> {
        check_q(q)?;
        Ok(Parser {
            s: s.as_bytes(),
            pos: 0,
            q,
        })
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("integer out of range")
            })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expr(&mut self) -> Result<RatFn> {
        let neg = self.eat(b'-');
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.power()?;
                if d.is_zero() {
                    self.pos = at;
                    return self.err("division by zero");
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let at = self.pos;
            let e = self.int()?;
            if neg && base.is_zero() {
                self.pos = at;
                return self.err("negative power of zero");
            }
            return Ok(base.pow(if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFn> {
        let q = self.q;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RatFn::t(q))
            }
            Some(b'g') => {
                if tables(q).k == 1 {
                    return self.err("symbol 'g' is only defined for non-prime q");
                }
                self.pos += 1;
                Ok(RatFn::constant(Fq::symbol_g(q)))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                Ok(RatFn::constant(Fq::from_int(q, n)))
            }
            _ => self.err("expected a number, 't', 'g' or '('"),
        }
    }

    fn place(&mut self) -> Result<Place> {
        if self.eat_word("inf") {
            return Ok(Place::Infinity);
        }
        let at = self.pos;
        let f = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                e
            }
            Some(b't') => {
                self.pos += 1;
                RatFn::t(self.q)
            }
            _ => return self.err("expected a place: 'inf', 't' or '(poly)'"),
        };
        if !f.is_poly() {
            self.pos = at;
            return self.err("place must be given by a polynomial");
        }
        Place::finite(f.num().clone()).map_err(|e| Error::Parse {
            pos: at,
            msg: e.to_string(),
        })
    }

    fn divisor_term(&mut self) -> Result<(Place, i64)> {
        let mult = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let n = self.int()?;
            self.expect(b'*')?;
            n
        } else {
            1
        };
        Ok((self.place()?, mult))
    }

    fn divisor(&mut self) -> Result<Divisor> {
        let mut d = Divisor::zero(self.q);
        self.skip_ws();
        if self.s[self.pos..] == *b"0" {
            self.pos += 1;
            return Ok(d);
        }
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            let (p, n) = self.divisor_term()?;
            d.add_term(p, sign * n);
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(d);
            }
        }
    }
}

fn finish<T>(mut p: Parser<'_>, v: T) -> Result<T> {
    if p.at_end() {
        Ok(v)
    } else {
        p.err("unexpected trailing input")
    }
}

pub fn parse_ratfn(s: &str, q: u8) -> Result<RatFn> {
    let mut p = Parser::new(s, q)?;
    let v = p.expr()?;
    finish(p, v)
}

pub fn parse_poly(s: &str, q: u8) -> Result<Poly> {
    let f = parse_ratfn(s, q)?;
    if f.is_poly() {
        Ok(f.num().clone())
    } else {
        Err(Error::Parse {
            pos: 0,
            msg: format!("{f} is not a polynomial"),
        })
    }
}

/// A place on its own: `inf`, or a monic irreducible polynomial with or
/// without parentheses.
pub fn parse_place(s: &str, q: u8) -> Result<Place> {
    let mut p = Parser::new(s, q)?;
    if let Ok(v) = p.place() {
        if let Ok(v) = finish(p, v) {
            return Ok(v);
        }
    }
    let f = parse_poly(s, q)?;
    Place::finite(f).map_err(|e| Error::Parse {
        pos: 0,
        msg: e.to_string(),
    })
}

pub fn parse_divisor(s: &str, q: u8) -> Result<Divisor> {
    let mut p = Parser::new(s, q)?;
    let v = p.divisor()?;
    finish(p, v)
}
