//! Text form of polynomials.
//!
//! Grammar: terms joined by `+`/`-`; a term is an optional integer
//! coefficient followed by `*`-joined factors `v` or `v^e`.

use super::mono::Mono;
use super::poly::{Poly, Term};
use super::RingRef;
use crate::error::{Error, Result};
use std::fmt;

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return None,
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        Some(&self.src[start..self.pos])
    }

    /// Returns -1/+1 for a sign token, None otherwise.
    fn sign(&mut self) -> Option<i64> {
        self.skip_ws();
        if self.src[self.pos..].starts_with('−') {
            self.pos += '−'.len_utf8();
            return Some(-1);
        }
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(1)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1)
            }
            _ => None,
        }
    }

    fn factor(&mut self, coef: &mut u32, exps: &mut [u16]) -> Result<()> {
        self.skip_ws();
        let f = self.ring.field();
        if let Some(d) = self.digits() {
            let v = reduce_decimal(d, self.ring.characteristic());
            *coef = f.mul(*coef, v);
            return Ok(());
        }
        let name = self.ident().ok_or_else(|| self.err("expected variable or integer"))?;
        let idx = self
            .ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        self.skip_ws();
        let mut e: u32 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let d = self.digits().ok_or_else(|| self.err("malformed exponent"))?;
            e = d.parse().map_err(|_| Error::ExponentOverflow)?;
        }
        let total = exps[idx] as u32 + e;
        exps[idx] = u16::try_from(total).map_err(|_| Error::ExponentOverflow)?;
        Ok(())
    }

    fn term(&mut self, sign: i64) -> Result<Term> {
        let f = self.ring.field();
        let mut coef = f.from_i64(sign);
        let mut exps = vec![0u16; self.ring.nvars()];
        self.factor(&mut coef, &mut exps)?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut coef, &mut exps)?;
            } else {
                break;
            }
        }
        Ok(Term {
            coef,
            mono: Mono::from_exponents(&exps),
        })
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut terms = Vec::new();
        let first = self.sign().unwrap_or(1);
        terms.push(self.term(first)?);
        loop {
            self.skip_ws();
            if self.pos == self.bytes.len() {
                break;
            }
            let s = self.sign().ok_or_else(|| self.err("expected `+` or `-`"))?;
            terms.push(self.term(s)?);
        }
        Ok(Poly::from_terms(self.ring, terms))
    }
}

fn reduce_decimal(d: &str, p: u32) -> u32 {
    d.bytes()
        .fold(0u64, |acc, c| (acc * 10 + (c - b'0') as u64) % p as u64) as u32
}

impl Poly {
    /// Parses text in the polynomial grammar; coefficients are reduced mod p.
    pub fn parse(text: &str, ring: &RingRef) -> Result<Poly> {
        let mut p = Parser {
            src: text,
            bytes: text.as_bytes(),
            pos: 0,
            ring,
        };
        p.skip_ws();
        if p.pos == p.bytes.len() {
            return Err(p.err("empty input"));
        }
        p.poly()
    }
}

pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Poly> {
    Poly::parse(text, ring)
}

pub fn format_poly(p: &Poly) -> String {
    p.to_string()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.ring().field();
        for (k, t) in self.terms().iter().enumerate() {
            let c = field.to_symmetric(t.coef);
            let neg = c < 0;
            let a = c.unsigned_abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if a != 1 || t.mono.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring().var_name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring().var_name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, MonomialOrder, MultiDegree, Ring};

    #[test]
    fn cancellation_to_zero() {
        let r = Ring::standard(&["a", "b"], 32003).unwrap();
        assert!(Poly::parse("a^2*b - a^2*b", &r).unwrap().is_zero());
    }

    #[test]
    fn bigraded_term() {
        let names = ["a", "b", "c", "d", "y1", "y2", "y3", "y4"];
        let mut grading = vec![vec![1, 0]; 4];
        grading.extend(vec![vec![0, 1]; 4]);
        let r = make_ring(&names, 32003, &grading, MonomialOrder::DegRevLex).unwrap();
        let f = Poly::parse("-y2*b + y1*c", &r).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(
            f.multidegree().unwrap(),
            MultiDegree::Homogeneous([1, 1].into_iter().collect())
        );
        let g = Poly::parse("-y3^2*c + y2*y4*d", &r).unwrap();
        assert_eq!(
            g.multidegree().unwrap(),
            MultiDegree::Homogeneous([1, 2].into_iter().collect())
        );
    }

    #[test]
    fn parse_errors() {
        let r = Ring::standard(&["x", "y"], 32003).unwrap();
        assert!(matches!(Poly::parse("x^(2)", &r), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("x*w", &r), Err(Error::UnknownVariable(_))));
        assert!(matches!(Poly::parse("x +", &r), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("", &r), Err(Error::Parse { .. })));
        assert!(matches!(Poly::parse("x^70000", &r), Err(Error::ExponentOverflow)));
    }

    #[test]
    fn formatting() {
        let r = Ring::standard(&["x", "y"], 32003).unwrap();
        let f = Poly::parse("3 - 2*x*y^2 + 32004*x^3 − y", &r).unwrap();
        assert_eq!(f.to_string(), "x^3 - 2*x*y^2 - y + 3");
        assert_eq!(Poly::parse(&f.to_string(), &r).unwrap(), f);
        assert_eq!(Poly::parse("-1", &r).unwrap().to_string(), "-1");
    }
}
