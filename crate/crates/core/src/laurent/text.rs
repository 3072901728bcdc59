//! Canonical text form.
//!
//! Terms ascend by exponent and are joined by ` + ` / ` - `. A term is the
//! coefficient, then `*q^(e)` unless the exponent is zero; a unit coefficient
//! is omitted. Exponents are reduced fractions in parentheses. The zero
//! polynomial is `0`.
//!
//! The parser also accepts `q^k` without parentheses, `q` alone, the Unicode
//! minus sign, and arbitrary spacing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use super::{Coefficient, Laurent};
use crate::error::{Error, Result};

fn exponent_text(quarters: i64) -> String {
    let r = Ratio::new(quarters, 4);
    if r.is_integer() {
        format!("q^({})", r.numer())
    } else {
        format!("q^({}/{})", r.numer(), r.denom())
    }
}

fn magnitude_text(c: &BigRational, quarters: i64) -> String {
    let unit = c.is_one();
    match (quarters, unit) {
        (0, _) => c.to_string(),
        (_, true) => exponent_text(quarters),
        (_, false) => format!("{}*{}", c, exponent_text(quarters)),
    }
}

impl<C: Coefficient> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let r = c.to_rational();
            let neg = r.is_negative();
            let body = magnitude_text(&r.abs(), *e);
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Self { chars: src.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.digits()?;
        if self.eat('/') {
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let at = self.pos;
        let value = if self.eat('(') {
            self.skip_ws();
            let neg = self.sign() == Some(true);
            self.skip_ws();
            let r = self.rational()?;
            self.skip_ws();
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            if neg { -r } else { r }
        } else {
            let neg = self.sign() == Some(true);
            let r = BigRational::from_integer(self.digits()?);
            if neg { -r } else { r }
        };
        let quarters = value * BigRational::from_integer(BigInt::from(4));
        match (quarters.is_integer(), i64::try_from(quarters.to_integer())) {
            (true, Ok(k)) => Ok(k),
            _ => {
                self.pos = at;
                self.err("exponent not on the quarter grid")
            }
        }
    }

    fn term(&mut self, negative: bool) -> Result<(i64, BigRational)> {
        let mut coeff = BigRational::one();
        let mut quarters = 0;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.rational()?;
                self.skip_ws();
                if self.eat('*') {
                    self.skip_ws();
                    if !self.eat('q') {
                        return self.err("expected 'q' after '*'");
                    }
                    quarters = self.power()?;
                }
            }
            Some('q') => {
                self.pos += 1;
                quarters = self.power()?;
            }
            _ => return self.err("expected a term"),
        }
        Ok((quarters, if negative { -coeff } else { coeff }))
    }

    fn power(&mut self) -> Result<i64> {
        if self.eat('^') {
            self.exponent()
        } else {
            Ok(4)
        }
    }

    fn polynomial(&mut self) -> Result<Vec<(i64, BigRational)>> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = self.sign() == Some(true);
        loop {
            self.skip_ws();
            terms.push(self.term(negative)?);
            self.skip_ws();
            match self.sign() {
                Some(n) => negative = n,
                None if self.peek().is_none() => break,
                None => return self.err("expected '+', '-' or end of input"),
            }
        }
        Ok(terms)
    }
}

/// Parses the canonical text form (see the module docs).
pub fn parse<C: Coefficient>(src: &str) -> Result<Laurent<C>> {
    let mut parser = Parser::new(src);
    let terms = parser.polynomial()?;
    let converted = terms
        .into_iter()
        .map(|(e, r)| {
            C::from_rational(&r).map(|c| (e, c)).ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("coefficient {r} not representable"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Laurent::from_terms(converted))
}

impl<C: Coefficient> FromStr for Laurent<C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Laurent<BigRational>;

    #[test]
    fn canonical_rendering() {
        let two = P::from_terms([(-2, BigRational::one()), (2, BigRational::one())]);
        assert_eq!(two.to_string(), "q^(-1/2) + q^(1/2)");
        assert_eq!(P::zero().to_string(), "0");
        let f: P = "−1 + q^(3/4)".parse().unwrap();
        assert_eq!(f.to_string(), "-1 + q^(3/4)");
        assert_eq!(f.to_string().parse::<P>().unwrap(), f);
        let g: P = "-3/2*q^(-2) + 4 - q".parse().unwrap();
        assert_eq!(g.to_string(), "-3/2*q^(-2) + 4 - q^(1)");
    }

    #[test]
    fn malformed_input_reports_position() {
        match "q^^2".parse::<P>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!("q^(1/3)".parse::<P>().is_err());
        assert!("1 +".parse::<P>().is_err());
        assert!("".parse::<P>().is_err());
    }

    #[test]
    fn integer_ring_rejects_fractions() {
        assert!("1/2".parse::<Laurent<BigInt>>().is_err());
    }
}
