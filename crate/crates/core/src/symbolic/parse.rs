//! Small infix parser for reference expressions such as
//! `4*c^2*h^2*(-2*mu + c*theta - c*s)`.
//!
//! Grammar: sums and products of integers, `p/q` constants, parameter names,
//! the variable `s` and the atoms `cosh(k*u)`, `sinh(k*u)`, with `^` taking a
//! nonnegative integer exponent. Division is only allowed by constants.

use num_traits::Zero;
use thiserror::Error;

use super::expr::SymExpr;
use super::param::Param;
use super::poly::{ParamPoly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected `{0}` at offset {1}")]
    Unexpected(String, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error(transparent)]
    Param(#[from] super::param::UnknownParam),
    #[error("division by a non-constant or zero")]
    BadDivision,
    #[error("an expression cannot mix powers of s with cosh or sinh")]
    MixedModes,
    #[error("expected a polynomial in the parameters, found one in s")]
    NotConstant,
}

pub fn parse_expr(src: &str) -> Result<SymExpr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

pub fn parse_poly(src: &str) -> Result<ParamPoly, ParseError> {
    let e = parse_expr(src)?;
    if e.is_zero() {
        return Ok(ParamPoly::zero());
    }
    e.as_constant().cloned().ok_or(ParseError::NotConstant)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            Some(&c) => ParseError::Unexpected((c as char).to_string(), self.pos),
            None => ParseError::Eof,
        }
    }

    fn sum(&mut self) -> Result<SymExpr, ParseError> {
        let mut acc = self.product()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == b'+' { acc.try_add(&rhs) } else { acc.try_sub(&rhs) }.map_err(|_| ParseError::MixedModes)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<SymExpr, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                acc.try_mul(&rhs).map_err(|_| ParseError::MixedModes)?
            } else {
                let c = rhs.as_constant().and_then(ParamPoly::as_constant).filter(|c| !c.is_zero());
                let c = c.ok_or(ParseError::BadDivision)?;
                acc.scale(&ParamPoly::constant(c.recip()))
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SymExpr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.digits().ok_or_else(|| self.unexpected())?;
            let n: u32 = n.parse().map_err(|_| self.unexpected())?;
            return Ok(base.pow(n).map_err(|_| ParseError::MixedModes)?);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    /// `cosh(u)`, `cosh(3u)` or `cosh(3*u)` after the function name.
    fn hyperbolic(&mut self, cosh: bool) -> Result<SymExpr, ParseError> {
        let expect = |p: &mut Self, c: u8| {
            if p.peek() == Some(c) {
                p.pos += 1;
                Ok(())
            } else {
                Err(p.unexpected())
            }
        };
        expect(self, b'(')?;
        self.skip_ws();
        let k = match self.digits() {
            Some(d) => d.parse::<u32>().map_err(|_| self.unexpected())?,
            None => 1,
        };
        if self.peek() == Some(b'*') {
            self.pos += 1;
        }
        expect(self, b'u')?;
        expect(self, b')')?;
        Ok(if cosh { SymExpr::cosh(k) } else { SymExpr::sinh(k) })
    }

    fn atom(&mut self) -> Result<SymExpr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().expect("peeked a digit");
                let n: num_bigint::BigInt = n.parse().expect("ascii digits");
                Ok(SymExpr::constant(ParamPoly::constant(Rational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match name {
                    "s" => return Ok(SymExpr::s()),
                    "cosh" | "sinh" => return self.hyperbolic(name == "cosh"),
                    _ => {}
                }
                Ok(SymExpr::param(name.parse::<Param>()?))
            }
            _ => Err(self.unexpected()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::poly::rat;

    #[test]
    fn parses_reference_shapes() {
        let p = parse_poly("1/2*r^3*(h^2+r^2)").unwrap();
        let r = ParamPoly::var(Param::Radius);
        let h = ParamPoly::var(Param::Pitch);
        assert_eq!(p, (r.pow(3) * (h.pow(2) + r.pow(2))).scale(&rat(1, 2)));
        assert_eq!(parse_poly("-8*a2^3").unwrap(), ParamPoly::int(-8) * ParamPoly::var(Param::coef(2)).pow(3));
        let e = parse_expr("2*h*s - s^2").unwrap();
        assert_eq!(e.degree(), 2);
        let e = parse_expr("r*cosh(u) - 2*sinh(3*u) + sinh(3u)").unwrap();
        let expected = SymExpr::cosh(1).scale(&r).try_sub(&SymExpr::sinh(3)).unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("h +").is_err());
        assert!(parse_poly("x").is_err());
        assert!(parse_poly("1/h").is_err());
        assert_eq!(parse_poly("s"), Err(ParseError::NotConstant));
        assert!(parse_poly("(h").is_err());
        assert_eq!(parse_expr("s*cosh(u)"), Err(ParseError::MixedModes));
    }
}
