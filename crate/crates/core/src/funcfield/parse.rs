//! Textual syntax for field elements, e.g. `(t^2 + t^3)/(2 - t)`.
//!
//! Grammar (whitespace-insensitive, trailing garbage rejected):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' '-'? integer)?
//! atom   := integer | 't' | '(' expr ')'
//! ```

use alloc::format;
use alloc::string::String;

use super::{FieldError, RatFunc};

/// Parse failure with byte position and message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

/// Parses a field element; the whole input must be consumed.
pub fn parse_ratfunc(input: &str) -> Result<RatFunc, ParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            position: self.pos,
            message: String::from(message),
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

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs).map_err(|e| match e {
                        FieldError::DivisionByZero => self.error("division by zero"),
                        other => self.error(&format!("{}", other)),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(-&inner);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.signed_integer()?;
            return self.power(&base, exp);
        }
        Ok(base)
    }

    fn power(&self, base: &RatFunc, exp: i64) -> Result<RatFunc, ParseError> {
        if base.is_zero() && exp < 0 {
            return Err(self.error("zero raised to a negative power"));
        }
        let positive = {
            let mut acc = RatFunc::one();
            for _ in 0..exp.unsigned_abs() {
                acc = &acc * base;
            }
            acc
        };
        if exp >= 0 {
            Ok(positive)
        } else {
            Ok(positive.inv().expect("nonzero"))
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.unsigned_integer()?;
                Ok(RatFunc::from_int(n))
            }
            _ => Err(self.error("expected integer, 't', or '('")),
        }
    }

    fn signed_integer(&mut self) -> Result<i64, ParseError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.unsigned_integer()?;
        Ok(if negative { -n } else { n })
    }

    fn unsigned_integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected integer"));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse::<i64>()
            .map_err(|_| self.error("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;
    use alloc::format;
    use alloc::string::ToString;

    #[test]
    fn example_element() {
        let a = parse_ratfunc("(t^2 + t^3)/(2 - t)").unwrap();
        assert_eq!(a.valuation(), super::super::Valuation::Finite(2));
        let (start, coeffs) = a.laurent_prefix(3).unwrap();
        assert_eq!(start, 2);
        assert_eq!(coeffs, alloc::vec![rat(1, 2), rat(3, 4)]);
    }

    #[test]
    fn negative_powers_and_unary_minus() {
        let a = parse_ratfunc("-t^-2 + 1/2").unwrap();
        assert_eq!(a.valuation(), super::super::Valuation::Finite(-2));
    }

    #[test]
    fn trailing_garbage_rejected() {
        assert!(parse_ratfunc("t + 1 xyz").is_err());
        assert!(parse_ratfunc("").is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        for src in ["(t^2 + t^3)/(2 - t)", "t^-5", "3/4", "1 - t + t^2/(1+t)"] {
            let a = parse_ratfunc(src).unwrap();
            let b = parse_ratfunc(&a.to_string()).unwrap();
            assert_eq!(a, b, "roundtrip failed for {}", src);
            assert_eq!(format!("{}", a), format!("{}", b));
        }
    }
}
