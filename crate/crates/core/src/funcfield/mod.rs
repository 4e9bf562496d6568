//! The rational function field `F = Q(t)` with the discrete valuation
//! given by the lowest degree of the Laurent expansion at `t = 0`.
//!
//! [`Poly`] is a dense polynomial in `t` over exact rationals, [`RatFunc`]
//! a field element kept in a canonical form that makes the valuation a
//! stored integer rather than a computation.  The uniformizer is `t`
//! itself; the valuation ring `O_v` consists of the elements with
//! nonnegative valuation.

mod parse;
mod poly;
mod ratfunc;

pub use parse::{parse_ratfunc, ParseError};
pub use poly::Poly;
pub use ratfunc::{RatFunc, Valuation};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Errors raised by field arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    /// Division by the zero element.
    DivisionByZero,
    /// A Laurent prefix of the zero element was requested.
    ZeroExpansion,
    /// The requested prefix ends below the valuation of the element.
    PrefixBelowValuation,
}

impl core::fmt::Display for FieldError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::ZeroExpansion => write!(f, "Laurent expansion of zero requested"),
            FieldError::PrefixBelowValuation => {
                write!(f, "prefix bound lies below the valuation of the element")
            }
        }
    }
}
