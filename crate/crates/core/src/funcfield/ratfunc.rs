//! Field elements of `Q(t)` in canonical form.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::write_terms;
use super::{FieldError, Poly, Rat};

/// Value of the t-adic valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    /// The valuation of zero.
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_nonnegative(self) -> bool {
        match self {
            Valuation::Finite(v) => v >= 0,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

/// An element of `Q(t)`, stored as `t^shift * num / den` where `num` and
/// `den` are coprime polynomials with nonzero constant term and `den` is
/// monic.  Zero is stored with `shift = 0`, `num = 0`, `den = 1`.
///
/// The canonical form is unique per field element, so equality and
/// hashing are structural, and the valuation is read off `shift` without
/// computation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            shift: 0,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    /// The uniformizer `t`.
    pub fn t() -> Self {
        RatFunc::t_pow(1)
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        RatFunc {
            shift: k,
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::constant(super::rat_int(n))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc::from_quotient(p, Poly::one()).expect("unit denominator")
    }

    /// Builds `num / den` in canonical form.
    pub fn from_quotient(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let vn = num.order().unwrap() as i64;
        let vd = den.order().unwrap() as i64;
        let num = num.shift_down(vn as usize);
        let den = den.shift_down(vd as usize);
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        let den = den.monic();
        let num = num.scale(&(Rat::one() / lc));
        Ok(RatFunc {
            shift: vn - vd,
            num,
            den,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// The t-adic valuation: the lowest degree of the Laurent expansion.
    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.shift)
        }
    }

    /// True when the element lies in the valuation ring `O_v`.
    pub fn in_valuation_ring(&self) -> bool {
        self.valuation().is_nonnegative()
    }

    /// True for units of `O_v` (valuation exactly zero).
    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Multiplies by `t^k`.
    pub fn mul_t_pow(&self, k: i64) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            shift: self.shift + k,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let lc = self.num.leading().expect("nonzero").clone();
        Ok(RatFunc {
            shift: -self.shift,
            num: self.den.scale(&(Rat::one() / &lc)),
            den: self.num.monic(),
        })
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    /// Coefficients of the Laurent expansion from degree `valuation(self)`
    /// up to and including degree `k`.  Returns the starting degree and
    /// the coefficient run.
    pub fn laurent_prefix(&self, k: i64) -> Result<(i64, Vec<Rat>), FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroExpansion);
        }
        if k < self.shift {
            return Err(FieldError::PrefixBelowValuation);
        }
        let len = (k - self.shift) as usize + 1;
        // Power-series inversion of den (unit constant term), then a
        // truncated product with num.
        let d0 = self.den.constant_term();
        debug_assert!(!d0.is_zero());
        let mut inv: Vec<Rat> = Vec::with_capacity(len);
        inv.push(Rat::one() / &d0);
        for n in 1..len {
            let mut acc = Rat::zero();
            for j in 1..=n.min(self.den.degree().unwrap_or(0)) {
                acc += self.den.coeff(j) * &inv[n - j];
            }
            inv.push(-acc / &d0);
        }
        let mut out = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = Rat::zero();
            for j in 0..=n.min(self.num.degree().unwrap_or(0)) {
                acc += self.num.coeff(j) * &inv[n - j];
            }
            out.push(acc);
        }
        Ok((self.shift, out))
    }

    /// The element as a Laurent polynomial, if the denominator is 1:
    /// pairs `(degree, coefficient)` in ascending degree order.
    pub fn as_laurent_poly(&self) -> Option<Vec<(i64, Rat)>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        if !self.den.is_one() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.shift + i as i64, c.clone()))
                .collect(),
        )
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = self.num.shift_up((self.shift - s) as usize);
        let b = rhs.num.shift_up((rhs.shift - s) as usize);
        let num = &(&a * &rhs.den) + &(&b * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::from_quotient(num, den)
            .expect("nonzero denominator")
            .mul_t_pow(s)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::from_quotient(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
            .mul_t_pow(self.shift + rhs.shift)
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] where the
/// divisor is not known to be nonzero.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            shift: self.shift,
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl fmt::Display for RatFunc {
    /// Prints the canonical form in the grammar the parser accepts: the
    /// shifted numerator as a Laurent polynomial, over the monic
    /// denominator when it is not 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write_terms(
                f,
                self.num
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (self.shift + k as i64, c)),
            );
        }
        write!(f, "(")?;
        write_terms(
            f,
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (self.shift + k as i64, c)),
        )?;
        write!(f, ")/({})", self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn q(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::from_quotient(Poly::from_i64_coeffs(num), Poly::from_i64_coeffs(den)).unwrap()
    }

    #[test]
    fn product_of_powers() {
        let t = RatFunc::t();
        assert_eq!(&t * &t, RatFunc::t_pow(2));
    }

    #[test]
    fn sum_with_one() {
        let t = RatFunc::t();
        let one = RatFunc::one();
        assert_eq!(&one + &t, q(&[1, 1], &[1]));
    }

    #[test]
    fn reciprocal_factors_cancel() {
        // ((1+t)/t) * (t/(1+t)) = 1, exercising gcd cancellation.
        let a = q(&[1, 1], &[0, 1]);
        let b = q(&[0, 1], &[1, 1]);
        assert!( (&a * &b).is_one());
    }

    #[test]
    fn valuations() {
        assert_eq!(RatFunc::t_pow(3).valuation(), Valuation::Finite(3));
        assert_eq!(RatFunc::zero().valuation(), Valuation::Infinite);
        // (t^2 + t^3)/(2 - t) has valuation 2.
        let a = q(&[0, 0, 1, 1], &[2, -1]);
        assert_eq!(a.valuation(), Valuation::Finite(2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let t = RatFunc::t();
        assert_eq!(
            t.checked_div(&RatFunc::zero()),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn geometric_series_prefix() {
        // 1/(1-t) = 1 + t + t^2 + ...
        let a = q(&[1], &[1, -1]);
        let (start, coeffs) = a.laurent_prefix(2).unwrap();
        assert_eq!(start, 0);
        assert_eq!(coeffs, vec![rat_int(1), rat_int(1), rat_int(1)]);
    }

    #[test]
    fn monomial_prefix() {
        let a = RatFunc::t_pow(2);
        let (start, coeffs) = a.laurent_prefix(2).unwrap();
        assert_eq!(start, 2);
        assert_eq!(coeffs, vec![rat_int(1)]);
    }

    #[test]
    fn rational_prefix() {
        // (t^2 + t^3)/(2 - t) = 1/2 t^2 + 3/4 t^3 + ...
        let a = q(&[0, 0, 1, 1], &[2, -1]);
        let (start, coeffs) = a.laurent_prefix(3).unwrap();
        assert_eq!(start, 2);
        assert_eq!(coeffs, vec![rat(1, 2), rat(3, 4)]);
    }

    #[test]
    fn prefix_remainder_has_higher_valuation() {
        let a = q(&[1, 2, 0, 5], &[3, 0, -1]);
        let k = 6;
        let (start, coeffs) = a.laurent_prefix(k).unwrap();
        let mut partial = RatFunc::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let term = RatFunc::constant(c.clone()).mul_t_pow(start + i as i64);
            partial = &partial + &term;
        }
        let rem = &a - &partial;
        assert!(rem.valuation() > Valuation::Finite(k));
    }

    #[test]
    fn display_roundtrips_canonical_form() {
        let a = q(&[0, 0, 1, 1], &[2, -1]);
        assert_eq!(format!("{}", a), "(-t^2 - t^3)/(-2 + t)");
        let b = RatFunc::t_pow(-2);
        assert_eq!(format!("{}", b), "t^-2");
    }
}
