//! Dense univariate polynomials over exact rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rat;

/// A polynomial in `t` with rational coefficients, stored densely in
/// ascending degree order.  The representation is canonical: the vector
/// is empty for zero, and the last coefficient is nonzero otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// Builds from coefficients in ascending degree order, stripping
    /// trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| super::rat_int(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `t^k`; requires `order() >= k`.
    pub fn shift_down(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        debug_assert!(self.order().is_none_or(|o| o >= k));
        Poly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Makes the leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&(Rat::one() / lc)),
        }
    }

    /// Euclidean division: returns `(q, r)` with `self = q * div + r` and
    /// `deg r < deg div`.  Panics if `div` is zero.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        let dlc = div.leading().expect("division by zero polynomial");
        let dd = div.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![
            Rat::zero();
            self.coeffs.len().saturating_sub(div.coeffs.len()) + 1
        ];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / dlc;
            if !factor.is_zero() {
                for (i, dc) in div.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - &factor * dc;
                    rem[k + i] = v;
                }
                quo[k] = factor;
            }
            rem.pop();
        }
        (Poly::from_coeffs(quo), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = v;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    /// Prints in the same grammar the parser accepts, e.g. `1 + 3/2*t^2 - t^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(super) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (i64, &'a Rat)>,
{
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rat::zero();
        let mag = if neg { -c } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let unit = mag.is_one();
        if k == 0 {
            write!(f, "{}", mag)?;
        } else {
            if !unit {
                write!(f, "{}*", mag)?;
            }
            if k == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t^{}", k)?;
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
