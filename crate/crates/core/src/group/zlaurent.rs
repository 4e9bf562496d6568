//! Integer Laurent polynomials in the curve parameter `z`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::funcfield::{Rat, RatFunc};

/// A Laurent polynomial with integer coefficients, sparse by degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZLaurent {
    coeffs: BTreeMap<i64, i64>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        ZLaurent::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut z = ZLaurent::zero();
        z.add_term(0, c);
        z
    }

    pub fn add_term(&mut self, degree: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(degree).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: i64) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&d| d == 0)
    }

    /// Lowest degree present; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, rhs: &ZLaurent) -> ZLaurent {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c);
        }
        out
    }

    pub fn mul(&self, rhs: &ZLaurent) -> ZLaurent {
        let mut out = ZLaurent::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }

    /// True when invariant under `z <-> z^-1`.
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(d, c)| self.coeff(-d) == c)
    }

    /// Rewrites a symmetric Laurent polynomial as an integer polynomial
    /// in `w = z + z^-1` (coefficients ascending).  `None` when the
    /// input is not symmetric.
    pub fn as_w_polynomial(&self) -> Option<Vec<i64>> {
        if !self.is_symmetric() {
            return None;
        }
        let max = self.coeffs.keys().next_back().copied().unwrap_or(0).max(0);
        // p[k](w) with p[k](z + z^-1) = z^k + z^-k, built by the
        // three-term recurrence p[k+1] = w p[k] - p[k-1].
        let mut p_prev: Vec<i64> = alloc::vec![2];
        let mut p_cur: Vec<i64> = alloc::vec![0, 1];
        let mut out: Vec<i64> = alloc::vec![0; max as usize + 1];
        out[0] = self.coeff(0);
        for k in 1..=max {
            let c = self.coeff(k);
            if c != 0 {
                for (i, &pc) in p_cur.iter().enumerate() {
                    out[i] += c * pc;
                }
            }
            if k < max {
                let mut next = alloc::vec![0i64; p_cur.len() + 1];
                for (i, &pc) in p_cur.iter().enumerate() {
                    next[i + 1] += pc;
                }
                for (i, &pc) in p_prev.iter().enumerate() {
                    next[i] -= pc;
                }
                p_prev = p_cur;
                p_cur = next;
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        Some(out)
    }

    /// Substitutes `w = z + z^-1` into an integer polynomial, expanding
    /// back to a Laurent polynomial.  Independent of the recurrence used
    /// by [`Self::as_w_polynomial`], so the pair gives an exactness check.
    pub fn expand_w_polynomial(p: &[i64]) -> ZLaurent {
        let mut w_power = ZLaurent::constant(1);
        let mut w = ZLaurent::zero();
        w.add_term(1, 1);
        w.add_term(-1, 1);
        let mut out = ZLaurent::zero();
        for (i, &c) in p.iter().enumerate() {
            if c != 0 {
                let mut term = w_power.clone();
                for entry in term.coeffs.values_mut() {
                    *entry *= c;
                }
                out = out.add(&term);
            }
            if i + 1 < p.len() {
                w_power = w_power.mul(&w);
            }
        }
        out
    }

    /// Reads an integer Laurent polynomial out of a field element;
    /// `None` when the element has a genuine denominator or non-integer
    /// coefficients.
    pub fn from_ratfunc(r: &RatFunc) -> Option<ZLaurent> {
        let pairs = r.as_laurent_poly()?;
        let mut out = ZLaurent::zero();
        for (d, c) in pairs {
            if !c.denom().is_one() {
                return None;
            }
            let n: i64 = rat_to_i64(&c)?;
            out.add_term(d, n);
        }
        Some(out)
    }
}

fn rat_to_i64(c: &Rat) -> Option<i64> {
    if !c.denom().is_one() {
        return None;
    }
    let digits = c.numer().to_u64_digits();
    let mag = match digits.1.len() {
        0 => 0u64,
        1 => digits.1[0],
        _ => return None,
    };
    if mag > i64::MAX as u64 {
        return None;
    }
    let v = mag as i64;
    Some(match digits.0 {
        num_bigint::Sign::Minus => -v,
        _ => v,
    })
}

impl fmt::Display for ZLaurent {
    /// Terms in ascending degree, e.g. `z^-1 + 2 + 3*z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms() {
            let neg = c < 0;
            let mag = c.unsigned_abs();
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
            if d == 0 {
                write!(f, "{}", mag)?;
            } else {
                if mag != 1 {
                    write!(f, "{}*", mag)?;
                }
                if d == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", d)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sym(terms: &[(i64, i64)]) -> ZLaurent {
        let mut z = ZLaurent::zero();
        for &(d, c) in terms {
            z.add_term(d, c);
        }
        z
    }

    #[test]
    fn symmetry_detection() {
        assert!(sym(&[(1, 1), (-1, 1)]).is_symmetric());
        assert!(!sym(&[(1, 1)]).is_symmetric());
    }

    #[test]
    fn w_rewrite_roundtrip() {
        // z^3 + z^-3 + 2(z + z^-1) + 4
        let f = sym(&[(3, 1), (-3, 1), (1, 2), (-1, 2), (0, 4)]);
        let p = f.as_w_polynomial().unwrap();
        // z^3 + z^-3 = w^3 - 3w, so p = 4 + (2 - 3)w + 0w^2 + w^3.
        assert_eq!(p, vec![4, -1, 0, 1]);
        assert_eq!(ZLaurent::expand_w_polynomial(&p), f);
    }

    #[test]
    fn asymmetric_has_no_w_form() {
        assert!(sym(&[(2, 1), (-2, 2)]).as_w_polynomial().is_none());
    }

    #[test]
    fn ratfunc_conversion() {
        let r = crate::funcfield::parse_ratfunc("t^-1 + 2 + t").unwrap();
        let z = ZLaurent::from_ratfunc(&r).unwrap();
        assert_eq!(z, sym(&[(-1, 1), (0, 2), (1, 1)]));
        let bad = crate::funcfield::parse_ratfunc("1/(1-t)").unwrap();
        assert!(ZLaurent::from_ratfunc(&bad).is_none());
        let frac = crate::funcfield::parse_ratfunc("1/2").unwrap();
        assert!(ZLaurent::from_ratfunc(&frac).is_none());
    }
}
