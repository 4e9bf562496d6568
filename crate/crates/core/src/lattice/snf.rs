//! Smith normal form over the valuation ring.
//!
//! Over `O_v` divisibility is comparison of valuations, so a single
//! minimal-valuation pivot clears its whole row and column in one pass
//! and the diagonal comes out as powers of `t` in ascending order of
//! exponent.  Pivot ties break in row-major order for determinism.

use alloc::vec::Vec;

use crate::funcfield::Valuation;

use super::SqMatrix;

/// Exponents of the elementary divisors `t^{a_1} | ... | t^{a_n}` of a
/// nonsingular matrix over `O_v` (valuations may be negative: the input
/// is allowed to be any nonsingular matrix over `F`, which amounts to
/// SNF of a suitable `t`-power rescaling).  `None` for singular input.
pub fn dvr_snf_exponents(m: &SqMatrix) -> Option<Vec<i64>> {
    let n = m.dim();
    let mut w = m.clone();
    let mut exps = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if let Valuation::Finite(v) = w.at(i, j).valuation() {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (pv, pi, pj) = best?;
        swap_rows(&mut w, pi, k);
        swap_cols(&mut w, pj, k);
        let pivot = w.at(k, k).clone();
        for i in (k + 1)..n {
            if w.at(i, k).is_zero() {
                continue;
            }
            let factor = w.at(i, k) / &pivot;
            for j in k..n {
                let v = w.at(i, j) - &(&factor * w.at(k, j));
                *w.at_mut(i, j) = v;
            }
        }
        for j in (k + 1)..n {
            // The column below the pivot is already cleared, so this only
            // touches row k.
            *w.at_mut(k, j) = crate::funcfield::RatFunc::zero();
        }
        exps.push(pv);
    }
    exps.sort_unstable();
    Some(exps)
}

fn swap_rows(m: &mut SqMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.dim() {
        let x = m.at(a, j).clone();
        let y = m.at(b, j).clone();
        *m.at_mut(a, j) = y;
        *m.at_mut(b, j) = x;
    }
}

fn swap_cols(m: &mut SqMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.dim() {
        let x = m.at(i, a).clone();
        let y = m.at(i, b).clone();
        *m.at_mut(i, a) = y;
        *m.at_mut(i, b) = x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{parse_ratfunc, RatFunc};
    use alloc::vec;
    use alloc::vec::Vec;

    fn mat(dim: usize, entries: &[&str]) -> SqMatrix {
        let parsed: Vec<RatFunc> = entries.iter().map(|s| parse_ratfunc(s).unwrap()).collect();
        SqMatrix::from_rows(dim, parsed)
    }

    #[test]
    fn diagonal_input() {
        let m = SqMatrix::diag_t_pows(&[3, -1, 0]);
        assert_eq!(dvr_snf_exponents(&m).unwrap(), vec![-1, 0, 3]);
    }

    #[test]
    fn off_diagonal_mixing() {
        // [[t, 1], [0, t]] has a unit entry, so divisors are (0, 2):
        // the determinant has valuation 2 and the gcd of entries is 1.
        let m = mat(2, &["t", "1", "0", "t"]);
        assert_eq!(dvr_snf_exponents(&m).unwrap(), vec![0, 2]);
    }

    #[test]
    fn singular_input_rejected() {
        let m = mat(2, &["t", "t", "t", "t"]);
        assert_eq!(dvr_snf_exponents(&m), None);
    }

    #[test]
    fn rational_entries() {
        let m = mat(
            2,
            &["1/(1 - t)", "t^2", "t^-1", "(t^2 + t^3)/(2 - t)"],
        );
        // Pivot is the valuation -1 entry; determinant valuation is
        // v(det) = v(1/(1-t) * (t^2+t^3)/(2-t) - t^2 * t^-1) = 1,
        // so the second exponent is 1 - (-1) = 2.
        assert_eq!(dvr_snf_exponents(&m).unwrap(), vec![-1, 2]);
    }
}
