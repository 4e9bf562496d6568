//! Dense square matrices over `Q(t)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::funcfield::RatFunc;

/// A square matrix over the function field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SqMatrix {
    dim: usize,
    entries: Vec<RatFunc>,
}

impl SqMatrix {
    pub fn from_rows(dim: usize, entries: Vec<RatFunc>) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        SqMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SqMatrix::zero(dim);
        for i in 0..dim {
            *m.at_mut(i, i) = RatFunc::one();
        }
        m
    }

    pub fn zero(dim: usize) -> Self {
        SqMatrix {
            dim,
            entries: vec![RatFunc::zero(); dim * dim],
        }
    }

    /// Diagonal matrix with entries `t^{e_i}`.
    pub fn diag_t_pows(exps: &[i64]) -> Self {
        let mut m = SqMatrix::zero(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            *m.at_mut(i, i) = RatFunc::t_pow(e);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, row: usize, col: usize) -> &RatFunc {
        &self.entries[row * self.dim + col]
    }

    pub fn at_mut(&mut self, row: usize, col: usize) -> &mut RatFunc {
        &mut self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    /// Scales every entry by `t^k`.
    pub fn scale_t_pow(&self, k: i64) -> SqMatrix {
        SqMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.mul_t_pow(k)).collect(),
        }
    }

    pub fn mul(&self, rhs: &SqMatrix) -> SqMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = SqMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j) + &(a * b);
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> RatFunc {
        let mut acc = RatFunc::zero();
        for i in 0..self.dim {
            acc = &acc + self.at(i, i);
        }
        acc
    }

    /// Determinant by fraction-full Gaussian elimination.
    pub fn det(&self) -> RatFunc {
        let n = self.dim;
        let mut m = self.clone();
        let mut det = RatFunc::one();
        for k in 0..n {
            let pivot_row = match (k..n).find(|&i| !m.at(i, k).is_zero()) {
                Some(r) => r,
                None => return RatFunc::zero(),
            };
            if pivot_row != k {
                m.swap_rows(pivot_row, k);
                det = -&det;
            }
            let pivot = m.at(k, k).clone();
            det = &det * &pivot;
            for i in (k + 1)..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k) / &pivot;
                for j in k..n {
                    let v = m.at(i, j) - &(&factor * m.at(k, j));
                    *m.at_mut(i, j) = v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.dim {
            self.entries.swap(a * self.dim + j, b * self.dim + j);
        }
    }

    /// Solves `self * X = rhs`; `None` when `self` is singular.
    pub fn solve(&self, rhs: &SqMatrix) -> Option<SqMatrix> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut m = self.clone();
        let mut x = rhs.clone();
        // Forward elimination.
        for k in 0..n {
            let pivot_row = (k..n).find(|&i| !m.at(i, k).is_zero())?;
            if pivot_row != k {
                m.swap_rows(pivot_row, k);
                x.swap_rows(pivot_row, k);
            }
            let pivot = m.at(k, k).clone();
            for i in (k + 1)..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k) / &pivot;
                for j in k..n {
                    let v = m.at(i, j) - &(&factor * m.at(k, j));
                    *m.at_mut(i, j) = v;
                }
                for j in 0..n {
                    if x.at(k, j).is_zero() {
                        continue;
                    }
                    let v = x.at(i, j) - &(&factor * x.at(k, j));
                    *x.at_mut(i, j) = v;
                }
            }
        }
        // Back substitution.
        for k in (0..n).rev() {
            let pivot = m.at(k, k).clone();
            for j in 0..n {
                let mut acc = x.at(k, j).clone();
                for l in (k + 1)..n {
                    if m.at(k, l).is_zero() || x.at(l, j).is_zero() {
                        continue;
                    }
                    acc = &acc - &(m.at(k, l) * x.at(l, j));
                }
                *x.at_mut(k, j) = &acc / &pivot;
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<SqMatrix> {
        self.solve(&SqMatrix::identity(self.dim))
    }
}

impl fmt::Display for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SqMatrix {
        SqMatrix::from_rows(
            2,
            vec![
                RatFunc::t(),
                RatFunc::one(),
                RatFunc::zero(),
                RatFunc::t_pow(-1),
            ],
        )
    }

    #[test]
    fn det_of_triangular() {
        assert!(small().det().is_one());
    }

    #[test]
    fn solve_gives_inverse() {
        let m = small();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SqMatrix::identity(2));
        assert_eq!(inv.mul(&m), SqMatrix::identity(2));
    }

    #[test]
    fn singular_detected() {
        let m = SqMatrix::from_rows(
            2,
            vec![
                RatFunc::t(),
                RatFunc::t(),
                RatFunc::t(),
                RatFunc::t(),
            ],
        );
        assert!(m.det().is_zero());
        assert!(m.inverse().is_none());
    }
}
