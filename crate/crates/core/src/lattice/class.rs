//! Canonical keys for homothety classes.
//!
//! The key is computed by scaling the lattice so the smallest invariant
//! factor against the standard lattice is `t^0`, then bringing the basis
//! into a lower-triangular column normal form over `O_v` with diagonal
//! `t^{d_i}` and below-diagonal entries reduced to the unique polynomial
//! representative of degree `< d_i`.  Two bases are homothetic exactly
//! when their keys coincide, so classes can live in hash maps without
//! repeated pairwise normal-form computations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::funcfield::{Poly, Rat, RatFunc, Valuation};

use super::{dvr_snf_exponents, LatticeBasis, LatticeError, SqMatrix};

/// Canonical form of a homothety class of lattices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeClass {
    dim: usize,
    /// Row-major lower-triangular reduced basis; entries are polynomials.
    entries: Vec<Poly>,
}

impl LatticeClass {
    pub fn from_basis(basis: &LatticeBasis) -> Result<Self, LatticeError> {
        let n = basis.dim();
        let exps = dvr_snf_exponents(basis.matrix()).ok_or(LatticeError::SingularBasis)?;
        let min = *exps.first().expect("nonempty");
        let mut w = basis.matrix().scale_t_pow(-min);

        // Column triangularization with minimal-valuation pivoting.
        for r in 0..n {
            let mut best: Option<(i64, usize)> = None;
            for c in r..n {
                if let Valuation::Finite(v) = w.at(r, c).valuation() {
                    if best.is_none_or(|(bv, _)| v < bv) {
                        best = Some((v, c));
                    }
                }
            }
            let (pv, pc) = best.ok_or(LatticeError::SingularBasis)?;
            swap_cols(&mut w, pc, r);
            let unit = w.at(r, r).mul_t_pow(-pv);
            let unit_inv = unit.inv().expect("unit is nonzero");
            for i in r..n {
                let v = w.at(i, r) * &unit_inv;
                *w.at_mut(i, r) = v;
            }
            for c in (r + 1)..n {
                if w.at(r, c).is_zero() {
                    continue;
                }
                let f = w.at(r, c).mul_t_pow(-pv);
                for i in r..n {
                    let v = w.at(i, c) - &(&f * w.at(i, r));
                    *w.at_mut(i, c) = v;
                }
            }
        }

        // Reduce below-diagonal entries modulo the diagonal of their row.
        for j in 0..n {
            for i in (j + 1)..n {
                if w.at(i, j).is_zero() {
                    continue;
                }
                let d = w
                    .at(i, i)
                    .valuation()
                    .finite()
                    .expect("diagonal is a t power");
                let rem = truncate_to_poly(w.at(i, j), d);
                let q = &(w.at(i, j) - &RatFunc::from_poly(rem)).mul_t_pow(-d);
                if q.is_zero() {
                    continue;
                }
                for k in i..n {
                    let v = w.at(k, j) - &(q * w.at(k, i));
                    *w.at_mut(k, j) = v;
                }
            }
        }

        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(to_poly(w.at(i, j)));
            }
        }
        Ok(LatticeClass { dim: n, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exponents of the diagonal `t^{d_i}` of the canonical form.
    pub fn diag_exponents(&self) -> Vec<i64> {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim + i].order().expect("nonzero") as i64)
            .collect()
    }

    /// A representative basis of the class.
    pub fn representative(&self) -> LatticeBasis {
        let entries = self
            .entries
            .iter()
            .map(|p| RatFunc::from_poly(p.clone()))
            .collect();
        LatticeBasis::new(SqMatrix::from_rows(self.dim, entries)).expect("canonical form")
    }
}

impl fmt::Debug for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LatticeClass(dim {})", self.dim)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i * self.dim + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Unique polynomial representative of degree `< bound` of an element of
/// `O_v` modulo `t^bound`.
fn truncate_to_poly(e: &RatFunc, bound: i64) -> Poly {
    match e.valuation() {
        Valuation::Infinite => Poly::zero(),
        Valuation::Finite(v) => {
            debug_assert!(v >= 0, "entry must lie in the valuation ring");
            if v >= bound {
                return Poly::zero();
            }
            let (start, coeffs) = e.laurent_prefix(bound - 1).expect("nonzero");
            let mut full = vec![Rat::zero(); start as usize];
            full.extend(coeffs);
            Poly::from_coeffs(full)
        }
    }
}

fn to_poly(e: &RatFunc) -> Poly {
    let pairs = e
        .as_laurent_poly()
        .expect("canonical form entries are polynomials");
    let mut coeffs = Vec::new();
    for (deg, c) in pairs {
        debug_assert!(deg >= 0);
        let deg = deg as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Rat::zero());
        }
        coeffs[deg] = c;
    }
    Poly::from_coeffs(coeffs)
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

/// A vertex of the standard apartment: a diagonal lattice class, encoded
/// by its exponent vector shifted so the minimum entry is 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DiagonalClass {
    exps: Vec<i64>,
}

impl DiagonalClass {
    pub fn new(exps: &[i64]) -> Self {
        assert!(!exps.is_empty(), "dimension must be positive");
        let min = *exps.iter().min().expect("nonempty");
        DiagonalClass {
            exps: exps.iter().map(|e| e - min).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn to_basis(&self) -> LatticeBasis {
        LatticeBasis::from_diag_exponents(&self.exps)
    }

    pub fn to_class(&self) -> LatticeClass {
        LatticeClass::from_basis(&self.to_basis()).expect("diagonal basis is nonsingular")
    }

    /// Apartment fast path for the graph distance: the spread of the
    /// difference vector.
    pub fn distance(&self, other: &DiagonalClass) -> u64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let diffs: Vec<i64> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a - b)
            .collect();
        let min = diffs.iter().min().expect("nonempty");
        let max = diffs.iter().max().expect("nonempty");
        (max - min) as u64
    }
}
