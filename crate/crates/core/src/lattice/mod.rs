//! Lattices over the valuation ring `O_v` in `F^n`, homothety classes,
//! and the vertex combinatorics of the affine building of `SL_n(F)`.
//!
//! A lattice is encoded by a basis matrix whose columns span it as an
//! `O_v`-module.  All pairwise questions reduce to the invariant-factor
//! exponents of one basis relative to the other, computed by a Smith
//! normal form over `O_v` with minimal-valuation pivoting.  The building
//! itself is never materialized; only the classes actually queried exist.

mod class;
mod matrix;
mod snf;

pub use class::{DiagonalClass, LatticeClass};
pub use matrix::SqMatrix;
pub use snf::dvr_snf_exponents;

use alloc::vec::Vec;

use crate::funcfield::Valuation;

/// Errors raised by lattice operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    DimensionMismatch { left: usize, right: usize },
    SingularBasis,
    SingularAction,
}

impl core::fmt::Display for LatticeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LatticeError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {} vs {}", left, right)
            }
            LatticeError::SingularBasis => write!(f, "singular basis matrix"),
            LatticeError::SingularAction => write!(f, "singular acting matrix"),
        }
    }
}

/// A lattice in `F^n` presented by a nonsingular basis matrix; the
/// columns generate the lattice over `O_v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeBasis {
    matrix: SqMatrix,
}

impl LatticeBasis {
    /// Wraps a basis matrix, rejecting singular input.
    pub fn new(matrix: SqMatrix) -> Result<Self, LatticeError> {
        if matrix.det().is_zero() {
            return Err(LatticeError::SingularBasis);
        }
        Ok(LatticeBasis { matrix })
    }

    /// The standard lattice `O_v^n`.
    pub fn standard(dim: usize) -> Self {
        LatticeBasis {
            matrix: SqMatrix::identity(dim),
        }
    }

    /// Diagonal lattice with basis `(t^{e_1} e_1, ..., t^{e_n} e_n)`.
    pub fn from_diag_exponents(exps: &[i64]) -> Self {
        LatticeBasis {
            matrix: SqMatrix::diag_t_pows(exps),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &SqMatrix {
        &self.matrix
    }

    /// Scales the lattice by `t^k`.
    pub fn scale_t_pow(&self, k: i64) -> LatticeBasis {
        LatticeBasis {
            matrix: self.matrix.scale_t_pow(k),
        }
    }
}

/// The rank-2 lattice generated by `(t^n, 0)` and `(0, t^{-n})`.
pub fn standard_lambda(n: i64) -> LatticeBasis {
    LatticeBasis::from_diag_exponents(&[n, -n])
}

/// The rank-2 lattice generated by `(t^n, 0)` and `(0, t^{-n-1})`.
pub fn standard_lambda_prime(n: i64) -> LatticeBasis {
    LatticeBasis::from_diag_exponents(&[n, -n - 1])
}

fn check_dims(a: &LatticeBasis, b: &LatticeBasis) -> Result<(), LatticeError> {
    if a.dim() != b.dim() {
        return Err(LatticeError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Sorted exponents `(a_1 <= ... <= a_n)` such that `A` has a basis
/// `(f_i)` with `(t^{a_i} f_i)` a basis of `B`.  Swapping the arguments
/// negates and reverses the vector.
pub fn invariant_factor_exponents(
    a: &LatticeBasis,
    b: &LatticeBasis,
) -> Result<Vec<i64>, LatticeError> {
    check_dims(a, b)?;
    let rel = a
        .matrix
        .solve(&b.matrix)
        .ok_or(LatticeError::SingularBasis)?;
    dvr_snf_exponents(&rel).ok_or(LatticeError::SingularBasis)
}

/// True when the lattices differ by a scalar of `F`.
pub fn homothetic(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool, LatticeError> {
    let exps = invariant_factor_exponents(a, b)?;
    Ok(exps.windows(2).all(|w| w[0] == w[1]))
}

/// True when the classes span an edge of the building: after dropping
/// the common scale the exponents lie in `{0, 1}` without being constant.
pub fn adjacent(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool, LatticeError> {
    let exps = invariant_factor_exponents(a, b)?;
    let min = *exps.first().expect("nonempty");
    let max = *exps.last().expect("nonempty");
    Ok(max - min == 1)
}

/// Distance between the homothety classes in the edge graph of the
/// building: the spread `max - min` of the invariant-factor exponents.
pub fn graph_distance(a: &LatticeBasis, b: &LatticeBasis) -> Result<u64, LatticeError> {
    let exps = invariant_factor_exponents(a, b)?;
    let min = *exps.first().expect("nonempty");
    let max = *exps.last().expect("nonempty");
    Ok((max - min) as u64)
}

/// The type of the vertex: valuation of the determinant modulo `n`.
/// Homothetic lattices share a type, and determinant-1 actions preserve it.
pub fn vertex_type(a: &LatticeBasis) -> Result<u64, LatticeError> {
    let det = a.matrix.det();
    match det.valuation() {
        Valuation::Infinite => Err(LatticeError::SingularBasis),
        Valuation::Finite(v) => Ok(v.rem_euclid(a.dim() as i64) as u64),
    }
}

/// Applies `g` to the lattice by transforming its column span.
pub fn act(g: &SqMatrix, a: &LatticeBasis) -> Result<LatticeBasis, LatticeError> {
    if g.dim() != a.dim() {
        return Err(LatticeError::DimensionMismatch {
            left: g.dim(),
            right: a.dim(),
        });
    }
    if g.det().is_zero() {
        return Err(LatticeError::SingularAction);
    }
    Ok(LatticeBasis {
        matrix: g.mul(&a.matrix),
    })
}

/// True when `inner` is contained in `outer` as `O_v`-modules.
pub fn contains(outer: &LatticeBasis, inner: &LatticeBasis) -> Result<bool, LatticeError> {
    check_dims(outer, inner)?;
    let rel = outer
        .matrix
        .solve(&inner.matrix)
        .ok_or(LatticeError::SingularBasis)?;
    Ok(rel
        .entries()
        .iter()
        .all(|e| e.valuation().is_nonnegative()))
}

/// Strict containment of lattices (not just of classes).
pub fn properly_contains(outer: &LatticeBasis, inner: &LatticeBasis) -> Result<bool, LatticeError> {
    Ok(contains(outer, inner)? && !contains(inner, outer)?)
}

/// For an adjacent pair, representatives `(inner, outer)` with
/// `t * outer` properly inside `inner` properly inside `outer`, each
/// inclusion verified by membership; `None` when the pair is not adjacent.
pub fn flag_witness(
    a: &LatticeBasis,
    b: &LatticeBasis,
) -> Result<Option<(LatticeBasis, LatticeBasis)>, LatticeError> {
    let exps = invariant_factor_exponents(a, b)?;
    let min = *exps.first().expect("nonempty");
    let max = *exps.last().expect("nonempty");
    if max - min != 1 {
        return Ok(None);
    }
    let inner = b.scale_t_pow(-min);
    let scaled_outer = a.scale_t_pow(1);
    if properly_contains(a, &inner)? && properly_contains(&inner, &scaled_outer)? {
        Ok(Some((inner, a.clone())))
    } else {
        Ok(None)
    }
}
