//! Block-monomial images of the induced representation.
//!
//! For a degree-`d` cover with intersection homomorphism `psi`, each
//! group element maps to the `2d x 2d` matrix placing the block
//! `diag(t^{e_i}, t^{-e_i})` into block row `sigma(i)`, column `i`.
//! The pair `(sigma, e)` is the whole matrix, so composition and traces
//! stay in exact integer arithmetic until a matrix is actually needed.

use alloc::vec::Vec;

use crate::funcfield::RatFunc;
use crate::lattice::SqMatrix;

use super::{CosetStructure, GroupError, Perm, PsiMap, Word, ZLaurent};

/// A block-monomial matrix of determinant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialRep {
    sigma: Perm,
    exps: Vec<i64>,
}

impl MonomialRep {
    pub fn identity(degree: usize) -> Self {
        MonomialRep {
            sigma: Perm::identity(degree),
            exps: alloc::vec![0; degree],
        }
    }

    pub fn new(sigma: Perm, exps: Vec<i64>) -> Self {
        assert_eq!(sigma.degree(), exps.len());
        MonomialRep { sigma, exps }
    }

    pub fn degree(&self) -> usize {
        self.exps.len()
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    /// `self * rhs`, matching matrix multiplication of the block forms.
    pub fn mul(&self, rhs: &MonomialRep) -> MonomialRep {
        assert_eq!(self.degree(), rhs.degree());
        MonomialRep {
            sigma: self.sigma.compose(&rhs.sigma),
            exps: (0..self.degree())
                .map(|i| self.exps[rhs.sigma.apply(i)] + rhs.exps[i])
                .collect(),
        }
    }

    pub fn inverse(&self) -> MonomialRep {
        let inv = self.sigma.inverse();
        MonomialRep {
            exps: (0..self.degree())
                .map(|i| -self.exps[inv.apply(i)])
                .collect(),
            sigma: inv,
        }
    }

    /// Expands to the `2d x 2d` matrix over the function field.  The
    /// block permutation acts on coordinate pairs, so the determinant is
    /// exactly 1.
    pub fn to_matrix(&self) -> SqMatrix {
        let d = self.degree();
        let mut m = SqMatrix::zero(2 * d);
        for i in 0..d {
            let r = self.sigma.apply(i);
            *m.at_mut(2 * r, 2 * i) = RatFunc::t_pow(self.exps[i]);
            *m.at_mut(2 * r + 1, 2 * i + 1) = RatFunc::t_pow(-self.exps[i]);
        }
        m
    }

    /// The trace as a Laurent polynomial in the curve parameter: fixed
    /// points of `sigma` contribute `z^{e_i} + z^{-e_i}`, moved indices
    /// contribute nothing.
    pub fn trace_poly(&self) -> ZLaurent {
        let mut out = ZLaurent::zero();
        for i in self.sigma.fixed_points() {
            out.add_term(self.exps[i], 1);
            out.add_term(-self.exps[i], 1);
        }
        out
    }
}

/// The induced representation of a word: the coset permutation together
/// with the `psi`-values of the coset-wise subgroup elements
/// `rep[sigma(i)] w rep[i]^-1`.
pub fn induced_rep(
    w: &Word,
    cosets: &CosetStructure,
    psi: &PsiMap,
) -> Result<MonomialRep, GroupError> {
    let d = cosets.degree();
    let rep = cosets.representation();
    // Left action on left cosets: sigma(i) = i . w^-1 under the right
    // action, which makes w -> sigma a homomorphism.
    let sigma_perm = rep.perm_of_word(&w.inverse());
    let mut exps = Vec::with_capacity(d);
    for i in 0..d {
        let s = sigma_perm.apply(i);
        let delta = cosets
            .representative(s)
            .concat(w)
            .concat(&cosets.representative(i).inverse());
        exps.push(psi.eval_word(&delta, cosets)?);
    }
    Ok(MonomialRep::new(sigma_perm, exps))
}

#[cfg(test)]
mod tests {
    use super::super::{PermRep, Presentation};
    use super::*;
    use crate::funcfield::Valuation;
    use crate::group::Perm;
    use alloc::string::ToString;
    use alloc::vec;

    fn z_mod_2() -> (Presentation, CosetStructure) {
        let pres = Presentation::new(vec!["a".to_string()], vec![]).unwrap();
        let rep = PermRep::new(2, vec![Perm::from_images(vec![1, 0]).unwrap()]).unwrap();
        let c = CosetStructure::build(&pres, &rep).unwrap();
        (pres, c)
    }

    #[test]
    fn identity_word_is_identity_rep() {
        let (_, c) = z_mod_2();
        let psi = PsiMap::new(vec![1]);
        let m = induced_rep(&Word::empty(), &c, &psi).unwrap();
        assert_eq!(m, MonomialRep::identity(2));
        assert!(m.to_matrix().det().is_one());
        assert_eq!(m.trace_poly(), ZLaurent::constant(4));
    }

    #[test]
    fn degree_one_generator() {
        // d = 1: the subgroup is everything and a has psi-value 1, so
        // the image is diag(t, t^-1) with trace z + z^-1.
        let pres = Presentation::new(vec!["a".to_string()], vec![]).unwrap();
        let rep = PermRep::trivial(1);
        let c = CosetStructure::build(&pres, &rep).unwrap();
        let psi = PsiMap::new(vec![1]);
        let m = induced_rep(&Word::generator(0), &c, &psi).unwrap();
        assert_eq!(m.exponents(), &[1]);
        let mat = m.to_matrix();
        assert_eq!(*mat.at(0, 0), RatFunc::t());
        assert_eq!(*mat.at(1, 1), RatFunc::t_pow(-1));
        let tr = m.trace_poly();
        assert!(tr.is_symmetric());
        assert_eq!(tr.valuation(), Some(-1));
    }

    #[test]
    fn swap_generator_has_traceless_image() {
        let (_, c) = z_mod_2();
        let psi = PsiMap::new(vec![1]);
        let m = induced_rep(&Word::generator(0), &c, &psi).unwrap();
        // a swaps the cosets: no fixed points, trace 0.
        assert!(m.trace_poly().is_zero());
        // a^2 stabilizes both and crosses once.
        let m2 = induced_rep(&Word::from_letters(&[1, 1]), &c, &psi).unwrap();
        assert_eq!(m2, m.mul(&m));
        assert!(m2.sigma().is_identity());
        assert_eq!(m2.exponents(), &[1, 1]);
    }

    #[test]
    fn distance_two_mover_matrix() {
        // diag(t, t^-1) on crossed blocks, identity elsewhere: the
        // matrix moving the lower corner image to the upper one.
        let m = MonomialRep::new(Perm::identity(2), vec![1, 0]);
        let mat = m.to_matrix();
        assert_eq!(*mat.at(0, 0), RatFunc::t());
        assert_eq!(*mat.at(1, 1), RatFunc::t_pow(-1));
        assert!(mat.at(2, 2).is_one());
        assert!(mat.at(3, 3).is_one());
        assert!(mat.det().is_one());
    }

    #[test]
    fn homomorphism_against_matrices() {
        let (_, c) = z_mod_2();
        let psi = PsiMap::new(vec![1]);
        let v = Word::from_letters(&[1, 1, 1]);
        let w = Word::from_letters(&[-1, 1, 1]);
        let mv = induced_rep(&v, &c, &psi).unwrap();
        let mw = induced_rep(&w, &c, &psi).unwrap();
        let mvw = induced_rep(&v.concat(&w), &c, &psi).unwrap();
        assert_eq!(mv.mul(&mw), mvw);
        assert_eq!(mv.to_matrix().mul(&mw.to_matrix()), mvw.to_matrix());
    }

    #[test]
    fn trace_matches_matrix_trace() {
        let (_, c) = z_mod_2();
        let psi = PsiMap::new(vec![1]);
        let w = Word::from_letters(&[1, 1, -1, 1, 1]);
        let m = induced_rep(&w, &c, &psi).unwrap();
        let via_matrix = ZLaurent::from_ratfunc(&m.to_matrix().trace()).unwrap();
        assert_eq!(m.trace_poly(), via_matrix);
    }

    #[test]
    fn inverse_representation() {
        let (_, c) = z_mod_2();
        let psi = PsiMap::new(vec![1]);
        let w = Word::from_letters(&[1, 1, 1]);
        let m = induced_rep(&w, &c, &psi).unwrap();
        assert_eq!(
            m.mul(&m.inverse()),
            MonomialRep::identity(2)
        );
        assert_eq!(
            m.inverse(),
            induced_rep(&w.inverse(), &c, &psi).unwrap()
        );
    }

    #[test]
    fn valuation_of_generator_trace() {
        let (_, c) = z_mod_2();
        let psi = PsiMap::new(vec![1]);
        let m2 = induced_rep(&Word::from_letters(&[1, 1]), &c, &psi).unwrap();
        let tr = m2.trace_poly();
        // 2(z + z^-1): pole at the ideal point.
        assert_eq!(tr.valuation(), Some(-1));
        assert_eq!(tr.coeff(-1), 2);
        assert!(matches!(
            m2.to_matrix().trace().valuation(),
            Valuation::Finite(-1)
        ));
    }
}
