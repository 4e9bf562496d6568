//! Finite covers induced by a permutation representation of the dual
//! presentation.
//!
//! Sheets are cosets: crossing an internal face applies the generator's
//! permutation (or nothing, for spanning tree faces), so lifting a based
//! loop starting on sheet `s` ends on the sheet given by the right
//! action of its word.  Tetrahedron `t` on sheet `s` has id
//! `s * base_tets + t`.

use alloc::vec::Vec;

use crate::group::{GroupError, PermRep, Word};

use super::dual::{Crossing, DualPresentation, FaceRole};
use super::regions::{RegionComplex, RegionId};
use super::tri::{Gluing, TriError, Triangulation};
use super::NormalSurfaceVec;

/// A finite cover of a triangulation.
#[derive(Clone, Debug)]
pub struct Cover {
    base: Triangulation,
    rep: PermRep,
    total: Triangulation,
    transitions: Vec<[Option<usize>; 4]>,
}

/// Errors from cover construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverError {
    Rep(GroupError),
    Tri(TriError),
}

impl core::fmt::Display for CoverError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CoverError::Rep(e) => write!(f, "representation: {}", e),
            CoverError::Tri(e) => write!(f, "covering triangulation: {}", e),
        }
    }
}

impl Cover {
    /// Builds the cover of `dual`'s triangulation determined by `rep`.
    pub fn build(
        base: &Triangulation,
        dual: &DualPresentation,
        rep: &PermRep,
    ) -> Result<Self, CoverError> {
        rep.validate(dual.presentation()).map_err(CoverError::Rep)?;
        let t_base = base.num_tets();
        let d = rep.degree();

        // Sheet image when crossing each face, identity on tree faces.
        let mut transitions: Vec<[Option<usize>; 4]> = alloc::vec![[None; 4]; t_base * d];
        let sheet_after = |t: usize, f: u8, s: usize| -> usize {
            match dual.role(t, f) {
                FaceRole::Boundary => unreachable!("boundary face has no transition"),
                FaceRole::Tree => s,
                FaceRole::Generator { index, sign } => {
                    let p = rep.generator_perm(index);
                    if sign > 0 {
                        p.apply(s)
                    } else {
                        p.inverse().apply(s)
                    }
                }
            }
        };

        let mut gluings: Vec<[Option<Gluing>; 4]> =
            alloc::vec![[None, None, None, None]; t_base * d];
        for s in 0..d {
            for t in 0..t_base {
                for f in 0..4u8 {
                    let Some(g) = base.gluing(t, f) else { continue };
                    let s_to = sheet_after(t, f, s);
                    gluings[s * t_base + t][f as usize] = Some(Gluing {
                        tet: s_to * t_base + g.tet,
                        face: g.face,
                        vmap: g.vmap,
                    });
                    transitions[s * t_base + t][f as usize] = Some(s_to);
                }
            }
        }
        let total = Triangulation::new(gluings);
        total.validate().map_err(CoverError::Tri)?;
        Ok(Cover {
            base: base.clone(),
            rep: rep.clone(),
            total,
            transitions,
        })
    }

    pub fn degree(&self) -> usize {
        self.rep.degree()
    }

    pub fn base(&self) -> &Triangulation {
        &self.base
    }

    pub fn total(&self) -> &Triangulation {
        &self.total
    }

    pub fn representation(&self) -> &PermRep {
        &self.rep
    }

    pub fn tet_id(&self, sheet: usize, base_tet: usize) -> usize {
        sheet * self.base.num_tets() + base_tet
    }

    pub fn sheet_of(&self, tet: usize) -> usize {
        tet / self.base.num_tets()
    }

    pub fn base_tet_of(&self, tet: usize) -> usize {
        tet % self.base.num_tets()
    }

    /// Lifts normal coordinates: each sheet receives a verbatim copy.
    pub fn lift_surface(&self, s: &NormalSurfaceVec) -> NormalSurfaceVec {
        let mut coords = Vec::with_capacity(s.num_tets() * self.degree());
        for _sheet in 0..self.degree() {
            coords.extend(s.coords().iter().copied());
        }
        NormalSurfaceVec::new(coords)
    }

    /// Lifts a per-disc coorientation along with the surface.
    pub fn lift_coorientation(&self, coor: &[i8]) -> Vec<i8> {
        let mut out = Vec::with_capacity(coor.len() * self.degree());
        for _sheet in 0..self.degree() {
            out.extend_from_slice(coor);
        }
        out
    }

    /// Lifts a base crossing sequence starting on the given sheet.
    pub fn lift_crossings(&self, crossings: &[Crossing], start_sheet: usize) -> Vec<Crossing> {
        let mut out = Vec::with_capacity(crossings.len());
        let mut sheet = start_sheet;
        for &(t, f) in crossings {
            out.push((self.tet_id(sheet, t), f));
            sheet = self.transitions[self.tet_id(sheet, t)][f as usize]
                .expect("crossing sequence stays internal");
        }
        out
    }

    /// End sheet of a based loop lifted from the given start sheet.
    pub fn monodromy(&self, w: &Word, start_sheet: usize) -> usize {
        self.rep.apply_word(w, start_sheet)
    }
}

/// Signed crossing counts of lifted based loops with a cooriented
/// surface in the total space of a cover.
pub struct CoverWalker<'a> {
    cover: &'a Cover,
    dual: &'a DualPresentation,
    regions: &'a RegionComplex,
    base_state: (usize, RegionId),
}

impl<'a> CoverWalker<'a> {
    /// `regions` must be built on `cover.total()`.  The base point is
    /// the corner region of vertex 0 of tetrahedron 0 on sheet 0.
    pub fn new(
        cover: &'a Cover,
        dual: &'a DualPresentation,
        regions: &'a RegionComplex,
    ) -> Self {
        let base_tet = cover.tet_id(0, 0);
        let base_state = (base_tet, regions.region_of_corner(base_tet, 0));
        CoverWalker {
            cover,
            dual,
            regions,
            base_state,
        }
    }

    pub fn base_state(&self) -> (usize, RegionId) {
        self.base_state
    }

    /// Walks the based lift of a word from sheet 0 and counts signed
    /// crossings with the surface.  The count is `Some` exactly when the
    /// lift closes up (the word stabilizes sheet 0); it is then the
    /// value of the intersection homomorphism on the loop.
    pub fn signed_crossings(&self, w: &Word) -> (usize, Option<i64>) {
        let m_crossings = self.dual.word_crossings(self.cover.base(), w);
        let n_crossings = self.cover.lift_crossings(&m_crossings, 0);
        let (end, total) = self.regions.walk(self.base_state, &n_crossings);
        let end_sheet = self.cover.sheet_of(end.0);
        if end.0 == self.base_state.0 {
            let closing =
                self.regions
                    .crossings_within_tet(end.0, end.1, self.base_state.1);
            (end_sheet, Some(total + closing))
        } else {
            (end_sheet, None)
        }
    }
}

/// Computes the intersection homomorphism on the Schreier generators of
/// the sheet-0 stabilizer by walking each generator's based loop.  The
/// coset structure must be built from the same permutation
/// representation as the cover.
pub fn psi_from_surface(
    walker: &CoverWalker<'_>,
    cosets: &crate::group::CosetStructure,
) -> crate::group::PsiMap {
    debug_assert_eq!(
        cosets.degree(),
        walker.cover.degree(),
        "coset structure and cover must share the representation"
    );
    let values = cosets
        .schreier_generators()
        .iter()
        .map(|w| {
            let (sheet, crossings) = walker.signed_crossings(w);
            debug_assert_eq!(sheet, 0, "Schreier generators stabilize sheet 0");
            crossings.expect("loop closes")
        })
        .collect();
    crate::group::PsiMap::new(values)
}

#[cfg(test)]
mod tests {
    use super::super::dual::fundamental_group;
    use super::super::normal_check;
    use super::super::tri::TriComplex;
    use super::*;
    use crate::fixtures;
    use crate::group::Perm;

    #[test]
    fn trivial_cover_is_the_base() {
        let tri = fixtures::solid_torus();
        let dual = fundamental_group(&tri).unwrap();
        let rep = PermRep::trivial(dual.num_generators());
        let cover = Cover::build(&tri, &dual, &rep).unwrap();
        assert_eq!(cover.total(), &tri);
    }

    #[test]
    fn double_cover_of_solid_torus() {
        let tri = fixtures::solid_torus();
        let dual = fundamental_group(&tri).unwrap();
        let rep = PermRep::new(2, alloc::vec![Perm::from_images(alloc::vec![1, 0]).unwrap()])
            .unwrap();
        let cover = Cover::build(&tri, &dual, &rep).unwrap();
        assert_eq!(cover.total().num_tets(), 6);
        cover.total().validate().unwrap();
        // The lifted fiber has doubled Euler characteristic and the
        // number of components equals the orbit count of the subgroup.
        let cx = TriComplex::build(cover.total());
        let lifted = cover.lift_surface(&fixtures::fiber_surface());
        let a = normal_check(cover.total(), &cx, &lifted).unwrap();
        assert_eq!(a.euler, 2);
        // The fiber is a disc, so its preimage is two parallel discs.
        assert_eq!(a.num_components, 2);
    }

    #[test]
    fn separating_surface_gives_zero_psi() {
        // The intersection pairing with a separating surface vanishes,
        // so the computed map is not surjective (gcd 0, reported by the
        // validator rather than silently accepted).
        let tri = fixtures::handlebody();
        let dual = fundamental_group(&tri).unwrap();
        let rep = PermRep::trivial(dual.num_generators());
        let cover = Cover::build(&tri, &dual, &rep).unwrap();
        let regions = RegionComplex::build(
            cover.total(),
            &fixtures::separating_disc(),
            &fixtures::separating_disc_coorientation(),
        )
        .unwrap();
        let walker = CoverWalker::new(&cover, &dual, &regions);
        let cosets = crate::group::CosetStructure::build(dual.presentation(), &rep).unwrap();
        let psi = psi_from_surface(&walker, &cosets);
        assert!(psi.values().iter().all(|&v| v == 0));
        let gcd = psi.validate(dual.presentation(), &cosets).unwrap();
        assert_eq!(gcd, 0, "not surjective");
    }

    #[test]
    fn walker_counts_fiber_crossings() {
        let tri = fixtures::solid_torus();
        let dual = fundamental_group(&tri).unwrap();
        let rep = PermRep::trivial(dual.num_generators());
        let cover = Cover::build(&tri, &dual, &rep).unwrap();
        let regions = RegionComplex::build(
            cover.total(),
            &fixtures::fiber_surface(),
            &fixtures::fiber_coorientation(),
        )
        .unwrap();
        let walker = CoverWalker::new(&cover, &dual, &regions);
        let (sheet, crossings) = walker.signed_crossings(&Word::generator(0));
        assert_eq!(sheet, 0);
        assert_eq!(crossings, Some(1));
        let (_, back) = walker.signed_crossings(&Word::generator(0).inverse());
        assert_eq!(back, Some(-1));
        let (_, squared) = walker.signed_crossings(&Word::from_letters(&[1, 1]));
        assert_eq!(squared, Some(2));
    }
}
