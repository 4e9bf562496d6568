//! The detection pipeline: from a triangulation, a cooriented normal
//! surface and a cover, through corner heights and the vertex map into
//! lattice classes, to the equivariance and distance checks and the
//! extraction of the dual surface.

mod character;
mod classify;
mod heights;

pub use character::{character_report, stabilizer_probe, CharacterReport, ProbeError, TraceEntry};
pub use classify::{classify_tet, extract_dual_surface, TetClass};
pub use heights::{compute_heights, f0, HeightAssignment, VertexImage};

use alloc::vec::Vec;

use crate::group::{
    induced_rep, CosetStructure, GroupError, PermRep, PsiMap, Word,
};
use crate::lattice::{act, homothetic, LatticeClass, LatticeError};
use crate::manifold::{
    fundamental_group, normal_check, psi_from_surface, Cover, CoverError,
    CoverWalker, DiscIndex, DualPresentation, NormalSurfaceVec, RegionComplex, SurfaceError,
    TriComplex, TriError, Triangulation,
};

/// Errors raised while assembling or running the pipeline.
#[derive(Clone, Debug)]
pub enum DetectError {
    Tri(TriError),
    Surface(SurfaceError),
    Group(GroupError),
    Cover(CoverError),
    Lattice(LatticeError),
    NotPipelineReady { tet: usize, discs: u64 },
    SurfaceNotConnected { components: usize },
    NoNonseparatingLift,
    PsiLengthMismatch { expected: usize, found: usize },
    InconsistentCrossings { tet: usize },
    InconsistentDeckShift { tet: usize, face: u8 },
    DisconnectedBlob,
    PsiDisagreesWithCrossings { word: Word, coset: usize, psi: i64, geometric: i64 },
    EquivarianceFailure { word: Word, tet: usize, corner: u8, detail: &'static str },
    TooManyTetImages { tet: usize, classes: usize },
    TetImageDistance { tet: usize, distance: u64 },
    TetImageMismatch { tet: usize, reason: &'static str },
    ExtractionMismatch { tet: usize },
    PartitionMismatch { tet: usize },
}

impl core::fmt::Display for DetectError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DetectError::Tri(e) => write!(f, "triangulation: {}", e),
            DetectError::Surface(e) => write!(f, "surface: {}", e),
            DetectError::Group(e) => write!(f, "group: {}", e),
            DetectError::Cover(e) => write!(f, "cover: {}", e),
            DetectError::Lattice(e) => write!(f, "lattice: {}", e),
            DetectError::NotPipelineReady { tet, discs } => write!(
                f,
                "tet {} meets the surface in {} discs; the pipeline needs at most one",
                tet, discs
            ),
            DetectError::SurfaceNotConnected { components } => {
                write!(f, "surface has {} components, need a connected one", components)
            }
            DetectError::NoNonseparatingLift => {
                write!(f, "no component of the lifted surface is non-separating")
            }
            DetectError::PsiLengthMismatch { expected, found } => {
                write!(f, "psi lists {} values, expected {}", found, expected)
            }
            DetectError::InconsistentCrossings { tet } => {
                write!(f, "crossing data is inconsistent around tet {}", tet)
            }
            DetectError::InconsistentDeckShift { tet, face } => {
                write!(f, "heights shift inconsistently across face {}.{}", tet, face)
            }
            DetectError::DisconnectedBlob => write!(f, "spanning tree does not reach every region"),
            DetectError::PsiDisagreesWithCrossings {
                word,
                coset,
                psi,
                geometric,
            } => write!(
                f,
                "psi({}) = {} but the geometric crossing count is {} (coset {})",
                word, psi, geometric, coset
            ),
            DetectError::EquivarianceFailure {
                word,
                tet,
                corner,
                detail,
            } => write!(
                f,
                "equivariance fails for word {} at corner {}.{}: {}",
                word, tet, corner, detail
            ),
            DetectError::TooManyTetImages { tet, classes } => {
                write!(f, "tet {} has {} distinct corner images", tet, classes)
            }
            DetectError::TetImageDistance { tet, distance } => {
                write!(f, "tet {} images lie at distance {}, expected 2", tet, distance)
            }
            DetectError::TetImageMismatch { tet, reason } => {
                write!(f, "tet {}: {}", tet, reason)
            }
            DetectError::ExtractionMismatch { tet } => write!(
                f,
                "extracted surface differs from twice the input at tet {}",
                tet
            ),
            DetectError::PartitionMismatch { tet } => write!(
                f,
                "corner partition from heights differs from the surface disc at tet {}",
                tet
            ),
        }
    }
}

/// Everything the detection stage computes once and shares.
pub struct Pipeline {
    tri: Triangulation,
    complex: TriComplex,
    dual: DualPresentation,
    cover: Cover,
    cosets: CosetStructure,
    surface: NormalSurfaceVec,
    coor: Vec<i8>,
    t_surface: NormalSurfaceVec,
    t_component: usize,
    regions: RegionComplex,
    psi: PsiMap,
    psi_geometric: PsiMap,
    psi_image_gcd: u64,
    heights: HeightAssignment,
    gauge: u8,
}

impl Pipeline {
    /// Assembles the pipeline:  validates all inputs, builds the cover,
    /// picks the first non-separating component of the lifted surface,
    /// computes the intersection homomorphism geometrically (or takes
    /// the supplied override), and integrates the corner heights.
    pub fn build(
        tri: &Triangulation,
        surface: &NormalSurfaceVec,
        coor: &[i8],
        rep: &PermRep,
        psi_override: Option<PsiMap>,
        gauge: u8,
    ) -> Result<Pipeline, DetectError> {
        tri.validate().map_err(DetectError::Tri)?;
        let complex = TriComplex::build(tri);
        let dual = fundamental_group(tri).map_err(DetectError::Tri)?;
        let cosets =
            CosetStructure::build(dual.presentation(), rep).map_err(DetectError::Group)?;

        for t in 0..surface.num_tets() {
            let discs = surface.discs_in_tet(t);
            if discs > 1 {
                return Err(DetectError::NotPipelineReady { tet: t, discs });
            }
        }
        let analysis = normal_check(tri, &complex, surface).map_err(DetectError::Surface)?;
        if analysis.num_components != 1 {
            return Err(DetectError::SurfaceNotConnected {
                components: analysis.num_components,
            });
        }
        let index = DiscIndex::build(surface);
        crate::manifold::validate_coorientation(tri, surface, &index, coor)
            .map_err(DetectError::Surface)?;

        let cover = Cover::build(tri, &dual, rep).map_err(DetectError::Cover)?;
        let total = cover.total().clone();
        let cx_n = TriComplex::build(&total);
        let lifted = cover.lift_surface(surface);
        let lifted_coor = cover.lift_coorientation(coor);
        let lifted_analysis =
            normal_check(&total, &cx_n, &lifted).map_err(DetectError::Surface)?;

        // First non-separating component of the preimage.
        let mut chosen = None;
        for (i, comp) in lifted_analysis.components.iter().enumerate() {
            let sep = crate::manifold::is_separating(&total, &cx_n, comp)
                .map_err(DetectError::Surface)?;
            if !sep.separating {
                chosen = Some((i, comp.clone()));
                break;
            }
        }
        let (t_component, t_surface) = chosen.ok_or(DetectError::NoNonseparatingLift)?;

        // Restrict the lifted coorientation to the chosen component.
        let lifted_index = DiscIndex::build(&lifted);
        let t_index = DiscIndex::build(&t_surface);
        let mut t_coor = alloc::vec![0i8; t_index.len()];
        for (id, disc) in lifted_index.discs().iter().enumerate() {
            if lifted_analysis.component_of_disc[id] == t_component {
                let tid = t_index.id_of(&t_surface, disc.tet, disc.ty, disc.level);
                t_coor[tid] = lifted_coor[id];
            }
        }

        let regions =
            RegionComplex::build(&total, &t_surface, &t_coor).map_err(DetectError::Surface)?;
        let dual_cover = fundamental_group(&total).map_err(DetectError::Tri)?;

        let walker = CoverWalker::new(&cover, &dual, &regions);
        let psi_geometric = psi_from_surface(&walker, &cosets);
        let psi = match psi_override {
            Some(p) => {
                if p.num_generators() != cosets.schreier_generators().len() {
                    return Err(DetectError::PsiLengthMismatch {
                        expected: cosets.schreier_generators().len(),
                        found: p.num_generators(),
                    });
                }
                p
            }
            None => psi_geometric.clone(),
        };
        let psi_image_gcd = psi
            .values()
            .iter()
            .fold(0u64, |acc, &v| gcd_u64(acc, v.unsigned_abs()));

        let base = (cover.tet_id(0, 0), gauge);
        let heights = compute_heights(&regions, &dual_cover, base)?;

        Ok(Pipeline {
            tri: tri.clone(),
            complex,
            dual,
            cover,
            cosets,
            surface: surface.clone(),
            coor: coor.to_vec(),
            t_surface,
            t_component,
            regions,
            psi,
            psi_geometric,
            psi_image_gcd,
            heights,
            gauge,
        })
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn complex(&self) -> &TriComplex {
        &self.complex
    }

    pub fn dual(&self) -> &DualPresentation {
        &self.dual
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn cosets(&self) -> &CosetStructure {
        &self.cosets
    }

    pub fn psi(&self) -> &PsiMap {
        &self.psi
    }

    pub fn psi_geometric(&self) -> &PsiMap {
        &self.psi_geometric
    }

    pub fn psi_image_gcd(&self) -> u64 {
        self.psi_image_gcd
    }

    pub fn heights(&self) -> &HeightAssignment {
        &self.heights
    }

    pub fn gauge(&self) -> u8 {
        self.gauge
    }

    pub fn chosen_component(&self) -> usize {
        self.t_component
    }

    pub fn lifted_component_surface(&self) -> &NormalSurfaceVec {
        &self.t_surface
    }

    /// Corner images of one base tetrahedron.
    pub fn corner_images(&self, m_tet: usize) -> [VertexImage; 4] {
        f0(
            &self.heights,
            self.cover.degree(),
            self.tri.num_tets(),
            m_tet,
        )
    }

    /// Verifies equivariance of the corner map for every given word at
    /// every corner, by two routes per coset: the intersection
    /// homomorphism against geometric crossing counts, and the
    /// block-monomial action on lattices against the height-shift
    /// formula.
    pub fn check_equivariance(&self, words: &[Word]) -> Result<usize, DetectError> {
        let walker = CoverWalker::new(&self.cover, &self.dual, &self.regions);
        let d = self.cover.degree();
        let mut checked = 0;
        for w in words {
            let m = induced_rep(w, &self.cosets, &self.psi).map_err(DetectError::Group)?;
            let matrix = m.to_matrix();
            // delta_j = rep[sigma(j)] w rep[j]^-1 stabilizes sheet 0.
            let mut geo = Vec::with_capacity(d);
            for j in 0..d {
                let s = m.sigma().apply(j);
                let delta = self
                    .cosets
                    .representative(s)
                    .concat(w)
                    .concat(&self.cosets.representative(j).inverse());
                let (sheet, crossings) = walker.signed_crossings(&delta);
                debug_assert_eq!(sheet, 0);
                let geometric = crossings.expect("delta is a loop");
                let psi_val = m.exponents()[j];
                if psi_val != geometric {
                    return Err(DetectError::PsiDisagreesWithCrossings {
                        word: w.clone(),
                        coset: j,
                        psi: psi_val,
                        geometric,
                    });
                }
                geo.push(geometric);
            }
            for t in 0..self.tri.num_tets() {
                let images = self.corner_images(t);
                for c in 0..4u8 {
                    let here = &images[c as usize];
                    // Geometric route: translated heights.
                    let mut translated = alloc::vec![0i64; d];
                    for j in 0..d {
                        translated[m.sigma().apply(j)] = here.heights()[j] + geo[j];
                    }
                    let expected = VertexImage::new(translated);
                    // Lattice route: the block-monomial action.
                    let moved = act(&matrix, &here.to_basis()).map_err(DetectError::Lattice)?;
                    let same = homothetic(&moved, &expected.to_basis())
                        .map_err(DetectError::Lattice)?;
                    let keys_match = LatticeClass::from_basis(&moved)
                        .map_err(DetectError::Lattice)?
                        == LatticeClass::from_basis(&expected.to_basis())
                            .map_err(DetectError::Lattice)?;
                    if !same || !keys_match {
                        return Err(DetectError::EquivarianceFailure {
                            word: w.clone(),
                            tet: t,
                            corner: c,
                            detail: "matrix action disagrees with shifted heights",
                        });
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }

    /// Classifies every tetrahedron and cross-checks the corner
    /// partition of two-class tetrahedra against the input surface disc:
    /// the plus side must be the side the coorientation arrow points to.
    pub fn classify_tets(&self) -> Result<Vec<TetClass>, DetectError> {
        let discs = DiscIndex::build(&self.surface);
        let mut out = Vec::with_capacity(self.tri.num_tets());
        for t in 0..self.tri.num_tets() {
            let images = self.corner_images(t);
            let class = classify_tet(t, &images)?;
            if let TetClass::Pair { plus_corners, .. } = &class {
                // The two-class tetrahedra must be exactly those the
                // surface crosses, partitioned the way its disc cuts.
                let range = discs.tet_range(t);
                if range.len() != 1 {
                    return Err(DetectError::PartitionMismatch { tet: t });
                }
                let disc_id = range.start;
                let ty = discs.disc(disc_id).ty;
                let (low, high) = ty.corner_partition();
                let arrow_side = if self.coor[disc_id] > 0 { high } else { low };
                if plus_corners != &arrow_side {
                    return Err(DetectError::PartitionMismatch { tet: t });
                }
            } else if !discs.tet_range(t).is_empty() {
                return Err(DetectError::PartitionMismatch { tet: t });
            }
            out.push(class);
        }
        Ok(out)
    }

    /// Extracts the dual surface and checks it equals two parallel
    /// copies of the input.
    pub fn extract_and_compare(
        &self,
        classes: &[TetClass],
    ) -> Result<NormalSurfaceVec, DetectError> {
        let extracted = extract_dual_surface(self.tri.num_tets(), classes)?;
        extracted
            .check_matching(&self.tri)
            .map_err(DetectError::Surface)?;
        let doubled = self.surface.scale(2);
        if extracted != doubled {
            let bad = (0..self.tri.num_tets())
                .find(|&t| extracted.tet(t) != doubled.tet(t))
                .unwrap_or(0);
            return Err(DetectError::ExtractionMismatch { tet: bad });
        }
        Ok(extracted)
    }

    /// Trace table of the induced representation over the given words.
    pub fn character(&self, words: &[Word]) -> Result<CharacterReport, DetectError> {
        character_report(&self.cosets, &self.psi, words).map_err(DetectError::Group)
    }

    /// Probes which words move the image of a corner.
    pub fn probe_base_class(&self, words: &[Word]) -> Result<Vec<(Word, bool)>, ProbeError> {
        let images = self.corner_images(0);
        stabilizer_probe(&self.cosets, &self.psi, &images[self.gauge as usize], words)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}
