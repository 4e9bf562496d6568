//! Triangulated 3-manifolds: face-gluing complexes, normal surfaces,
//! complement regions, finite covers, dual presentations of the
//! fundamental group, and the intersection homomorphism of a cooriented
//! surface.

mod corollary;
mod cover;
mod dual;
mod homology;
mod regions;
mod surface;
mod tri;

pub use corollary::{corollary_count, CorollaryError, CorollaryReport};
pub use cover::{psi_from_surface, Cover, CoverError, CoverWalker};
pub use dual::{fundamental_group, Crossing, DualPresentation, FaceRole};
pub use homology::{abelianization, first_homology, integer_snf_diagonal, Homology};
pub use regions::{is_separating, RegionComplex, RegionId, SeparationReport};
pub use surface::{
    arc_away_sign, coorient, is_canonical_internal, matched_arc_pairs, normal_check,
    quad_pair_slot, validate_coorientation, Disc, DiscIndex, DiscType, NormalSurfaceVec,
    SurfaceAnalysis,
};
pub use tri::{Gluing, Perm4, TriComplex, TriError, Triangulation};

/// Errors raised by normal surface operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceError {
    TetCountMismatch { surface: usize, triangulation: usize },
    NotEmbedded { tet: usize },
    MatchingFailure { tet: usize, face: u8, vertex: u8, here: u64, there: u64 },
    EdgeCountMismatch { tet: usize, a: u8, b: u8, here: u64, elsewhere: u64 },
    NotCoorientable { disc: usize },
    CoorientationLength { expected: usize, found: usize },
    CoorientationSign { disc: usize },
}

impl core::fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SurfaceError::TetCountMismatch {
                surface,
                triangulation,
            } => write!(
                f,
                "surface has {} tetrahedra of coordinates, triangulation has {}",
                surface, triangulation
            ),
            SurfaceError::NotEmbedded { tet } => {
                write!(f, "tet {} carries more than one quadrilateral type", tet)
            }
            SurfaceError::MatchingFailure {
                tet,
                face,
                vertex,
                here,
                there,
            } => write!(
                f,
                "matching fails at face {}.{}, arc at vertex {}: {} here vs {} there",
                tet, face, vertex, here, there
            ),
            SurfaceError::EdgeCountMismatch { tet, a, b, here, elsewhere } => write!(
                f,
                "edge ({}, {}) of tet {} meets the surface {} times but its class {} times",
                a, b, tet, here, elsewhere
            ),
            SurfaceError::NotCoorientable { disc } => {
                write!(f, "no consistent transverse orientation: conflict at disc {}", disc)
            }
            SurfaceError::CoorientationLength { expected, found } => {
                write!(f, "coorientation lists {} signs, surface has {} discs", found, expected)
            }
            SurfaceError::CoorientationSign { disc } => {
                write!(f, "coorientation entry {} is not +1 or -1", disc)
            }
        }
    }
}
