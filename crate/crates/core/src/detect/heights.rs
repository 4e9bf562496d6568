//! Corner heights: the equivariant lift of the circle-valued map dual
//! to the surface, integrated over a spanning tree of the cover.

use alloc::vec::Vec;

use crate::manifold::{DualPresentation, FaceRole, RegionComplex};

use super::DetectError;

/// Integer heights on the corners of the covering triangulation,
/// together with the gauge that fixes them.
#[derive(Clone, Debug)]
pub struct HeightAssignment {
    /// Height of corner `c` of covering tetrahedron `t` at `t * 4 + c`.
    heights: Vec<i64>,
    /// Base corner `(tet, vertex)` of height 0.
    pub base: (usize, u8),
}

impl HeightAssignment {
    pub fn corner(&self, tet: usize, v: u8) -> i64 {
        self.heights[tet * 4 + v as usize]
    }
}

/// Integrates signed crossings with the surface from the base corner
/// across the dual spanning tree of the cover: regions of one
/// tetrahedron differ by the discs between them, matched face regions
/// across tree faces agree.  Every non-tree face must then shift
/// heights by one constant; a contradiction names the face.
pub fn compute_heights(
    regions: &RegionComplex,
    dual_cover: &DualPresentation,
    base: (usize, u8),
) -> Result<HeightAssignment, DetectError> {
    let tri = regions.triangulation();
    let n = regions.num_regions();
    let mut potential: Vec<Option<i64>> = alloc::vec![None; n];
    let base_region = regions.region_index(base.0, regions.region_of_corner(base.0, base.1));
    potential[base_region] = Some(0);

    // Edges of the blob graph.
    enum Edge {
        Disc { low: usize, high: usize, arrow: i64 },
        Face { here: usize, there: usize },
    }
    let mut edges = Vec::new();
    for t in 0..tri.num_tets() {
        for d in regions.disc_index().tet_range(t) {
            let (low, high) = regions.disc_sides(d);
            edges.push(Edge::Disc {
                low: regions.region_index(t, low),
                high: regions.region_index(t, high),
                arrow: regions.coorientation()[d] as i64,
            });
        }
        for f in 0..4u8 {
            if !crate::manifold::is_canonical_internal(tri, t, f) {
                continue;
            }
            if dual_cover.role(t, f) != FaceRole::Tree {
                continue;
            }
            for (here, there) in regions.face_region_pairs(t, f) {
                edges.push(Edge::Face { here, there });
            }
        }
    }

    // Sweep to a fixed point; the blob graph is small.
    let mut progressed = true;
    while progressed {
        progressed = false;
        for e in &edges {
            let (a, b, delta) = match *e {
                Edge::Disc { low, high, arrow } => (low, high, arrow),
                Edge::Face { here, there } => (here, there, 0),
            };
            match (potential[a], potential[b]) {
                (Some(pa), None) => {
                    potential[b] = Some(pa + delta);
                    progressed = true;
                }
                (None, Some(pb)) => {
                    potential[a] = Some(pb - delta);
                    progressed = true;
                }
                (Some(pa), Some(pb)) => {
                    if pb != pa + delta {
                        let t = regions.tet_of_region(a);
                        return Err(DetectError::InconsistentCrossings { tet: t });
                    }
                }
                (None, None) => {}
            }
        }
    }

    let potential: Vec<i64> = potential
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(DetectError::DisconnectedBlob)?;

    // Deck consistency: every non-tree internal face shifts potentials
    // by a single constant.
    for t in 0..tri.num_tets() {
        for f in 0..4u8 {
            if !crate::manifold::is_canonical_internal(tri, t, f) {
                continue;
            }
            if dual_cover.role(t, f) == FaceRole::Tree {
                continue;
            }
            let pairs = regions.face_region_pairs(t, f);
            let mut shift = None;
            for (here, there) in pairs {
                let s = potential[here] - potential[there];
                match shift {
                    None => shift = Some(s),
                    Some(prev) => {
                        if prev != s {
                            return Err(DetectError::InconsistentDeckShift { tet: t, face: f });
                        }
                    }
                }
            }
        }
    }

    let mut heights = Vec::with_capacity(tri.num_tets() * 4);
    for t in 0..tri.num_tets() {
        for v in 0..4u8 {
            let r = regions.region_index(t, regions.region_of_corner(t, v));
            heights.push(potential[r]);
        }
    }
    Ok(HeightAssignment { heights, base })
}

/// Apartment coordinates of a corner image: the per-coset heights
/// `(h_1, ..., h_d)` encoding the class of the block-diagonal lattice
/// with blocks `diag(t^{h_i}, t^{-h_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexImage {
    exps: Vec<i64>,
}

impl VertexImage {
    pub fn new(exps: Vec<i64>) -> Self {
        VertexImage { exps }
    }

    pub fn degree(&self) -> usize {
        self.exps.len()
    }

    pub fn heights(&self) -> &[i64] {
        &self.exps
    }

    /// Interleaved exponent vector `(h_1, -h_1, ..., h_d, -h_d)`.
    pub fn diag_exponents(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(2 * self.exps.len());
        for &h in &self.exps {
            out.push(h);
            out.push(-h);
        }
        out
    }

    pub fn diagonal_class(&self) -> crate::lattice::DiagonalClass {
        crate::lattice::DiagonalClass::new(&self.diag_exponents())
    }

    pub fn to_basis(&self) -> crate::lattice::LatticeBasis {
        crate::lattice::LatticeBasis::from_diag_exponents(&self.diag_exponents())
    }

    /// Same homothety class: the interleaved exponent vectors differ by
    /// a constant (which the sign pairing forces to be 0).
    pub fn same_class(&self, other: &VertexImage) -> bool {
        self.diagonal_class() == other.diagonal_class()
    }

    /// Apartment fast path for the graph distance.
    pub fn distance(&self, other: &VertexImage) -> u64 {
        self.diagonal_class().distance(&other.diagonal_class())
    }
}

/// The corner images of one tetrahedron downstairs: heights of the
/// matching corner over every sheet.
pub fn f0(heights: &HeightAssignment, degree: usize, base_tets: usize, m_tet: usize) -> [VertexImage; 4] {
    core::array::from_fn(|c| {
        VertexImage::new(
            (0..degree)
                .map(|sheet| heights.corner(sheet * base_tets + m_tet, c as u8))
                .collect(),
        )
    })
}
