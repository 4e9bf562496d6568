//! Complement regions of an embedded normal surface.
//!
//! Inside one tetrahedron the discs of an embedded normal surface are
//! disjoint, and each one separates the ball, so the complement regions
//! form a tree with one node per region and one edge per disc.  The
//! whole complement of the surface is assembled by identifying face
//! regions across gluings; no two regions of the same tetrahedron are
//! ever identified directly.
//!
//! The same structure drives three different consumers: separation
//! counts (cut the manifold along the surface), signed crossing counts
//! for the intersection homomorphism (walk paths through regions), and
//! corner heights (integrate crossings over a spanning tree).

use alloc::vec::Vec;

use super::surface::{is_canonical_side, DiscIndex, DiscType, NormalSurfaceVec};
use super::tri::{TriComplex, Triangulation, UnionFind};
use super::SurfaceError;

/// A region of the complement within one tetrahedron.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RegionId {
    /// Inside triangle `level` of the stack at the given vertex.
    Corner(u8, u64),
    /// The single region beyond all triangle stacks when the
    /// tetrahedron carries no quadrilaterals.
    Central,
    /// The region on vertex 0's side of the quadrilateral stack.
    QLow,
    /// Between quadrilateral `level - 1` and `level`.
    QMid(u64),
    /// The region on the far side of the quadrilateral stack.
    QHigh,
}

/// Result of cutting along the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub complement_components: usize,
    pub separating: bool,
}

/// The complement regions of a cooriented normal surface in a
/// triangulation, with signed crossing bookkeeping.
#[derive(Clone, Debug)]
pub struct RegionComplex {
    tri: Triangulation,
    surface: NormalSurfaceVec,
    index: DiscIndex,
    coor: Vec<i8>,
    region_offset: Vec<usize>,
    num_regions: usize,
    /// Chunk id of each region after cutting along the surface.
    chunk_of_region: Vec<usize>,
    num_chunks: usize,
}

impl RegionComplex {
    pub fn build(
        tri: &Triangulation,
        surface: &NormalSurfaceVec,
        coor: &[i8],
    ) -> Result<Self, SurfaceError> {
        surface.check_embedded()?;
        surface.check_matching(tri)?;
        let index = DiscIndex::build(surface);
        super::surface::validate_coorientation(tri, surface, &index, coor)?;
        let mut region_offset = Vec::with_capacity(tri.num_tets());
        let mut num_regions = 0;
        for t in 0..tri.num_tets() {
            region_offset.push(num_regions);
            num_regions += surface.discs_in_tet(t) as usize + 1;
        }
        let mut cx = RegionComplex {
            tri: tri.clone(),
            surface: surface.clone(),
            index,
            coor: coor.to_vec(),
            region_offset,
            num_regions,
            chunk_of_region: Vec::new(),
            num_chunks: 0,
        };
        let (chunks, count) = cx.compute_chunks();
        cx.chunk_of_region = chunks;
        cx.num_chunks = count;
        Ok(cx)
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn surface(&self) -> &NormalSurfaceVec {
        &self.surface
    }

    pub fn disc_index(&self) -> &DiscIndex {
        &self.index
    }

    pub fn coorientation(&self) -> &[i8] {
        &self.coor
    }

    pub fn num_regions(&self) -> usize {
        self.num_regions
    }

    fn quad_data(&self, t: usize) -> Option<(DiscType, u64)> {
        let c = self.surface.tet(t);
        (4..7)
            .find(|&s| c[s] > 0)
            .map(|s| (DiscType::from_slot(s), c[s]))
    }

    /// Dense index of a region.
    pub fn region_index(&self, t: usize, r: RegionId) -> usize {
        let c = self.surface.tet(t);
        let corner_total: u64 = c[..4].iter().sum();
        let local = match r {
            RegionId::Corner(u, level) => {
                debug_assert!(level < c[u as usize]);
                c[..u as usize].iter().sum::<u64>() + level
            }
            RegionId::Central => {
                debug_assert!(self.quad_data(t).is_none());
                corner_total
            }
            RegionId::QLow => corner_total,
            RegionId::QMid(level) => {
                debug_assert!(level >= 1);
                corner_total + level
            }
            RegionId::QHigh => {
                let (_, q) = self.quad_data(t).expect("has quads");
                corner_total + q
            }
        };
        self.region_offset[t] + local as usize
    }

    /// Inverse of [`Self::region_index`] within a tetrahedron.
    pub fn region_id(&self, t: usize, dense: usize) -> RegionId {
        let mut local = (dense - self.region_offset[t]) as u64;
        let c = self.surface.tet(t);
        for u in 0..4u8 {
            if local < c[u as usize] {
                return RegionId::Corner(u, local);
            }
            local -= c[u as usize];
        }
        match self.quad_data(t) {
            None => {
                debug_assert_eq!(local, 0);
                RegionId::Central
            }
            Some((_, q)) => {
                if local == 0 {
                    RegionId::QLow
                } else if local < q {
                    RegionId::QMid(local)
                } else {
                    debug_assert_eq!(local, q);
                    RegionId::QHigh
                }
            }
        }
    }

    /// The tetrahedron a dense region index belongs to.
    pub fn tet_of_region(&self, dense: usize) -> usize {
        match self.region_offset.binary_search(&dense) {
            Ok(t) => t,
            Err(i) => i - 1,
        }
    }

    /// The region beyond the last triangle of the corner stack at `u`.
    fn beyond_corner_stack(&self, t: usize, u: u8) -> RegionId {
        match self.quad_data(t) {
            None => RegionId::Central,
            Some((ty, _)) => {
                if ty.vertex_on_high_side(u) {
                    RegionId::QHigh
                } else {
                    RegionId::QLow
                }
            }
        }
    }

    /// The region containing a vertex corner.
    pub fn region_of_corner(&self, t: usize, v: u8) -> RegionId {
        if self.surface.tet(t)[v as usize] > 0 {
            RegionId::Corner(v, 0)
        } else {
            self.beyond_corner_stack(t, v)
        }
    }

    /// The two regions a disc separates, `(low, high)`.
    pub fn disc_sides(&self, disc_id: usize) -> (RegionId, RegionId) {
        let d = self.index.disc(disc_id);
        let c = self.surface.tet(d.tet);
        match d.ty {
            DiscType::Tri(u) => {
                let low = RegionId::Corner(u, d.level);
                let high = if d.level + 1 < c[u as usize] {
                    RegionId::Corner(u, d.level + 1)
                } else {
                    self.beyond_corner_stack(d.tet, u)
                };
                (low, high)
            }
            DiscType::Quad(_) => {
                let (_, q) = self.quad_data(d.tet).expect("has quads");
                let low = if d.level == 0 {
                    RegionId::QLow
                } else {
                    RegionId::QMid(d.level)
                };
                let high = if d.level + 1 == q {
                    RegionId::QHigh
                } else {
                    RegionId::QMid(d.level + 1)
                };
                (low, high)
            }
        }
    }

    /// Signed crossings along the unique region path between two regions
    /// of a tetrahedron: crossing a disc along its coorientation arrow
    /// counts `+1`.
    pub fn crossings_within_tet(&self, t: usize, from: RegionId, to: RegionId) -> i64 {
        if from == to {
            return 0;
        }
        let base = self.region_offset[t];
        let count = self.surface.discs_in_tet(t) as usize + 1;
        // BFS over the region tree of this tetrahedron.
        let mut dist: Vec<Option<i64>> = alloc::vec![None; count];
        let start = self.region_index(t, from) - base;
        let goal = self.region_index(t, to) - base;
        dist[start] = Some(0);
        let mut queue = alloc::vec![start];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head];
            head += 1;
            if cur == goal {
                break;
            }
            let cur_sum = dist[cur].expect("visited");
            for local_disc in self.discs_of_tet(t) {
                let (low, high) = self.disc_sides(local_disc);
                let (li, hi) = (
                    self.region_index(t, low) - base,
                    self.region_index(t, high) - base,
                );
                let arrow = self.coor[local_disc] as i64;
                if li == cur && dist[hi].is_none() {
                    dist[hi] = Some(cur_sum + arrow);
                    queue.push(hi);
                }
                if hi == cur && dist[li].is_none() {
                    dist[li] = Some(cur_sum - arrow);
                    queue.push(li);
                }
            }
        }
        dist[goal].expect("region tree is connected")
    }

    fn discs_of_tet(&self, t: usize) -> core::ops::Range<usize> {
        self.index.tet_range(t)
    }

    /// The region adjacent to the central face region of `(t, f)` on
    /// this side: where a path through the middle of the face stands
    /// just before or after crossing.
    pub fn region_at_face(&self, t: usize, f: u8) -> RegionId {
        match self.quad_data(t) {
            None => RegionId::Central,
            Some((ty, _)) => {
                if ty.vertex_on_high_side(f) {
                    RegionId::QLow
                } else {
                    RegionId::QHigh
                }
            }
        }
    }

    /// Face region identifications across one internal face, as pairs of
    /// dense region indices `(here, there)`; includes the central face
    /// region and every corner band.
    pub fn face_region_pairs(&self, t: usize, f: u8) -> Vec<(usize, usize)> {
        let g = self.tri.gluing(t, f).expect("internal face");
        let mut out = Vec::new();
        out.push((
            self.region_index(t, self.region_at_face(t, f)),
            self.region_index(g.tet, self.region_at_face(g.tet, g.face)),
        ));
        for u in 0..4u8 {
            if u == f {
                continue;
            }
            let here = self.index.arc_stack(&self.surface, t, f, u);
            let there = self
                .index
                .arc_stack(&self.surface, g.tet, g.face, g.vmap.apply(u));
            debug_assert_eq!(here.len(), there.len());
            for (&da, &db) in here.iter().zip(&there) {
                let ra = self.near_side_region(da, u);
                let rb = self.near_side_region(db, g.vmap.apply(u));
                out.push((
                    self.region_index(t, ra),
                    self.region_index(g.tet, rb),
                ));
            }
        }
        out
    }

    /// The region on the side of a disc containing vertex `u`.
    fn near_side_region(&self, disc_id: usize, u: u8) -> RegionId {
        let d = self.index.disc(disc_id);
        let (low, high) = self.disc_sides(disc_id);
        if d.ty.vertex_on_high_side(u) {
            high
        } else {
            low
        }
    }

    fn compute_chunks(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.num_regions);
        for t in 0..self.tri.num_tets() {
            for f in 0..4u8 {
                if self.tri.gluing(t, f).is_none() || !is_canonical_side(&self.tri, t, f) {
                    continue;
                }
                for (a, b) in self.face_region_pairs(t, f) {
                    uf.union(a, b);
                }
            }
        }
        let roots = uf.classes();
        let mut map = alloc::collections::BTreeMap::new();
        let mut out = Vec::with_capacity(roots.len());
        for r in roots {
            let next = map.len();
            out.push(*map.entry(r).or_insert(next));
        }
        let count = map.len();
        (out, count)
    }

    /// Walks a face-crossing sequence from a state `(tet, region)`,
    /// routing through the central region of every crossed face and
    /// accumulating signed disc crossings.  Returns the end state and
    /// the total.
    pub fn walk(
        &self,
        start: (usize, RegionId),
        crossings: &[(usize, u8)],
    ) -> ((usize, RegionId), i64) {
        let (mut tet, mut region) = start;
        let mut total = 0i64;
        for &(t, f) in crossings {
            debug_assert_eq!(t, tet, "crossing sequence must be a path");
            total += self.crossings_within_tet(tet, region, self.region_at_face(tet, f));
            let g = self.tri.gluing(tet, f).expect("crossed face is internal");
            tet = g.tet;
            region = self.region_at_face(g.tet, g.face);
        }
        ((tet, region), total)
    }

    pub fn chunk_of_region(&self, dense: usize) -> usize {
        self.chunk_of_region[dense]
    }

    pub fn num_chunks(&self) -> usize {
        self.num_chunks
    }

    /// Cut-along-surface verdict: the complement component count, and
    /// whether the surface separates.
    pub fn separation(&self) -> SeparationReport {
        SeparationReport {
            complement_components: self.num_chunks,
            separating: self.num_chunks >= 2,
        }
    }
}

/// Convenience: separation data of a surface, using an arbitrary valid
/// coorientation when one exists, or plain (sign-free) region cutting
/// otherwise.
pub fn is_separating(
    tri: &Triangulation,
    _complex: &TriComplex,
    surface: &NormalSurfaceVec,
) -> Result<SeparationReport, SurfaceError> {
    let index = DiscIndex::build(surface);
    let coor = match super::surface::coorient(tri, surface, &index) {
        Ok(c) => c,
        // One-sided surfaces still cut the manifold; crossing signs are
        // irrelevant for counting chunks.
        Err(_) => alloc::vec![1; index.len()],
    };
    Ok(RegionComplex::build(tri, surface, &coor)?.separation())
}

#[cfg(test)]
mod tests {
    use super::super::normal_check;
    use super::*;
    use crate::fixtures;

    #[test]
    fn fiber_complement_is_connected() {
        let tri = fixtures::solid_torus();
        let s = fixtures::fiber_surface();
        let coor = fixtures::fiber_coorientation();
        let rc = RegionComplex::build(&tri, &s, &coor).unwrap();
        assert_eq!(rc.num_regions(), 6);
        let sep = rc.separation();
        assert_eq!(sep.complement_components, 1);
        assert!(!sep.separating);
    }

    #[test]
    fn separating_disc_cuts_handlebody_in_two() {
        let tri = fixtures::handlebody();
        let s = fixtures::separating_disc();
        let coor = fixtures::separating_disc_coorientation();
        let rc = RegionComplex::build(&tri, &s, &coor).unwrap();
        let sep = rc.separation();
        assert_eq!(sep.complement_components, 2);
        assert!(sep.separating);
    }

    #[test]
    fn vertex_link_separates() {
        let tri = fixtures::closed_one_tet();
        let cx = super::super::TriComplex::build(&tri);
        let s = fixtures::vertex_link_sphere();
        let sep = is_separating(&tri, &cx, &s).unwrap();
        assert!(sep.separating);
        assert_eq!(sep.complement_components, 2);
    }

    #[test]
    fn two_parallel_copies_separate() {
        let tri = fixtures::solid_torus();
        let cx = super::super::TriComplex::build(&tri);
        let s = fixtures::fiber_surface().scale(2);
        let a = normal_check(&tri, &cx, &s).unwrap();
        assert_eq!(a.num_components, 2);
        let sep = is_separating(&tri, &cx, &s).unwrap();
        assert!(sep.separating);
        assert_eq!(sep.complement_components, 2);
    }

    #[test]
    fn crossings_respect_coorientation() {
        let tri = fixtures::solid_torus();
        let s = fixtures::fiber_surface();
        let coor = fixtures::fiber_coorientation();
        let rc = RegionComplex::build(&tri, &s, &coor).unwrap();
        // Tet 1 has the quadrilateral with coorientation +1: crossing
        // from QLow to QHigh is +1, back is -1.
        assert_eq!(
            rc.crossings_within_tet(1, RegionId::QLow, RegionId::QHigh),
            1
        );
        assert_eq!(
            rc.crossings_within_tet(1, RegionId::QHigh, RegionId::QLow),
            -1
        );
        // Tet 0 has a triangle at vertex 3 with coorientation -1.
        assert_eq!(
            rc.crossings_within_tet(0, RegionId::Corner(3, 0), RegionId::Central),
            -1
        );
    }
}
