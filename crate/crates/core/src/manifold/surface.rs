//! Normal surfaces in 7-coordinates-per-tetrahedron form.
//!
//! Slot order per tetrahedron: four triangle counts indexed by the
//! vertex they cut off, then three quadrilateral counts indexed by the
//! vertex paired with vertex 0, so slot `3 + k` separates `{0, k}` from
//! the other two vertices.
//!
//! Levels order parallel copies of a disc: triangle level 0 is nearest
//! its vertex, quadrilateral level 0 is nearest the edge containing
//! vertex 0.  Arc stacks on a face list discs by distance from the arc's
//! vertex, which is the order face gluings match them up.

use alloc::vec::Vec;
use core::fmt;

use super::tri::{TriComplex, Triangulation};
use super::SurfaceError;

/// A normal disc type inside one tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiscType {
    /// Triangle cutting off the given vertex.
    Tri(u8),
    /// Quadrilateral separating `{0, k}` from the remaining two vertices.
    Quad(u8),
}

impl DiscType {
    pub fn from_slot(slot: usize) -> DiscType {
        match slot {
            0..=3 => DiscType::Tri(slot as u8),
            4..=6 => DiscType::Quad(slot as u8 - 3),
            _ => panic!("slot out of range"),
        }
    }

    pub fn slot(&self) -> usize {
        match *self {
            DiscType::Tri(v) => v as usize,
            DiscType::Quad(k) => 3 + k as usize,
        }
    }

    /// Whether a vertex lies on the high side of the disc (away from the
    /// cut-off vertex for triangles, away from vertex 0's pair for
    /// quadrilaterals).
    pub fn vertex_on_high_side(&self, v: u8) -> bool {
        match *self {
            DiscType::Tri(u) => v != u,
            DiscType::Quad(k) => v != 0 && v != k,
        }
    }

    /// The corner partition `(low, high)` of the tetrahedron induced by
    /// the disc.
    pub fn corner_partition(&self) -> (Vec<u8>, Vec<u8>) {
        let mut low = Vec::new();
        let mut high = Vec::new();
        for v in 0..4u8 {
            if self.vertex_on_high_side(v) {
                high.push(v);
            } else {
                low.push(v);
            }
        }
        (low, high)
    }

    /// The disc type separating the given corner partition, if the
    /// partition is realizable by a single normal disc.
    pub fn from_partition(low: &[u8]) -> Option<DiscType> {
        match low.len() {
            1 => Some(DiscType::Tri(low[0])),
            3 => {
                let high: Vec<u8> = (0..4).filter(|v| !low.contains(v)).collect();
                Some(DiscType::Tri(high[0]))
            }
            2 => {
                if low.contains(&0) {
                    let k = low.iter().copied().find(|&v| v != 0)?;
                    Some(DiscType::Quad(k))
                } else {
                    let k = (1..4).find(|v| !low.contains(v))?;
                    Some(DiscType::Quad(k))
                }
            }
            _ => None,
        }
    }
}

/// Quad slot (0..3 in quad numbering) whose discs separate `a` from `b`
/// being paired: the slot of the quadrilateral containing the edge
/// partition `{a, b} | rest`.
pub fn quad_pair_slot(a: u8, b: u8) -> usize {
    debug_assert!(a != b);
    let k = if a == 0 {
        b
    } else if b == 0 {
        a
    } else {
        6 - a - b
    };
    3 + k as usize
}

/// Nonnegative normal coordinates, 7 per tetrahedron.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalSurfaceVec {
    coords: Vec<[u64; 7]>,
}

impl NormalSurfaceVec {
    pub fn new(coords: Vec<[u64; 7]>) -> Self {
        NormalSurfaceVec { coords }
    }

    pub fn zero(num_tets: usize) -> Self {
        NormalSurfaceVec {
            coords: alloc::vec![[0; 7]; num_tets],
        }
    }

    pub fn num_tets(&self) -> usize {
        self.coords.len()
    }

    pub fn tet(&self, t: usize) -> &[u64; 7] {
        &self.coords[t]
    }

    pub fn coords(&self) -> &[[u64; 7]] {
        &self.coords
    }

    pub fn total_discs(&self) -> u64 {
        self.coords.iter().flatten().sum()
    }

    pub fn discs_in_tet(&self, t: usize) -> u64 {
        self.coords[t].iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_discs() == 0
    }

    /// Componentwise sum.
    pub fn add(&self, other: &NormalSurfaceVec) -> NormalSurfaceVec {
        assert_eq!(self.num_tets(), other.num_tets());
        NormalSurfaceVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| core::array::from_fn(|i| a[i] + b[i]))
                .collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, k: u64) -> NormalSurfaceVec {
        NormalSurfaceVec {
            coords: self
                .coords
                .iter()
                .map(|a| core::array::from_fn(|i| a[i] * k))
                .collect(),
        }
    }

    /// At most one quadrilateral type per tetrahedron.
    pub fn check_embedded(&self) -> Result<(), SurfaceError> {
        for (t, c) in self.coords.iter().enumerate() {
            if c[4..].iter().filter(|&&q| q > 0).count() > 1 {
                return Err(SurfaceError::NotEmbedded { tet: t });
            }
        }
        Ok(())
    }

    /// At most one disc in every tetrahedron, so each nonempty
    /// intersection with a tetrahedron is a single connected disc.
    pub fn is_pipeline_ready(&self) -> bool {
        (0..self.num_tets()).all(|t| self.discs_in_tet(t) <= 1)
    }

    /// Arc count of type `(face, u)`: discs whose intersection with the
    /// face is an arc separating vertex `u`.
    pub fn arcs(&self, tet: usize, face: u8, u: u8) -> u64 {
        debug_assert!(u != face);
        let c = &self.coords[tet];
        c[u as usize] + c[quad_pair_slot(u, face)]
    }

    /// Number of intersection points with the edge `{a, b}` of a
    /// tetrahedron.
    pub fn edge_crossings(&self, tet: usize, a: u8, b: u8) -> u64 {
        let c = &self.coords[tet];
        let quads: u64 = c[4..].iter().sum();
        c[a as usize] + c[b as usize] + quads - c[quad_pair_slot(a, b)]
    }

    /// Checks the matching equations across every internal face gluing,
    /// naming the face and arc type of the first failure.
    pub fn check_matching(&self, tri: &Triangulation) -> Result<(), SurfaceError> {
        if self.num_tets() != tri.num_tets() {
            return Err(SurfaceError::TetCountMismatch {
                surface: self.num_tets(),
                triangulation: tri.num_tets(),
            });
        }
        for t in 0..tri.num_tets() {
            for f in 0..4u8 {
                let Some(g) = tri.gluing(t, f) else { continue };
                for u in 0..4u8 {
                    if u == f {
                        continue;
                    }
                    let here = self.arcs(t, f, u);
                    let there = self.arcs(g.tet, g.face, g.vmap.apply(u));
                    if here != there {
                        return Err(SurfaceError::MatchingFailure {
                            tet: t,
                            face: f,
                            vertex: u,
                            here,
                            there,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Enumerated disc instances of a surface, in tetrahedron, slot, level
/// order.
#[derive(Clone, Debug)]
pub struct DiscIndex {
    offsets: Vec<usize>,
    discs: Vec<Disc>,
}

/// One normal disc instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disc {
    pub tet: usize,
    pub ty: DiscType,
    pub level: u64,
}

impl DiscIndex {
    pub fn build(surface: &NormalSurfaceVec) -> Self {
        let mut offsets = Vec::with_capacity(surface.num_tets());
        let mut discs = Vec::new();
        for t in 0..surface.num_tets() {
            offsets.push(discs.len());
            for slot in 0..7 {
                for level in 0..surface.tet(t)[slot] {
                    discs.push(Disc {
                        tet: t,
                        ty: DiscType::from_slot(slot),
                        level,
                    });
                }
            }
        }
        DiscIndex { offsets, discs }
    }

    pub fn len(&self) -> usize {
        self.discs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.discs.is_empty()
    }

    pub fn disc(&self, id: usize) -> &Disc {
        &self.discs[id]
    }

    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn id_of(&self, surface: &NormalSurfaceVec, tet: usize, ty: DiscType, level: u64) -> usize {
        let mut idx = self.offsets[tet];
        for slot in 0..ty.slot() {
            idx += surface.tet(tet)[slot] as usize;
        }
        idx + level as usize
    }

    /// Global ids of the discs inside one tetrahedron.
    pub fn tet_range(&self, tet: usize) -> core::ops::Range<usize> {
        let start = self.offsets[tet];
        let end = self
            .offsets
            .get(tet + 1)
            .copied()
            .unwrap_or(self.discs.len());
        start..end
    }

    /// Disc ids of the arc stack `(tet, face, u)` ordered by distance
    /// from vertex `u`.
    pub fn arc_stack(
        &self,
        surface: &NormalSurfaceVec,
        tet: usize,
        face: u8,
        u: u8,
    ) -> Vec<usize> {
        let c = surface.tet(tet);
        let mut out = Vec::new();
        for level in 0..c[u as usize] {
            out.push(self.id_of(surface, tet, DiscType::Tri(u), level));
        }
        let qslot = quad_pair_slot(u, face);
        let q = c[qslot];
        let ty = DiscType::from_slot(qslot);
        // Quad levels count from the side of vertex 0's pair; the stack
        // ascends from u, so it descends in level when u is on the far
        // side of the pair.
        let ascending = u == 0 || face == 0;
        for i in 0..q {
            let level = if ascending { i } else { q - 1 - i };
            out.push(self.id_of(surface, tet, ty, level));
        }
        out
    }
}

/// Sign relating a disc's transverse direction to the away-from-`u`
/// direction of its arc on a face: `+1` when the high side of the disc
/// is the away side.
pub fn arc_away_sign(ty: DiscType, face: u8, u: u8) -> i8 {
    match ty {
        DiscType::Tri(_) => 1,
        DiscType::Quad(_) => {
            if u == 0 || face == 0 {
                1
            } else {
                -1
            }
        }
    }
}

/// Connectivity, Euler characteristic, two-sidedness, and per-component
/// splitting of a normal surface.
#[derive(Clone, Debug)]
pub struct SurfaceAnalysis {
    pub euler: i64,
    pub num_components: usize,
    /// Component id of every disc instance.
    pub component_of_disc: Vec<usize>,
    /// Normal coordinates of each component.
    pub components: Vec<NormalSurfaceVec>,
    /// Whether the surface admits a coorientation (equivalently, is
    /// two-sided; in an orientable manifold, orientable).
    pub two_sided: bool,
}

/// Full combinatorial analysis of an embedded normal surface.
pub fn normal_check(
    tri: &Triangulation,
    complex: &TriComplex,
    surface: &NormalSurfaceVec,
) -> Result<SurfaceAnalysis, SurfaceError> {
    surface.check_embedded()?;
    surface.check_matching(tri)?;
    let index = DiscIndex::build(surface);

    // Components: discs glued along matched arc stacks.
    let mut uf = super::tri::UnionFind::new(index.len());
    for_each_matched_arc(tri, surface, &index, |a, b, _, _| {
        uf.union(a, b);
    });
    let roots = uf.classes();
    let mut comp_map = alloc::collections::BTreeMap::new();
    let mut component_of_disc = Vec::with_capacity(index.len());
    for r in &roots {
        let next = comp_map.len();
        let id = *comp_map.entry(*r).or_insert(next);
        component_of_disc.push(id);
    }
    let num_components = comp_map.len();
    let mut components =
        alloc::vec![NormalSurfaceVec::zero(surface.num_tets()); num_components];
    for (id, disc) in index.discs().iter().enumerate() {
        components[component_of_disc[id]].coords[disc.tet][disc.ty.slot()] += 1;
    }

    // Euler characteristic: corners - arcs + discs.
    let discs = surface.total_discs() as i64;
    let mut arcs: i64 = 0;
    for t in 0..tri.num_tets() {
        for f in 0..4u8 {
            let internal = tri.gluing(t, f).is_some();
            if internal && !is_canonical_side(tri, t, f) {
                continue;
            }
            for u in 0..4u8 {
                if u != f {
                    arcs += surface.arcs(t, f, u) as i64;
                }
            }
        }
    }
    let mut corner_count = alloc::vec![None; complex.num_edge_classes];
    for t in 0..tri.num_tets() {
        for a in 0..4u8 {
            for b in (a + 1)..4u8 {
                let (class, _) = complex.edge_of(t, a, b);
                let n = surface.edge_crossings(t, a, b);
                match corner_count[class] {
                    None => corner_count[class] = Some(n),
                    Some(m) => {
                        if m != n {
                            return Err(SurfaceError::EdgeCountMismatch {
                                tet: t,
                                a,
                                b,
                                here: n,
                                elsewhere: m,
                            });
                        }
                    }
                }
            }
        }
    }
    let corners: i64 = corner_count.iter().map(|c| c.unwrap_or(0) as i64).sum();
    let euler = corners - arcs + discs;

    let two_sided = coorient(tri, surface, &index).is_ok();

    Ok(SurfaceAnalysis {
        euler,
        num_components,
        component_of_disc,
        components,
        two_sided,
    })
}

/// Computes a coorientation: a sign per disc instance such that
/// transverse directions agree across every glued arc.  The first disc
/// of each component points to its high side.
pub fn coorient(
    tri: &Triangulation,
    surface: &NormalSurfaceVec,
    index: &DiscIndex,
) -> Result<Vec<i8>, SurfaceError> {
    let mut signs: Vec<i8> = alloc::vec![0; index.len()];
    // Constraint edges: sign[b] = sign[a] * rel.
    let mut adj: Vec<Vec<(usize, i8)>> = alloc::vec![Vec::new(); index.len()];
    let mut conflict = None;
    for_each_matched_arc(tri, surface, &index.clone(), |a, b, away_a, away_b| {
        let rel = away_a * away_b;
        adj[a].push((b, rel));
        adj[b].push((a, rel));
    });
    for start in 0..index.len() {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        let mut queue = alloc::vec![start];
        let mut head = 0;
        while head < queue.len() {
            let d = queue[head];
            head += 1;
            for &(e, rel) in &adj[d] {
                let expected = signs[d] * rel;
                if signs[e] == 0 {
                    signs[e] = expected;
                    queue.push(e);
                } else if signs[e] != expected && conflict.is_none() {
                    conflict = Some(e);
                }
            }
        }
    }
    match conflict {
        Some(disc) => Err(SurfaceError::NotCoorientable { disc }),
        None => Ok(signs),
    }
}

/// Checks a user-supplied coorientation against the gluing constraints.
pub fn validate_coorientation(
    tri: &Triangulation,
    surface: &NormalSurfaceVec,
    index: &DiscIndex,
    signs: &[i8],
) -> Result<(), SurfaceError> {
    if signs.len() != index.len() {
        return Err(SurfaceError::CoorientationLength {
            expected: index.len(),
            found: signs.len(),
        });
    }
    if let Some(i) = signs.iter().position(|&s| s != 1 && s != -1) {
        return Err(SurfaceError::CoorientationSign { disc: i });
    }
    let mut bad = None;
    for_each_matched_arc(tri, surface, index, |a, b, away_a, away_b| {
        if signs[a] * away_a != signs[b] * away_b && bad.is_none() {
            bad = Some(b);
        }
    });
    match bad {
        Some(disc) => Err(SurfaceError::NotCoorientable { disc }),
        None => Ok(()),
    }
}

/// All matched arc pairs `(disc here, disc there, crossing)` across
/// internal faces, canonical sides once: the dual graph of the surface.
pub fn matched_arc_pairs(
    tri: &Triangulation,
    surface: &NormalSurfaceVec,
    index: &DiscIndex,
) -> Vec<(usize, usize, (usize, u8))> {
    let mut out = Vec::new();
    for t in 0..tri.num_tets() {
        for f in 0..4u8 {
            let Some(g) = tri.gluing(t, f) else { continue };
            if !is_canonical_side(tri, t, f) {
                continue;
            }
            for u in 0..4u8 {
                if u == f {
                    continue;
                }
                let here = index.arc_stack(surface, t, f, u);
                let there = index.arc_stack(surface, g.tet, g.face, g.vmap.apply(u));
                for (&a, &b) in here.iter().zip(&there) {
                    out.push((a, b, (t, f)));
                }
            }
        }
    }
    out
}

/// Visits every matched arc pair `(disc here, disc there, away sign
/// here, away sign there)` across internal faces, canonical sides once.
fn for_each_matched_arc<F: FnMut(usize, usize, i8, i8)>(
    tri: &Triangulation,
    surface: &NormalSurfaceVec,
    index: &DiscIndex,
    mut visit: F,
) {
    for t in 0..tri.num_tets() {
        for f in 0..4u8 {
            let Some(g) = tri.gluing(t, f) else { continue };
            if !is_canonical_side(tri, t, f) {
                continue;
            }
            for u in 0..4u8 {
                if u == f {
                    continue;
                }
                let here = index.arc_stack(surface, t, f, u);
                let there = index.arc_stack(surface, g.tet, g.face, g.vmap.apply(u));
                debug_assert_eq!(here.len(), there.len(), "matching equations hold");
                for (&a, &b) in here.iter().zip(&there) {
                    let away_a = arc_away_sign(index.disc(a).ty, f, u);
                    let away_b =
                        arc_away_sign(index.disc(b).ty, g.face, g.vmap.apply(u));
                    visit(a, b, away_a, away_b);
                }
            }
        }
    }
}

pub(crate) fn is_canonical_side(tri: &Triangulation, t: usize, f: u8) -> bool {
    match tri.gluing(t, f) {
        None => true,
        Some(g) => (t, f) <= (g.tet, g.face),
    }
}

/// True when `(t, f)` is the lexicographically smaller side of an
/// internal face.
pub fn is_canonical_internal(tri: &Triangulation, t: usize, f: u8) -> bool {
    tri.gluing(t, f).is_some() && is_canonical_side(tri, t, f)
}

impl fmt::Display for NormalSurfaceVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, c) in self.coords.iter().enumerate() {
            if t > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "tet {}: {} {} {} {}  {} {} {}",
                t, c[0], c[1], c[2], c[3], c[4], c[5], c[6]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fiber_setup() -> (Triangulation, TriComplex, NormalSurfaceVec) {
        let tri = fixtures::solid_torus();
        let cx = TriComplex::build(&tri);
        (tri, cx, fixtures::fiber_surface())
    }

    #[test]
    fn fiber_satisfies_matching() {
        let (tri, _, s) = fiber_setup();
        s.check_matching(&tri).unwrap();
        assert!(s.is_pipeline_ready());
    }

    #[test]
    fn fiber_is_a_connected_disc() {
        let (tri, cx, s) = fiber_setup();
        let a = normal_check(&tri, &cx, &s).unwrap();
        assert_eq!(a.num_components, 1);
        assert_eq!(a.euler, 1);
        assert!(a.two_sided);
        assert_eq!(a.components[0], s);
    }

    #[test]
    fn doubled_fiber_has_two_components() {
        let (tri, cx, s) = fiber_setup();
        let doubled = s.scale(2);
        let a = normal_check(&tri, &cx, &doubled).unwrap();
        assert_eq!(a.num_components, 2);
        assert_eq!(a.euler, 2);
        for comp in &a.components {
            assert_eq!(*comp, s);
        }
    }

    #[test]
    fn empty_surface() {
        let (tri, cx, _) = fiber_setup();
        let empty = NormalSurfaceVec::zero(3);
        let a = normal_check(&tri, &cx, &empty).unwrap();
        assert_eq!(a.num_components, 0);
        assert_eq!(a.euler, 0);
    }

    #[test]
    fn vertex_link_is_a_sphere() {
        let tri = fixtures::closed_one_tet();
        tri.validate().unwrap();
        let cx = TriComplex::build(&tri);
        let s = fixtures::vertex_link_sphere();
        let a = normal_check(&tri, &cx, &s).unwrap();
        assert_eq!(a.num_components, 1);
        assert_eq!(a.euler, 2);
        assert!(a.two_sided);
    }

    #[test]
    fn matching_failure_is_named() {
        let (tri, _, s) = fiber_setup();
        let mut coords = s.coords().to_vec();
        coords[1][4] = 0;
        let broken = NormalSurfaceVec::new(coords);
        let err = broken.check_matching(&tri).unwrap_err();
        assert!(matches!(err, SurfaceError::MatchingFailure { .. }));
    }

    #[test]
    fn fiber_coorientation_is_consistent() {
        let (tri, _, s) = fiber_setup();
        let index = DiscIndex::build(&s);
        let coor = coorient(&tri, &s, &index).unwrap();
        // Propagation from the first disc: (+1, -1, -1); the fixture
        // ships the negation, which is equally valid.
        assert_eq!(coor.len(), 3);
        let fixture = fixtures::fiber_coorientation();
        validate_coorientation(&tri, &s, &index, &fixture).unwrap();
        let neg: alloc::vec::Vec<i8> = fixture.iter().map(|s| -s).collect();
        validate_coorientation(&tri, &s, &index, &neg).unwrap();
        let mut bad = fixture.clone();
        bad[1] = -bad[1];
        assert!(validate_coorientation(&tri, &s, &index, &bad).is_err());
    }

    #[test]
    fn separating_disc_fixture_matches() {
        let tri = fixtures::handlebody();
        tri.validate().unwrap();
        let cx = TriComplex::build(&tri);
        let s = fixtures::separating_disc();
        let a = normal_check(&tri, &cx, &s).unwrap();
        assert_eq!(a.num_components, 1);
        assert_eq!(a.euler, 1);
        assert!(a.two_sided);
        assert!(s.is_pipeline_ready());
    }
}
