//! Face-gluing triangulations of compact oriented 3-manifolds.
//!
//! A triangulation is a list of tetrahedra with, for each of the four
//! faces, either a boundary mark or a gluing to another tetrahedron
//! face.  Face `f` of a tetrahedron is the one opposite vertex `f`; a
//! gluing carries the full vertex correspondence as a permutation of
//! `{0,1,2,3}` sending the face index to the target face index.

use alloc::vec::Vec;
use core::fmt;

/// A permutation of `{0,1,2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm4 {
    images: [u8; 4],
}

impl Perm4 {
    pub fn identity() -> Self {
        Perm4 {
            images: [0, 1, 2, 3],
        }
    }

    pub fn from_images(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4 { images })
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    pub fn inverse(&self) -> Perm4 {
        let mut images = [0u8; 4];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Perm4 { images }
    }

    /// Sign of the permutation: `+1` even, `-1` odd.
    pub fn sign(&self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} {} {} {}]",
            self.images[0], self.images[1], self.images[2], self.images[3]
        )
    }
}

/// One side of a face identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    /// Vertex correspondence from this tetrahedron to the target;
    /// maps this face index to the target face index.
    pub vmap: Perm4,
}

/// Errors found while validating a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriError {
    Empty,
    BadGluingTarget { tet: usize, face: u8 },
    FaceImageMismatch { tet: usize, face: u8 },
    SelfGluedFace { tet: usize, face: u8 },
    NotInvolutive { tet: usize, face: u8 },
    NotConnected { reached: usize, total: usize },
    NotOrientable { tet: usize, face: u8 },
    EdgeReversed { tet: usize, a: u8, b: u8 },
}

impl fmt::Display for TriError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriError::Empty => write!(f, "triangulation has no tetrahedra"),
            TriError::BadGluingTarget { tet, face } => {
                write!(f, "gluing of face {}.{} targets a missing face", tet, face)
            }
            TriError::FaceImageMismatch { tet, face } => write!(
                f,
                "gluing of face {}.{} does not map the face index to the target face",
                tet, face
            ),
            TriError::SelfGluedFace { tet, face } => {
                write!(f, "face {}.{} is glued to itself", tet, face)
            }
            TriError::NotInvolutive { tet, face } => {
                write!(f, "gluing of face {}.{} is not matched by its partner", tet, face)
            }
            TriError::NotConnected { reached, total } => {
                write!(f, "only {} of {} tetrahedra are connected to tet 0", reached, total)
            }
            TriError::NotOrientable { tet, face } => write!(
                f,
                "orientations cannot be reconciled across face {}.{}",
                tet, face
            ),
            TriError::EdgeReversed { tet, a, b } => write!(
                f,
                "edge ({}, {}) of tet {} is identified with its own reverse",
                a, b, tet
            ),
        }
    }
}

/// A tetrahedral face-gluing complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>) -> Self {
        Triangulation { gluings }
    }

    pub fn num_tets(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<&Gluing> {
        self.gluings[tet][face as usize].as_ref()
    }

    pub fn is_boundary(&self, tet: usize, face: u8) -> bool {
        self.gluings[tet][face as usize].is_none()
    }

    /// Full structural validation: gluings well formed and involutive,
    /// complex connected, orientable, and no edge identified with its
    /// own reverse.  Returns the tetrahedron orientations.
    pub fn validate(&self) -> Result<Vec<i8>, TriError> {
        if self.gluings.is_empty() {
            return Err(TriError::Empty);
        }
        let n = self.num_tets();
        for (t, faces) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                let Some(g) = &faces[f as usize] else { continue };
                if g.tet >= n || g.face > 3 {
                    return Err(TriError::BadGluingTarget { tet: t, face: f });
                }
                if g.vmap.apply(f) != g.face {
                    return Err(TriError::FaceImageMismatch { tet: t, face: f });
                }
                if g.tet == t && g.face == f {
                    return Err(TriError::SelfGluedFace { tet: t, face: f });
                }
                let back = self.gluings[g.tet][g.face as usize].as_ref();
                let ok = back.is_some_and(|b| {
                    b.tet == t && b.face == f && b.vmap == g.vmap.inverse()
                });
                if !ok {
                    return Err(TriError::NotInvolutive { tet: t, face: f });
                }
            }
        }

        // Connectivity and orientability in one sweep.
        let mut orient: Vec<i8> = alloc::vec![0; n];
        orient[0] = 1;
        let mut queue = alloc::vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let t = queue[head];
            head += 1;
            for f in 0..4u8 {
                let Some(g) = self.gluing(t, f) else { continue };
                let expected = -g.vmap.sign() * orient[t];
                if orient[g.tet] == 0 {
                    orient[g.tet] = expected;
                    queue.push(g.tet);
                } else if orient[g.tet] != expected {
                    return Err(TriError::NotOrientable { tet: t, face: f });
                }
            }
        }
        if queue.len() != n {
            return Err(TriError::NotConnected {
                reached: queue.len(),
                total: n,
            });
        }

        // Edge validity: walking the identifications must never carry a
        // directed edge to its own reverse.
        let mut uf = UnionFind::new(n * 12);
        for (t, faces) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                let Some(g) = &faces[f as usize] else { continue };
                for a in 0..4u8 {
                    for b in 0..4u8 {
                        if a == b || a == f || b == f {
                            continue;
                        }
                        uf.union(
                            directed_edge_index(t, a, b),
                            directed_edge_index(g.tet, g.vmap.apply(a), g.vmap.apply(b)),
                        );
                    }
                }
            }
        }
        for t in 0..n {
            for a in 0..4u8 {
                for b in (a + 1)..4u8 {
                    if uf.find(directed_edge_index(t, a, b))
                        == uf.find(directed_edge_index(t, b, a))
                    {
                        return Err(TriError::EdgeReversed { tet: t, a, b });
                    }
                }
            }
        }
        Ok(orient)
    }
}

pub(crate) fn directed_edge_index(tet: usize, a: u8, b: u8) -> usize {
    debug_assert!(a != b);
    // 12 directed edges per tet: a * 3 + (b adjusted past a).
    let b_adj = if b > a { b - 1 } else { b };
    tet * 12 + (a as usize) * 3 + b_adj as usize
}

/// Small union-find used across the manifold layer.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Deterministic: smaller root wins.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn classes(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        (0..n).map(|x| self.find(x)).collect()
    }
}

/// The cell classes of a validated triangulation: vertices, edges and
/// faces after identification, with orientation bookkeeping for edges.
#[derive(Clone, Debug)]
pub struct TriComplex {
    num_tets: usize,
    /// Vertex class of each corner, indexed `tet * 4 + v`.
    pub vertex_class: Vec<usize>,
    pub num_vertex_classes: usize,
    /// Edge class and sign of each directed edge; sign `+1` when the
    /// directed edge agrees with the class representative's direction.
    edge_class: Vec<(usize, i8)>,
    pub num_edge_classes: usize,
    /// Representative directed edge of each class.
    pub edge_reps: Vec<(usize, u8, u8)>,
    /// Whether each edge class touches a boundary face.
    pub edge_boundary: Vec<bool>,
    /// Face class of each face, with `None` in `pair` for boundary.
    pub face_class: Vec<usize>,
    pub num_face_classes: usize,
    /// Canonical sides: for an internal class the lexicographically
    /// smaller `(tet, face)` side; boundary classes have one side.
    pub face_reps: Vec<(usize, u8)>,
    pub face_internal: Vec<bool>,
}

impl TriComplex {
    pub fn build(tri: &Triangulation) -> Self {
        let n = tri.num_tets();

        // Vertex classes.
        let mut vuf = UnionFind::new(n * 4);
        for t in 0..n {
            for f in 0..4u8 {
                let Some(g) = tri.gluing(t, f) else { continue };
                for v in 0..4u8 {
                    if v == f {
                        continue;
                    }
                    vuf.union(t * 4 + v as usize, g.tet * 4 + g.vmap.apply(v) as usize);
                }
            }
        }
        let (vertex_class, num_vertex_classes) = compress(vuf.classes());

        // Directed edge classes, then undirected pairs with signs.
        let mut euf = UnionFind::new(n * 12);
        for t in 0..n {
            for f in 0..4u8 {
                let Some(g) = tri.gluing(t, f) else { continue };
                for a in 0..4u8 {
                    for b in 0..4u8 {
                        if a == b || a == f || b == f {
                            continue;
                        }
                        euf.union(
                            directed_edge_index(t, a, b),
                            directed_edge_index(g.tet, g.vmap.apply(a), g.vmap.apply(b)),
                        );
                    }
                }
            }
        }
        let directed = euf.classes();
        let mut root_class: alloc::collections::BTreeMap<usize, (usize, i8)> =
            alloc::collections::BTreeMap::new();
        let mut edge_class = alloc::vec![(usize::MAX, 0i8); n * 12];
        let mut edge_reps = Vec::new();
        for t in 0..n {
            for a in 0..4u8 {
                for b in 0..4u8 {
                    if a == b {
                        continue;
                    }
                    let idx = directed_edge_index(t, a, b);
                    let fwd = directed[idx];
                    if let Some(&(id, sign)) = root_class.get(&fwd) {
                        edge_class[idx] = (id, sign);
                        continue;
                    }
                    let id = edge_reps.len();
                    edge_reps.push((t, a, b));
                    let bwd = directed[directed_edge_index(t, b, a)];
                    root_class.insert(fwd, (id, 1));
                    root_class.insert(bwd, (id, -1));
                    edge_class[idx] = (id, 1);
                }
            }
        }
        let num_edge_classes = edge_reps.len();
        let mut edge_boundary = alloc::vec![false; num_edge_classes];
        for t in 0..n {
            for f in 0..4u8 {
                if !tri.is_boundary(t, f) {
                    continue;
                }
                for a in 0..4u8 {
                    for b in 0..4u8 {
                        if a == b || a == f || b == f {
                            continue;
                        }
                        edge_boundary[edge_class[directed_edge_index(t, a, b)].0] = true;
                    }
                }
            }
        }

        // Face classes.
        let mut face_class = alloc::vec![usize::MAX; n * 4];
        let mut face_reps = Vec::new();
        let mut face_internal = Vec::new();
        for t in 0..n {
            for f in 0..4u8 {
                if face_class[t * 4 + f as usize] != usize::MAX {
                    continue;
                }
                let id = face_reps.len();
                face_class[t * 4 + f as usize] = id;
                face_reps.push((t, f));
                match tri.gluing(t, f) {
                    Some(g) => {
                        face_class[g.tet * 4 + g.face as usize] = id;
                        face_internal.push(true);
                    }
                    None => face_internal.push(false),
                }
            }
        }
        let num_face_classes = face_reps.len();

        TriComplex {
            num_tets: n,
            vertex_class,
            num_vertex_classes,
            edge_class,
            num_edge_classes,
            edge_reps,
            edge_boundary,
            face_class,
            num_face_classes,
            face_reps,
            face_internal,
        }
    }

    pub fn num_tets(&self) -> usize {
        self.num_tets
    }

    /// Edge class and relative direction of the directed edge `(a, b)`.
    pub fn edge_of(&self, tet: usize, a: u8, b: u8) -> (usize, i8) {
        self.edge_class[directed_edge_index(tet, a, b)]
    }

    pub fn face_of(&self, tet: usize, face: u8) -> usize {
        self.face_class[tet * 4 + face as usize]
    }

    pub fn vertex_of(&self, tet: usize, v: u8) -> usize {
        self.vertex_class[tet * 4 + v as usize]
    }
}

fn compress(roots: Vec<usize>) -> (Vec<usize>, usize) {
    let mut map = alloc::collections::BTreeMap::new();
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let next = map.len();
        let id = *map.entry(r).or_insert(next);
        out.push(id);
    }
    (out, map.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn lone_tet_is_valid() {
        let tri = Triangulation::new(alloc::vec![[None, None, None, None]]);
        assert_eq!(tri.validate().unwrap(), alloc::vec![1]);
        let cx = TriComplex::build(&tri);
        assert_eq!(cx.num_vertex_classes, 4);
        assert_eq!(cx.num_edge_classes, 6);
        assert_eq!(cx.num_face_classes, 4);
    }

    #[test]
    fn broken_involution_is_named() {
        // Glue 0.0 -> 1.3 but give 1.3 a wrong back-map.
        let fwd = Gluing {
            tet: 1,
            face: 3,
            vmap: Perm4::from_images([3, 0, 1, 2]).unwrap(),
        };
        let bad_back = Gluing {
            tet: 0,
            face: 0,
            vmap: Perm4::from_images([3, 0, 2, 1]).unwrap(),
        };
        let tri = Triangulation::new(alloc::vec![
            [Some(fwd), None, None, None],
            [None, None, None, Some(bad_back)],
        ]);
        assert_eq!(
            tri.validate(),
            Err(TriError::NotInvolutive { tet: 0, face: 0 })
        );
    }

    #[test]
    fn solid_torus_fixture_is_valid() {
        let tri = fixtures::solid_torus();
        tri.validate().unwrap();
        let cx = TriComplex::build(&tri);
        // Triangle x circle: 3 vertex classes, 9 edge classes (all on
        // the boundary torus), 12 face classes (3 internal, 6 boundary
        // faces of 1 class each).
        assert_eq!(cx.num_vertex_classes, 3);
        assert_eq!(cx.num_edge_classes, 9);
        assert!(cx.edge_boundary.iter().all(|&b| b));
       assert_eq!(cx.face_internal.iter().filter(|&&i| i).count(), 3);
    }
}
