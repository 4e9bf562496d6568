//! The fundamental group from the dual 1-skeleton.
//!
//! Dual vertices are tetrahedra, dual edges internal face classes.  A
//! breadth-first spanning tree based at tetrahedron 0 collapses, leaving
//! one generator per non-tree internal face class; relators come from
//! the face cycles around internal edge classes.  Every word-level
//! consumer also needs the underlying paths, so the structure keeps the
//! face crossing sequences, not just the quotient words.

use alloc::vec::Vec;

use crate::group::{Presentation, Word};

use super::tri::{TriComplex, TriError, Triangulation};

/// What a face contributes to the dual presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceRole {
    Boundary,
    /// Collapsed spanning tree edge.
    Tree,
    /// Generator edge; `sign` is `+1` when crossing from this side is
    /// the positive generator direction.
    Generator { index: usize, sign: i8 },
}

/// A face crossing: the tetrahedron stood in and the face crossed.
pub type Crossing = (usize, u8);

/// Presentation of the fundamental group dual to a triangulation, with
/// enough path data to realize words as face-crossing walks.
#[derive(Clone, Debug)]
pub struct DualPresentation {
    presentation: Presentation,
    roles: Vec<[FaceRole; 4]>,
    /// For every tetrahedron except 0: the crossing that first reaches
    /// it in the spanning tree.
    tree_parent: Vec<Option<Crossing>>,
    /// Positive crossing side of each generator.
    generator_sides: Vec<Crossing>,
}

/// Builds the dual presentation; the triangulation must be valid.
pub fn fundamental_group(tri: &Triangulation) -> Result<DualPresentation, TriError> {
    tri.validate()?;
    let n = tri.num_tets();
    let mut roles = alloc::vec![[FaceRole::Boundary; 4]; n];
    let mut tree_parent: Vec<Option<Crossing>> = alloc::vec![None; n];
    let mut visited = alloc::vec![false; n];
    visited[0] = true;
    let mut queue = alloc::vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let t = queue[head];
        head += 1;
        for f in 0..4u8 {
            let Some(g) = tri.gluing(t, f) else { continue };
            if !visited[g.tet] {
                visited[g.tet] = true;
                tree_parent[g.tet] = Some((t, f));
                roles[t][f as usize] = FaceRole::Tree;
                roles[g.tet][g.face as usize] = FaceRole::Tree;
                queue.push(g.tet);
            }
        }
    }

    let mut generator_sides = Vec::new();
    for t in 0..n {
        for f in 0..4u8 {
            let Some(g) = tri.gluing(t, f) else { continue };
            if roles[t][f as usize] != FaceRole::Boundary {
                continue;
            }
            let index = generator_sides.len();
            roles[t][f as usize] = FaceRole::Generator { index, sign: 1 };
            roles[g.tet][g.face as usize] = FaceRole::Generator { index, sign: -1 };
            generator_sides.push((t, f));
        }
    }

    // Relators: face cycles around internal edge classes.
    let complex = TriComplex::build(tri);
    let mut relators = Vec::new();
    for class in 0..complex.num_edge_classes {
        if complex.edge_boundary[class] {
            continue;
        }
        let (t0, a0, b0) = complex.edge_reps[class];
        let faces: Vec<u8> = (0..4u8).filter(|&x| x != a0 && x != b0).collect();
        let f0 = faces[0];
        let mut word = Word::empty();
        let (mut t, mut a, mut b, mut f) = (t0, a0, b0, f0);
        loop {
            match roles[t][f as usize] {
                FaceRole::Boundary => unreachable!("internal edge class"),
                FaceRole::Tree => {}
                FaceRole::Generator { index, sign } => {
                    word.push(sign as i32 * (index as i32 + 1));
                }
            }
            let g = tri.gluing(t, f).expect("internal face");
            let (nt, na, nb) = (g.tet, g.vmap.apply(a), g.vmap.apply(b));
            let entered = g.face;
            let nf = 6 - na - nb - entered;
            t = nt;
            a = na;
            b = nb;
            f = nf;
            if (t, a, b, f) == (t0, a0, b0, f0) {
                break;
            }
        }
        if !word.is_empty() {
            relators.push(word);
        }
    }

    let gens = (0..generator_sides.len())
        .map(|i| alloc::format!("x{}", i))
        .collect();
    let presentation =
        Presentation::new(gens, relators).expect("generated names are distinct");
    Ok(DualPresentation {
        presentation,
        roles,
        tree_parent,
        generator_sides,
    })
}

impl DualPresentation {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn num_generators(&self) -> usize {
        self.generator_sides.len()
    }

    pub fn role(&self, t: usize, f: u8) -> FaceRole {
        self.roles[t][f as usize]
    }

    pub fn generator_side(&self, index: usize) -> Crossing {
        self.generator_sides[index]
    }

    /// Face crossings from the base tetrahedron to `t` along the tree.
    pub fn tree_path(&self, t: usize) -> Vec<Crossing> {
        let mut rev = Vec::new();
        let mut cur = t;
        while let Some((p, f)) = self.tree_parent[cur] {
            rev.push((p, f));
            cur = p;
        }
        rev.reverse();
        rev
    }

    /// The crossing walked in the opposite direction.
    fn reverse_crossing(&self, tri: &Triangulation, c: Crossing) -> Crossing {
        let g = tri.gluing(c.0, c.1).expect("internal face");
        (g.tet, g.face)
    }

    /// The based loop of one generator letter as face crossings:
    /// tree path out, the generator face, tree path back.
    pub fn letter_crossings(&self, tri: &Triangulation, letter: i32) -> Vec<Crossing> {
        let index = Word::generator_of(letter);
        let (t, f) = self.generator_sides[index];
        let g = tri.gluing(t, f).expect("generator face is internal");
        let mut fwd = self.tree_path(t);
        fwd.push((t, f));
        let mut back: Vec<Crossing> = self
            .tree_path(g.tet)
            .iter()
            .rev()
            .map(|&c| self.reverse_crossing(tri, c))
            .collect();
        fwd.append(&mut back);
        if letter < 0 {
            fwd.reverse();
            fwd = fwd
                .iter()
                .map(|&c| self.reverse_crossing(tri, c))
                .collect();
        }
        fwd
    }

    /// The based loop of a whole word as face crossings.
    pub fn word_crossings(&self, tri: &Triangulation, w: &Word) -> Vec<Crossing> {
        let mut out = Vec::new();
        for &l in w.letters() {
            out.extend(self.letter_crossings(tri, l));
        }
        out
    }

    /// The group word read off a closed crossing sequence.
    pub fn word_of_crossings(&self, crossings: &[Crossing]) -> Word {
        let mut w = Word::empty();
        for &(t, f) in crossings {
            if let FaceRole::Generator { index, sign } = self.roles[t][f as usize] {
                w.push(sign as i32 * (index as i32 + 1));
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn solid_torus_group_is_infinite_cyclic() {
        let tri = fixtures::solid_torus();
        let dual = fundamental_group(&tri).unwrap();
        assert_eq!(dual.num_generators(), 1);
        assert!(dual.presentation().relators().is_empty());
    }

    #[test]
    fn handlebody_group_is_free_of_rank_two() {
        let tri = fixtures::handlebody();
        let dual = fundamental_group(&tri).unwrap();
        assert_eq!(dual.num_generators(), 2);
        assert!(dual.presentation().relators().is_empty());
    }

    #[test]
    fn lone_tet_ball_is_simply_connected() {
        let tri = Triangulation::new(alloc::vec![[None, None, None, None]]);
        let dual = fundamental_group(&tri).unwrap();
        assert_eq!(dual.num_generators(), 0);
        let ab = super::super::homology::abelianization(dual.presentation());
        assert_eq!(ab.betti, 0);
        assert!(ab.torsion.is_empty());
    }

    #[test]
    fn closed_one_tet_has_relators() {
        let tri = fixtures::closed_one_tet();
        let dual = fundamental_group(&tri).unwrap();
        // One tetrahedron: no tree edges, both face classes generate.
        assert_eq!(dual.num_generators(), 2);
        assert!(!dual.presentation().relators().is_empty());
    }

    #[test]
    fn crossings_close_up() {
        let tri = fixtures::handlebody();
        let dual = fundamental_group(&tri).unwrap();
        let w = Word::from_letters(&[1, 2, -1]);
        let crossings = dual.word_crossings(&tri, &w);
        // The walk is a loop at tet 0 and reads back the same word.
        let mut cur = 0usize;
        for &(t, f) in &crossings {
            assert_eq!(t, cur);
            cur = tri.gluing(t, f).unwrap().tet;
        }
        assert_eq!(cur, 0);
        assert_eq!(dual.word_of_crossings(&crossings), w);
    }
}
