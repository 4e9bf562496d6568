//! Built-in test complexes.
//!
//! Two small triangulations drive most of the integration tests and the
//! command-line examples:
//!
//! - [`solid_torus`]: a triangle cross a circle built from one triangular
//!   prism split into three tetrahedra, with top glued to bottom.  The
//!   prism cross-section survives as the connected non-separating normal
//!   surface [`fiber_surface`] meeting every tetrahedron in one disc.
//! - [`handlebody`]: two copies of the solid torus glued along one
//!   boundary face, a genus-2 handlebody.  The normal triangle
//!   [`separating_disc`] parallel to the connecting face separates it
//!   into the two solid tori, and lifts to a non-separating disc in the
//!   connected double cover where both core loops swap the sheets.
//!
//! Both are validated by the crate's own checkers in the test suites;
//! nothing here is special-cased anywhere in the library code.

use alloc::vec;
use alloc::vec::Vec;

use crate::manifold::{Gluing, NormalSurfaceVec, Perm4, Triangulation};

/// Prism tetrahedra: tet `i` face 0 glues to tet `i+1 mod 3` face 3 with
/// the vertex rotation `[3, 0, 1, 2]`; faces 1 and 2 stay on the
/// boundary torus.
pub fn solid_torus() -> Triangulation {
    let fwd = Perm4::from_images([3, 0, 1, 2]).expect("permutation");
    let bwd = fwd.inverse();
    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None, None, None, None]; 3];
    for i in 0..3 {
        let next = (i + 1) % 3;
        gluings[i][0] = Some(Gluing {
            tet: next,
            face: 3,
            vmap: fwd,
        });
        gluings[next][3] = Some(Gluing {
            tet: i,
            face: 0,
            vmap: bwd,
        });
    }
    Triangulation::new(gluings)
}

/// The prism cross-section as a normal surface: a triangle at the apex
/// of the first tetrahedron, the quadrilateral of the middle one, and a
/// triangle at the base vertex of the last.
pub fn fiber_surface() -> NormalSurfaceVec {
    NormalSurfaceVec::new(vec![
        [0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0, 0],
    ])
}

/// Transverse orientation of [`fiber_surface`] pointing along the circle
/// direction, one sign per disc in instance order.
pub fn fiber_coorientation() -> Vec<i8> {
    vec![-1, 1, 1]
}

/// Two solid tori (tets 0..3 and 3..6) joined by an open prism tube
/// (tets 6..8, the solid-torus prism without its top-to-bottom closing
/// gluing): a genus-2 handlebody.  The tube's bottom glues to face 1 of
/// tet 0, its top to face 1 of tet 3.
pub fn handlebody() -> Triangulation {
    let st = solid_torus();
    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None, None, None, None]; 9];
    for i in 0..3 {
        for f in 0..4u8 {
            if let Some(g) = st.gluing(i, f) {
                for offset in [0usize, 3] {
                    gluings[i + offset][f as usize] = Some(Gluing {
                        tet: g.tet + offset,
                        face: g.face,
                        vmap: g.vmap,
                    });
                }
                // The tube keeps only its internal prism gluings.
                if g.tet == (i + 1) % 3 && g.face == 3 && i != 2 {
                    gluings[i + 6][f as usize] = Some(Gluing {
                        tet: g.tet + 6,
                        face: g.face,
                        vmap: g.vmap,
                    });
                }
                if g.tet == (i + 2) % 3 && g.face == 0 && i != 0 {
                    gluings[i + 6][f as usize] = Some(Gluing {
                        tet: g.tet + 6,
                        face: g.face,
                        vmap: g.vmap,
                    });
                }
            }
        }
    }
    // Tube bottom (6.3, vertices 0 1 2) onto 0.1 (vertices 0 2 3).
    let bottom = Perm4::from_images([0, 3, 2, 1]).expect("permutation");
    gluings[6][3] = Some(Gluing {
        tet: 0,
        face: 1,
        vmap: bottom,
    });
    gluings[0][1] = Some(Gluing {
        tet: 6,
        face: 3,
        vmap: bottom,
    });
    // Tube top (8.0, vertices 1 2 3) onto 3.1 (vertices 0 2 3).
    let top = Perm4::from_images([1, 0, 2, 3]).expect("permutation");
    gluings[8][0] = Some(Gluing {
        tet: 3,
        face: 1,
        vmap: top,
    });
    gluings[3][1] = Some(Gluing {
        tet: 8,
        face: 0,
        vmap: top,
    });
    Triangulation::new(gluings)
}

/// The tube cross-section of [`handlebody`]: a normal disc in tets
/// 6..8 separating the two solid tori.
pub fn separating_disc() -> NormalSurfaceVec {
    let mut coords = vec![[0u64; 7]; 9];
    coords[6][3] = 1;
    coords[7][4] = 1;
    coords[8][0] = 1;
    NormalSurfaceVec::new(coords)
}

/// Transverse orientation of [`separating_disc`], pointing from the
/// first solid torus toward the second.
pub fn separating_disc_coorientation() -> Vec<i8> {
    vec![-1, 1, 1]
}

/// A closed orientable triangulation with a single tetrahedron: face 0
/// glues to face 1 swapping vertices 0 and 1, face 2 to face 3 swapping
/// 2 and 3.  Two vertex classes, three edge classes.
pub fn closed_one_tet() -> Triangulation {
    let g01 = Perm4::from_images([1, 0, 2, 3]).expect("permutation");
    let g23 = Perm4::from_images([0, 1, 3, 2]).expect("permutation");
    Triangulation::new(vec![[
        Some(Gluing {
            tet: 0,
            face: 1,
            vmap: g01,
        }),
        Some(Gluing {
            tet: 0,
            face: 0,
            vmap: g01,
        }),
        Some(Gluing {
            tet: 0,
            face: 3,
            vmap: g23,
        }),
        Some(Gluing {
            tet: 0,
            face: 2,
            vmap: g23,
        }),
    ]])
}

/// The link of the vertex class `{0, 1}` of [`closed_one_tet`]: a
/// normal two-sphere.
pub fn vertex_link_sphere() -> NormalSurfaceVec {
    NormalSurfaceVec::new(vec![[1, 1, 0, 0, 0, 0, 0]])
}
