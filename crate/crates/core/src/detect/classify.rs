//! Per-tetrahedron classification of corner images and extraction of
//! the dual surface.
//!
//! Each tetrahedron's four corner images must form either one class, or
//! two classes at graph distance exactly 2 joined through a primed
//! lattice adjacent to both.  The two-class tetrahedra then contribute
//! two parallel copies of the separating disc, which reassembles the
//! input surface doubled.

use alloc::vec::Vec;

use crate::lattice::{
    adjacent, flag_witness, graph_distance, homothetic, LatticeBasis, LatticeClass,
};
use crate::manifold::{DiscType, NormalSurfaceVec};

use super::heights::VertexImage;
use super::DetectError;

/// Classification of one tetrahedron of the base triangulation.
#[derive(Clone, Debug)]
pub enum TetClass {
    /// All four corners map to one vertex.
    Single { class: VertexImage },
    /// Two vertices at distance 2 with a common neighbor.
    Pair {
        /// Image of the corners on the arrow side of the surface.
        plus: VertexImage,
        /// Image of the remaining corners.
        minus: VertexImage,
        /// Corners mapping to `plus`.
        plus_corners: Vec<u8>,
        /// Sheets whose copy of the tetrahedron meets the surface.
        crossed_sheets: Vec<usize>,
        /// Interleaved exponents of the primed lattice adjacent to both.
        prime_exponents: Vec<i64>,
        /// Distance between the two classes (always 2).
        distance: u64,
    },
}

/// Classifies the corner images of one tetrahedron.
pub fn classify_tet(m_tet: usize, images: &[VertexImage; 4]) -> Result<TetClass, DetectError> {
    let mut distinct: Vec<(VertexImage, Vec<u8>)> = Vec::new();
    for (c, img) in images.iter().enumerate() {
        match distinct.iter_mut().find(|(v, _)| v.same_class(img)) {
            Some((_, corners)) => corners.push(c as u8),
            None => distinct.push((img.clone(), alloc::vec![c as u8])),
        }
    }
    match distinct.len() {
        1 => Ok(TetClass::Single {
            class: distinct.remove(0).0,
        }),
        2 => {
            let (b, corners_b) = distinct.remove(1);
            let (a, corners_a) = distinct.remove(0);
            // The two images differ by +1 exactly on the crossed sheets.
            let mut crossed = Vec::new();
            let mut sign = 0i64;
            for (j, (&ha, &hb)) in a.heights().iter().zip(b.heights()).enumerate() {
                let d = hb - ha;
                if d == 0 {
                    continue;
                }
                if d.abs() != 1 || (sign != 0 && d != sign) {
                    return Err(DetectError::TetImageMismatch {
                        tet: m_tet,
                        reason: "corner images do not differ by one uniform unit step",
                    });
                }
                sign = d;
                crossed.push(j);
            }
            if crossed.is_empty() {
                return Err(DetectError::TetImageMismatch {
                    tet: m_tet,
                    reason: "distinct classes with identical heights",
                });
            }
            let (plus, minus, plus_corners) = if sign > 0 {
                (b, a, corners_b)
            } else {
                (a, b, corners_a)
            };
            let dist = plus.distance(&minus);
            if dist != 2 {
                return Err(DetectError::TetImageDistance {
                    tet: m_tet,
                    distance: dist,
                });
            }
            // Primed lattice: lower height with a shifted second slot on
            // crossed sheets, the shared heights elsewhere.
            let mut prime = Vec::with_capacity(2 * plus.degree());
            for (j, (&hp, &hm)) in plus.heights().iter().zip(minus.heights()).enumerate() {
                if crossed.contains(&j) {
                    let n = hm.min(hp);
                    prime.push(n);
                    prime.push(-n - 1);
                } else {
                    prime.push(hp);
                    prime.push(-hp);
                }
            }
            verify_flags(m_tet, &plus, &minus, &prime)?;
            Ok(TetClass::Pair {
                plus,
                minus,
                plus_corners,
                crossed_sheets: crossed,
                prime_exponents: prime,
                distance: 2,
            })
        }
        n => Err(DetectError::TooManyTetImages { tet: m_tet, classes: n }),
    }
}

/// Checks the two flag chains through the primed lattice with the
/// general lattice machinery (adjacency, membership witnesses, distance,
/// and canonical class keys), cross-checking the apartment fast path.
fn verify_flags(
    m_tet: usize,
    plus: &VertexImage,
    minus: &VertexImage,
    prime: &[i64],
) -> Result<(), DetectError> {
    let prime_basis = LatticeBasis::from_diag_exponents(prime);
    let plus_basis = plus.to_basis();
    let minus_basis = minus.to_basis();
    let ok = adjacent(&prime_basis, &plus_basis).map_err(DetectError::Lattice)?
        && adjacent(&prime_basis, &minus_basis).map_err(DetectError::Lattice)?
        && flag_witness(&prime_basis, &plus_basis)
            .map_err(DetectError::Lattice)?
            .is_some()
        && flag_witness(&prime_basis, &minus_basis)
            .map_err(DetectError::Lattice)?
            .is_some()
        && graph_distance(&plus_basis, &minus_basis).map_err(DetectError::Lattice)? == 2
        && !homothetic(&plus_basis, &minus_basis).map_err(DetectError::Lattice)?;
    if !ok {
        return Err(DetectError::TetImageMismatch {
            tet: m_tet,
            reason: "flag chains through the primed lattice failed",
        });
    }
    // Canonical keys agree with the pairwise tests.
    let kp = LatticeClass::from_basis(&plus_basis).map_err(DetectError::Lattice)?;
    let km = LatticeClass::from_basis(&minus_basis).map_err(DetectError::Lattice)?;
    if kp == km {
        return Err(DetectError::TetImageMismatch {
            tet: m_tet,
            reason: "class keys collide for distinct classes",
        });
    }
    Ok(())
}

/// Emits two parallel copies of the separating disc in every two-class
/// tetrahedron.
pub fn extract_dual_surface(
    num_tets: usize,
    classes: &[TetClass],
) -> Result<NormalSurfaceVec, DetectError> {
    let mut coords = alloc::vec![[0u64; 7]; num_tets];
    for (t, class) in classes.iter().enumerate() {
        if let TetClass::Pair { plus_corners, .. } = class {
            let ty = DiscType::from_partition(plus_corners).ok_or(
                DetectError::TetImageMismatch {
                    tet: t,
                    reason: "corner partition is not realizable by a normal disc",
                },
            )?;
            coords[t][ty.slot()] = 2;
        }
    }
    Ok(NormalSurfaceVec::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(h: &[i64]) -> VertexImage {
        VertexImage::new(h.to_vec())
    }

    #[test]
    fn uncrossed_tet_is_single() {
        let images = [img(&[2]), img(&[2]), img(&[2]), img(&[2])];
        assert!(matches!(
            classify_tet(0, &images).unwrap(),
            TetClass::Single { .. }
        ));
    }

    #[test]
    fn crossed_tet_is_a_distance_two_pair() {
        let images = [img(&[3]), img(&[2]), img(&[2]), img(&[2])];
        let class = classify_tet(0, &images).unwrap();
        let TetClass::Pair {
            plus,
            minus,
            plus_corners,
            crossed_sheets,
            distance,
            ..
        } = class
        else {
            panic!("expected a pair");
        };
        assert_eq!(plus.heights(), &[3]);
        assert_eq!(minus.heights(), &[2]);
        assert_eq!(plus_corners, alloc::vec![0]);
        assert_eq!(crossed_sheets, alloc::vec![0]);
        assert_eq!(distance, 2);
    }

    #[test]
    fn partially_crossed_cover_tet() {
        // Two sheets, only the second crossed.
        let images = [img(&[5, 1]), img(&[5, 0]), img(&[5, 0]), img(&[5, 1])];
        let class = classify_tet(3, &images).unwrap();
        let TetClass::Pair {
            plus_corners,
            crossed_sheets,
            prime_exponents,
            ..
        } = class
        else {
            panic!("expected a pair");
        };
        assert_eq!(plus_corners, alloc::vec![0, 3]);
        assert_eq!(crossed_sheets, alloc::vec![1]);
        assert_eq!(prime_exponents, alloc::vec![5, -5, 0, -1]);
    }

    #[test]
    fn three_classes_abort() {
        let images = [img(&[0]), img(&[1]), img(&[2]), img(&[0])];
        assert!(matches!(
            classify_tet(7, &images),
            Err(DetectError::TooManyTetImages { tet: 7, classes: 3 })
        ));
    }

    #[test]
    fn non_unit_step_aborts() {
        let images = [img(&[2]), img(&[0]), img(&[0]), img(&[0])];
        assert!(matches!(
            classify_tet(1, &images),
            Err(DetectError::TetImageDistance { .. }) | Err(DetectError::TetImageMismatch { .. })
        ));
    }

    #[test]
    fn extraction_doubles_discs() {
        let classes = alloc::vec![
            classify_tet(0, &[img(&[1]), img(&[0]), img(&[0]), img(&[0])]).unwrap(),
            classify_tet(1, &[img(&[0]), img(&[0]), img(&[0]), img(&[0])]).unwrap(),
        ];
        let s = extract_dual_surface(2, &classes).unwrap();
        assert_eq!(s.tet(0)[0], 2);
        assert_eq!(s.discs_in_tet(1), 0);
    }
}
