//! Component counting for the preimages of a separating surface and of
//! its complementary pieces in a finite cover, done twice: once by
//! cutting the cover combinatorially, once by orbit counting of the
//! images of the relevant subgroups.

use alloc::vec::Vec;

use crate::group::{PermRep, Word};

use super::cover::{Cover, CoverError};
use super::dual::DualPresentation;
use super::regions::{is_separating, RegionComplex};
use super::surface::{matched_arc_pairs, normal_check, DiscIndex, NormalSurfaceVec};
use super::tri::{TriComplex, Triangulation};
use super::SurfaceError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorollaryError {
    Surface(SurfaceError),
    Cover(CoverError),
    NotSeparating,
    NotConnected { components: usize },
}

impl core::fmt::Display for CorollaryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CorollaryError::Surface(e) => write!(f, "surface: {}", e),
            CorollaryError::Cover(e) => write!(f, "cover: {}", e),
            CorollaryError::NotSeparating => write!(f, "surface does not separate"),
            CorollaryError::NotConnected { components } => {
                write!(f, "surface has {} components, need a connected one", components)
            }
        }
    }
}

/// Counts from the covering-space component argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub degree: usize,
    /// Complement components of the surface downstairs (2 when the
    /// connected surface separates).
    pub complement_components: usize,
    /// Components of the preimage of the surface, counted by cutting.
    pub surface_preimage_components: usize,
    /// Components of the preimage of each complementary piece.
    pub piece_preimage_components: Vec<usize>,
    /// Components of the preimage of the surface, by orbit counting of
    /// the image of its fundamental group.
    pub surface_orbit_count: usize,
    /// Same for each complementary piece.
    pub piece_orbit_counts: Vec<usize>,
    /// Whether preimage components of the surface are at least the total
    /// complement components upstairs.
    pub inequality_holds: bool,
    /// Index of a non-separating preimage component, when one exists.
    pub nonseparating_component: Option<usize>,
    /// Whether cutting along that single component leaves the cover
    /// connected.
    pub nonseparating_confirmed: bool,
}

/// Runs the counting argument for a connected separating surface.
pub fn corollary_count(
    tri: &Triangulation,
    complex: &TriComplex,
    dual: &DualPresentation,
    surface: &NormalSurfaceVec,
    coor: &[i8],
    rep: &PermRep,
) -> Result<CorollaryReport, CorollaryError> {
    let analysis =
        normal_check(tri, complex, surface).map_err(CorollaryError::Surface)?;
    if analysis.num_components != 1 {
        return Err(CorollaryError::NotConnected {
            components: analysis.num_components,
        });
    }
    let regions_m =
        RegionComplex::build(tri, surface, coor).map_err(CorollaryError::Surface)?;
    let sep = regions_m.separation();
    if !sep.separating {
        return Err(CorollaryError::NotSeparating);
    }

    let cover = Cover::build(tri, dual, rep).map_err(CorollaryError::Cover)?;
    let total = cover.total().clone();
    let cx_n = TriComplex::build(&total);
    let lifted = cover.lift_surface(surface);
    let lifted_coor = cover.lift_coorientation(coor);
    let analysis_n =
        normal_check(&total, &cx_n, &lifted).map_err(CorollaryError::Surface)?;
    let regions_n =
        RegionComplex::build(&total, &lifted, &lifted_coor).map_err(CorollaryError::Surface)?;

    // Components of the preimage of each complementary piece: classify
    // every chunk upstairs by the chunk it covers downstairs.
    let mut piece_preimage_components = alloc::vec![0usize; regions_m.num_chunks()];
    let mut seen_chunk = alloc::vec![false; regions_n.num_chunks()];
    for dense_n in 0..regions_n.num_regions() {
        let chunk_n = regions_n.chunk_of_region(dense_n);
        if seen_chunk[chunk_n] {
            continue;
        }
        seen_chunk[chunk_n] = true;
        let n_tet = regions_n.tet_of_region(dense_n);
        let rid = regions_n.region_id(n_tet, dense_n);
        let m_dense = regions_m.region_index(cover.base_tet_of(n_tet), rid);
        piece_preimage_components[regions_m.chunk_of_region(m_dense)] += 1;
    }

    let surface_preimage_components = analysis_n.num_components;
    let inequality_holds =
        surface_preimage_components >= piece_preimage_components.iter().sum::<usize>();

    // Orbit route: generators of the surface group image come from the
    // dual graph of the surface, of each piece from its region graph.
    let index = DiscIndex::build(surface);
    let surface_orbit_count =
        rep.orbit_count_of_subgroup(&surface_group_words(tri, dual, surface, &index));
    let piece_orbit_counts: Vec<usize> = (0..regions_m.num_chunks())
        .map(|chunk| {
            rep.orbit_count_of_subgroup(&piece_group_words(tri, dual, &regions_m, chunk))
        })
        .collect();

    // A non-separating component of the preimage, confirmed by cutting
    // the cover along that component alone.
    let mut nonseparating_component = None;
    let mut nonseparating_confirmed = false;
    for (i, comp) in analysis_n.components.iter().enumerate() {
        let s = is_separating(&total, &cx_n, comp).map_err(CorollaryError::Surface)?;
        if !s.separating {
            nonseparating_component = Some(i);
            nonseparating_confirmed = s.complement_components == 1;
            break;
        }
    }

    Ok(CorollaryReport {
        degree: cover.degree(),
        complement_components: sep.complement_components,
        surface_preimage_components,
        piece_preimage_components,
        surface_orbit_count,
        piece_orbit_counts,
        inequality_holds,
        nonseparating_component,
        nonseparating_confirmed,
    })
}

/// Words generating the image of the surface's fundamental group: loops
/// of the dual graph of the surface, conjugated to the base point.
fn surface_group_words(
    tri: &Triangulation,
    dual: &DualPresentation,
    surface: &NormalSurfaceVec,
    index: &DiscIndex,
) -> Vec<Word> {
    let arcs = matched_arc_pairs(tri, surface, index);
    let n = index.len();
    if n == 0 {
        return Vec::new();
    }
    // Spanning tree of the disc graph with crossing paths back to disc 0,
    // grown by repeated sweeps; arc lists are tiny.
    let mut path: Vec<Option<Vec<(usize, u8)>>> = alloc::vec![None; n];
    path[0] = Some(Vec::new());
    let mut tree = alloc::vec![false; arcs.len()];
    let mut progressed = true;
    while progressed {
        progressed = false;
        for (k, &(a, b, crossing)) in arcs.iter().enumerate() {
            for (x, y, fwd) in [(a, b, true), (b, a, false)] {
                if path[x].is_some() && path[y].is_none() {
                    let mut p = path[x].clone().expect("visited");
                    p.push(if fwd {
                        crossing
                    } else {
                        reverse_crossing(tri, crossing)
                    });
                    path[y] = Some(p);
                    tree[k] = true;
                    progressed = true;
                }
            }
        }
    }
    let base_tet_path = |disc: usize| -> Vec<(usize, u8)> {
        let t = index.disc(disc).tet;
        dual.tree_path(t)
    };
    let mut words = Vec::new();
    for (k, &(a, b, crossing)) in arcs.iter().enumerate() {
        if tree[k] {
            continue;
        }
        let (Some(pa), Some(pb)) = (&path[a], &path[b]) else { continue };
        let mut crossings = base_tet_path(0);
        crossings.extend(pa.iter().copied());
        crossings.push(crossing);
        crossings.extend(pb.iter().rev().map(|&c| reverse_crossing(tri, c)));
        crossings.extend(
            base_tet_path(0)
                .iter()
                .rev()
                .map(|&c| reverse_crossing(tri, c)),
        );
        let w = dual.word_of_crossings(&crossings);
        if !w.is_empty() {
            words.push(w);
        }
    }
    words
}

/// Words generating the image of the fundamental group of one
/// complementary piece: loops of its region graph.
fn piece_group_words(
    tri: &Triangulation,
    dual: &DualPresentation,
    regions: &RegionComplex,
    chunk: usize,
) -> Vec<Word> {
    // Region graph edges restricted to this chunk.
    let mut edges: Vec<(usize, usize, (usize, u8))> = Vec::new();
    for t in 0..tri.num_tets() {
        for f in 0..4u8 {
            if tri.gluing(t, f).is_none() || !super::surface::is_canonical_side(tri, t, f) {
                continue;
            }
            for (a, b) in regions.face_region_pairs(t, f) {
                if regions.chunk_of_region(a) == chunk {
                    edges.push((a, b, (t, f)));
                }
            }
        }
    }
    let Some(start) = (0..regions.num_regions())
        .find(|&r| regions.chunk_of_region(r) == chunk)
    else {
        return Vec::new();
    };
    let mut path: alloc::collections::BTreeMap<usize, Vec<(usize, u8)>> =
        alloc::collections::BTreeMap::new();
    path.insert(start, Vec::new());
    let mut tree = alloc::vec![false; edges.len()];
    let mut progressed = true;
    while progressed {
        progressed = false;
        for (k, &(a, b, crossing)) in edges.iter().enumerate() {
            for (x, y, fwd) in [(a, b, true), (b, a, false)] {
                if path.contains_key(&x) && !path.contains_key(&y) {
                    let mut p = path[&x].clone();
                    p.push(if fwd {
                        crossing
                    } else {
                        reverse_crossing(tri, crossing)
                    });
                    path.insert(y, p);
                    tree[k] = true;
                    progressed = true;
                }
            }
        }
    }
    let base_path = dual.tree_path(regions.tet_of_region(start));
    let mut words = Vec::new();
    for (k, &(a, b, crossing)) in edges.iter().enumerate() {
        if tree[k] {
            continue;
        }
        let (Some(pa), Some(pb)) = (path.get(&a), path.get(&b)) else { continue };
        let mut crossings = base_path.clone();
        crossings.extend(pa.iter().copied());
        crossings.push(crossing);
        crossings.extend(pb.iter().rev().map(|&c| reverse_crossing(tri, c)));
        crossings.extend(base_path.iter().rev().map(|&c| reverse_crossing(tri, c)));
        let w = dual.word_of_crossings(&crossings);
        if !w.is_empty() {
            words.push(w);
        }
    }
    words
}

fn reverse_crossing(tri: &Triangulation, c: (usize, u8)) -> (usize, u8) {
    let g = tri.gluing(c.0, c.1).expect("internal face");
    (g.tet, g.face)
}
