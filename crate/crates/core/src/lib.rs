//! Exact computational machinery for detecting surfaces in triangulated
//! 3-manifolds through lattice classes over the rational function field.
//!
//! The crate is organized around five layers, each usable on its own:
//!
//! - [`funcfield`]: the field `Q(t)` with the t-adic valuation and its
//!   valuation ring.
//! - [`lattice`]: lattices in `F^n` over the valuation ring, homothety
//!   classes, adjacency, graph distance, and the type function of the
//!   associated affine building.
//! - [`group`]: finite presentations, permutation representations,
//!   Schreier coset machinery, and block-monomial induced representations.
//! - [`manifold`]: oriented face-gluing triangulations, normal surfaces,
//!   finite covers, complement regions, and intersection homomorphisms.
//! - [`detect`]: corner heights, the vertex map into lattice classes,
//!   equivariance and per-tetrahedron classification checks, and dual
//!   surface extraction.
//!
//! Everything is exact: scalars are arbitrary-precision rationals and the
//! only approximations anywhere are the deliberately truncated Laurent
//! prefixes in [`funcfield`].
//!
//! The crate is `no_std` (with `alloc`); file formats, reports and the
//! command-line front end live in the companion `btsurf` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod detect;
pub mod fixtures;
pub mod funcfield;
pub mod group;
pub mod lattice;
pub mod manifold;
