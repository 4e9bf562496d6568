//! Permutations of `{0, ..., d-1}`.

use alloc::vec::Vec;
use core::fmt;

/// A permutation stored by its images: `apply(x) = images[x]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = alloc::vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut images = alloc::vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// Function composition: `(self.compose(other)).apply(x) =
    /// self.apply(other.apply(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: (0..self.degree())
                .map(|x| self.apply(other.apply(x)))
                .collect(),
        }
    }

    /// Indices fixed by the permutation.
    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}
