//! Finitely presented groups, permutation representations of covers,
//! Schreier coset machinery, and induced block-monomial representations.
//!
//! Conventions fixed once for the whole crate: cosets are right cosets
//! of the stabilizer of point 0, words act on points on the right with
//! letters scanned left to right, and coset representatives are grown
//! breadth-first over generator order using positive letters.  The
//! exponent data of induced representations then composes exactly like
//! matrix multiplication of the block forms.

mod monomial;
mod perm;
mod presentation;
mod schreier;
mod word;
mod zlaurent;

pub use monomial::{induced_rep, MonomialRep};
pub use perm::Perm;
pub use presentation::{PermRep, Presentation};
pub use schreier::{CosetStructure, PsiMap};
pub use word::Word;
pub use zlaurent::ZLaurent;

use alloc::string::String;

/// Errors raised by the group layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    DuplicateGenerator(String),
    UnknownGenerator(usize),
    DegreeMismatch { expected: usize, found: usize },
    GeneratorCountMismatch { expected: usize, found: usize },
    RelatorNotKilled { relator: usize },
    NotTransitive { orbit: usize, degree: usize },
    NotInStabilizer,
    PsiNotZeroOnRelator { relator: usize, coset: usize, value: i64 },
}

impl core::fmt::Display for GroupError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GroupError::DuplicateGenerator(name) => {
                write!(f, "duplicate generator name '{}'", name)
            }
            GroupError::UnknownGenerator(g) => {
                write!(f, "word mentions generator index {} out of range", g)
            }
            GroupError::DegreeMismatch { expected, found } => {
                write!(f, "permutation degree {} does not match {}", found, expected)
            }
            GroupError::GeneratorCountMismatch { expected, found } => {
                write!(f, "expected {} generator entries, found {}", expected, found)
            }
            GroupError::RelatorNotKilled { relator } => {
                write!(f, "relator {} does not act trivially", relator)
            }
            GroupError::NotTransitive { orbit, degree } => {
                write!(f, "action not transitive: orbit {} of {}", orbit, degree)
            }
            GroupError::NotInStabilizer => {
                write!(f, "word does not stabilize coset 0")
            }
            GroupError::PsiNotZeroOnRelator {
                relator,
                coset,
                value,
            } => write!(
                f,
                "psi takes value {} on relator {} conjugated to coset {}",
                value, relator, coset
            ),
        }
    }
}
