//! Finite presentations and permutation representations.

use alloc::string::String;
use alloc::vec::Vec;

use super::{GroupError, Perm, Word};

/// A finite presentation: named generators and freely reduced relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    gens: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gens: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].contains(g) {
                return Err(GroupError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= gens.len() {
                    return Err(GroupError::UnknownGenerator(g));
                }
            }
        }
        Ok(Presentation { gens, relators })
    }

    /// Free group on `n` anonymous generators.
    pub fn free(n: usize) -> Self {
        Presentation {
            gens: (0..n).map(|i| alloc::format!("x{}", i)).collect(),
            relators: Vec::new(),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gens
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Renders a word with this presentation's generator names.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::from("1");
        }
        let mut out = String::new();
        for (i, &l) in w.letters().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&self.gens[Word::generator_of(l)]);
            if l < 0 {
                out.push_str("^-1");
            }
        }
        out
    }
}

/// One permutation per generator; encodes both a transitive action on
/// cosets and the gluing data of a finite cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermRep {
    degree: usize,
    perms: Vec<Perm>,
}

impl PermRep {
    pub fn new(degree: usize, perms: Vec<Perm>) -> Result<Self, GroupError> {
        for p in &perms {
            if p.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: p.degree(),
                });
            }
        }
        Ok(PermRep { degree, perms })
    }

    /// The trivial representation on one point.
    pub fn trivial(num_gens: usize) -> Self {
        PermRep {
            degree: 1,
            perms: alloc::vec![Perm::identity(1); num_gens],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_generators(&self) -> usize {
        self.perms.len()
    }

    pub fn generator_perm(&self, g: usize) -> &Perm {
        &self.perms[g]
    }

    /// Image of a point under a word, scanning letters left to right
    /// (right action on right cosets).
    pub fn apply_word(&self, w: &Word, mut point: usize) -> usize {
        for &l in w.letters() {
            let g = Word::generator_of(l);
            point = if l > 0 {
                self.perms[g].apply(point)
            } else {
                self.perms[g].inverse().apply(point)
            };
        }
        point
    }

    /// The permutation of a word under the right action.
    pub fn perm_of_word(&self, w: &Word) -> Perm {
        let mut p = Perm::identity(self.degree);
        for &l in w.letters() {
            let g = Word::generator_of(l);
            let step = if l > 0 {
                self.perms[g].clone()
            } else {
                self.perms[g].inverse()
            };
            // Right action: later letters act after earlier ones.
            p = step.compose(&p);
        }
        p
    }

    /// Checks the representation against a presentation: every relator
    /// must act trivially and the action must be transitive.
    pub fn validate(&self, pres: &Presentation) -> Result<(), GroupError> {
        if self.perms.len() != pres.num_generators() {
            return Err(GroupError::GeneratorCountMismatch {
                expected: pres.num_generators(),
                found: self.perms.len(),
            });
        }
        for (i, r) in pres.relators().iter().enumerate() {
            if !self.perm_of_word(r).is_identity() {
                return Err(GroupError::RelatorNotKilled { relator: i });
            }
        }
        let orbit = self.orbit_of(0);
        if orbit.len() != self.degree {
            return Err(GroupError::NotTransitive {
                orbit: orbit.len(),
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Orbit of a point under the generator permutations.
    pub fn orbit_of(&self, start: usize) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.degree];
        let mut queue = alloc::vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for p in &self.perms {
                for y in [p.apply(x), p.inverse().apply(x)] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
        }
        queue
    }

    /// Number of orbits of the subgroup generated by the images of the
    /// given words.
    pub fn orbit_count_of_subgroup(&self, words: &[Word]) -> usize {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for w in words {
            let p = self.perm_of_word(w);
            for x in 0..self.degree {
                let (a, b) = (find(&mut parent, x), find(&mut parent, p.apply(x)));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        (0..self.degree)
            .filter(|&x| find(&mut parent, x) == x)
            .count()
    }
}
