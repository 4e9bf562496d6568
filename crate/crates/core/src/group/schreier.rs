//! Schreier coset machinery for the point stabilizer of a transitive
//! permutation representation.
//!
//! Cosets are right cosets of the stabilizer of point 0; words act on
//! points on the right, scanning letters left to right.  The Schreier
//! tree is grown breadth-first over generator order using positive
//! letters only, which fixes the representatives deterministically.

use alloc::vec::Vec;

use super::{GroupError, PermRep, Presentation, Word};

/// Coset representatives and the Schreier generator table of the
/// stabilizer of point 0.
#[derive(Clone, Debug)]
pub struct CosetStructure {
    rep: PermRep,
    /// Representative words; `reps[0]` is empty and `0 * reps[i] = i`.
    reps: Vec<Word>,
    /// Freely reduced Schreier generators in discovery order.
    schreier_gens: Vec<Word>,
    /// For each `(coset, generator)`: `None` marks a tree edge, otherwise
    /// the index of the Schreier generator `rep[c] g rep[c*g]^-1`.
    table: Vec<Option<usize>>,
}

impl CosetStructure {
    /// Builds the Schreier tree; the representation must kill every
    /// relator and act transitively.
    pub fn build(pres: &Presentation, rep: &PermRep) -> Result<Self, GroupError> {
        rep.validate(pres)?;
        let d = rep.degree();
        let ngens = rep.num_generators();
        let mut reps: Vec<Option<Word>> = alloc::vec![None; d];
        reps[0] = Some(Word::empty());
        let mut tree: Vec<bool> = alloc::vec![false; d * ngens];
        let mut queue = alloc::vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for g in 0..ngens {
                let target = rep.generator_perm(g).apply(c);
                if reps[target].is_none() {
                    let mut w = reps[c].clone().expect("visited");
                    w.push(g as i32 + 1);
                    reps[target] = Some(w);
                    tree[c * ngens + g] = true;
                    queue.push(target);
                }
            }
        }
        let reps: Vec<Word> = reps
            .into_iter()
            .map(|r| r.expect("transitive action reaches every coset"))
            .collect();

        let mut schreier_gens = Vec::new();
        let mut table = alloc::vec![None; d * ngens];
        for c in 0..d {
            for g in 0..ngens {
                if tree[c * ngens + g] {
                    continue;
                }
                let target = rep.generator_perm(g).apply(c);
                let mut w = reps[c].clone();
                w.push(g as i32 + 1);
                let gen = w.concat(&reps[target].inverse());
                table[c * ngens + g] = Some(schreier_gens.len());
                schreier_gens.push(gen);
            }
        }
        Ok(CosetStructure {
            rep: rep.clone(),
            reps,
            schreier_gens,
            table,
        })
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn representation(&self) -> &PermRep {
        &self.rep
    }

    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    pub fn representative(&self, coset: usize) -> &Word {
        &self.reps[coset]
    }

    pub fn schreier_generators(&self) -> &[Word] {
        &self.schreier_gens
    }

    /// Rewrites a word stabilizing coset 0 as a word in the Schreier
    /// generators (letters index [`Self::schreier_generators`]).
    pub fn rewrite_subgroup_word(&self, w: &Word) -> Result<Word, GroupError> {
        let ngens = self.rep.num_generators();
        if self.rep.apply_word(w, 0) != 0 {
            return Err(GroupError::NotInStabilizer);
        }
        let mut out = Word::empty();
        let mut coset = 0usize;
        for &l in w.letters() {
            let g = Word::generator_of(l);
            if l > 0 {
                let next = self.rep.generator_perm(g).apply(coset);
                if let Some(idx) = self.table[coset * ngens + g] {
                    out.push(idx as i32 + 1);
                }
                coset = next;
            } else {
                let next = self.rep.generator_perm(g).inverse().apply(coset);
                // g^-1 from `coset` is the reverse of g from `next`.
                if let Some(idx) = self.table[next * ngens + g] {
                    out.push(-(idx as i32 + 1));
                }
                coset = next;
            }
        }
        debug_assert_eq!(coset, 0);
        Ok(out)
    }
}

/// Integer values on the Schreier generators of the stabilizer,
/// representing a homomorphism from the subgroup to the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    values: Vec<i64>,
}

impl PsiMap {
    pub fn new(values: Vec<i64>) -> Self {
        PsiMap { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn num_generators(&self) -> usize {
        self.values.len()
    }

    /// Value on a word already written in Schreier letters.
    pub fn eval_schreier(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|&l| {
                let v = self.values[Word::generator_of(l)];
                if l > 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// Value on a word in the ambient generators; the word must
    /// stabilize coset 0.
    pub fn eval_word(&self, w: &Word, cosets: &CosetStructure) -> Result<i64, GroupError> {
        Ok(self.eval_schreier(&cosets.rewrite_subgroup_word(w)?))
    }

    /// Checks that the map vanishes on every rewritten relator conjugate
    /// `rep[c] r rep[c]^-1` and reports the gcd of the generator values
    /// (1 exactly when the image is all of the integers).
    pub fn validate(
        &self,
        pres: &Presentation,
        cosets: &CosetStructure,
    ) -> Result<u64, GroupError> {
        if self.values.len() != cosets.schreier_generators().len() {
            return Err(GroupError::GeneratorCountMismatch {
                expected: cosets.schreier_generators().len(),
                found: self.values.len(),
            });
        }
        for (ri, r) in pres.relators().iter().enumerate() {
            for c in 0..cosets.degree() {
                let conj = cosets
                    .representative(c)
                    .concat(r)
                    .concat(&cosets.representative(c).inverse());
                let v = self.eval_word(&conj, cosets)?;
                if v != 0 {
                    return Err(GroupError::PsiNotZeroOnRelator {
                        relator: ri,
                        coset: c,
                        value: v,
                    });
                }
            }
        }
        let gcd = self
            .values
            .iter()
            .fold(0u64, |acc, &v| gcd_u64(acc, v.unsigned_abs()));
        Ok(gcd)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Perm;
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    /// Z = <a> with a acting as the swap (0 1).
    fn z_mod_2_cover() -> (Presentation, PermRep) {
        let pres = Presentation::new(vec!["a".to_string()], vec![]).unwrap();
        let rep = PermRep::new(2, vec![Perm::from_images(vec![1, 0]).unwrap()]).unwrap();
        (pres, rep)
    }

    /// <a, b> with a acting as (0 1) and b trivial.
    fn two_gen_cover() -> (Presentation, PermRep) {
        let pres =
            Presentation::new(vec!["a".to_string(), "b".to_string()], vec![]).unwrap();
        let rep = PermRep::new(
            2,
            vec![
                Perm::from_images(vec![1, 0]).unwrap(),
                Perm::identity(2),
            ],
        )
        .unwrap();
        (pres, rep)
    }

    #[test]
    fn trivial_cover_has_empty_representative() {
        let pres = Presentation::free(2);
        let rep = PermRep::trivial(2);
        let c = CosetStructure::build(&pres, &rep).unwrap();
        assert_eq!(c.degree(), 1);
        assert!(c.representative(0).is_empty());
        // Every generator is a Schreier generator of the full group.
        assert_eq!(c.schreier_generators().len(), 2);
    }

    #[test]
    fn index_two_in_z() {
        let (pres, rep) = z_mod_2_cover();
        let c = CosetStructure::build(&pres, &rep).unwrap();
        assert_eq!(c.representatives(), &[Word::empty(), Word::generator(0)]);
        // The stabilizer is generated by a^2.
        assert_eq!(c.schreier_generators(), &[Word::from_letters(&[1, 1])]);
    }

    #[test]
    fn two_generator_schreier_set() {
        let (pres, rep) = two_gen_cover();
        let c = CosetStructure::build(&pres, &rep).unwrap();
        assert_eq!(c.representatives(), &[Word::empty(), Word::generator(0)]);
        // Discovery order: (0, b) = b, then (1, a) = a^2, then
        // (1, b) = a b a^-1.
        assert_eq!(
            c.schreier_generators(),
            &[
                Word::generator(1),
                Word::from_letters(&[1, 1]),
                Word::from_letters(&[1, 2, -1]),
            ]
        );
    }

    #[test]
    fn rewriting_recovers_generators() {
        let (pres, rep) = two_gen_cover();
        let c = CosetStructure::build(&pres, &rep).unwrap();
        // a^2 rewrites to the single Schreier letter for a^2.
        let w = Word::from_letters(&[1, 1]);
        assert_eq!(c.rewrite_subgroup_word(&w).unwrap(), Word::generator(1));
        // a b a^-1 rewrites to its Schreier letter.
        let w = Word::from_letters(&[1, 2, -1]);
        assert_eq!(c.rewrite_subgroup_word(&w).unwrap(), Word::generator(2));
        // b a b a^-1 b^-1 rewrites to a product.
        let w = Word::from_letters(&[2, 1, 2, -1, -2]);
        let rw = c.rewrite_subgroup_word(&w).unwrap();
        assert_eq!(rw, Word::from_letters(&[1, 3, -1]));
    }

    #[test]
    fn non_stabilizing_word_rejected() {
        let (pres, rep) = z_mod_2_cover();
        let c = CosetStructure::build(&pres, &rep).unwrap();
        assert_eq!(
            c.rewrite_subgroup_word(&Word::generator(0)),
            Err(GroupError::NotInStabilizer)
        );
    }

    #[test]
    fn psi_is_additive() {
        let (pres, rep) = z_mod_2_cover();
        let c = CosetStructure::build(&pres, &rep).unwrap();
        let psi = PsiMap::new(vec![1]);
        assert_eq!(psi.eval_word(&Word::empty(), &c).unwrap(), 0);
        let w = Word::from_letters(&[1, 1]);
        assert_eq!(psi.eval_word(&w, &c).unwrap(), 1);
        let ww = w.concat(&w);
        assert_eq!(psi.eval_word(&ww, &c).unwrap(), 2);
        assert_eq!(psi.validate(&pres, &c).unwrap(), 1);
    }

    #[test]
    fn psi_must_kill_relators() {
        // Z^2 = <a, b | [a, b]> with the index-2 cover where both swap.
        let pres = Presentation::new(
            vec!["a".to_string(), "b".to_string()],
            vec![Word::from_letters(&[1, 2, -1, -2])],
        )
        .unwrap();
        let rep = PermRep::new(
            2,
            vec![
                Perm::from_images(vec![1, 0]).unwrap(),
                Perm::from_images(vec![1, 0]).unwrap(),
            ],
        )
        .unwrap();
        let c = CosetStructure::build(&pres, &rep).unwrap();
        // Schreier generators: (0,b): a... discovery: coset0: a tree;
        // coset0 b: target 1 already found -> gen b a^-1; coset1 a: a^2;
        // coset1 b: a b.
        assert_eq!(c.schreier_generators().len(), 3);
        // psi(ab^-1-like gen) assignments: a^2 -> 2, ab -> 2, ba^-1 -> 0
        // satisfies the relator; a corrupted assignment does not.
        let good = PsiMap::new(vec![0, 2, 2]);
        assert!(good.validate(&pres, &c).is_ok());
        let bad = PsiMap::new(vec![1, 2, 2]);
        assert!(matches!(
            bad.validate(&pres, &c),
            Err(GroupError::PsiNotZeroOnRelator { .. })
        ));
    }
}
