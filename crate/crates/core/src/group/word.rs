//! Freely reduced words in a generating set.

use alloc::vec::Vec;
use core::fmt;

/// A word as a sequence of signed, 1-based generator letters: letter
/// `+(g+1)` is generator `g`, letter `-(g+1)` its inverse.  Words are
/// kept freely reduced at all times, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// The single-letter word for generator `g` (0-based).
    pub fn generator(g: usize) -> Self {
        Word {
            letters: alloc::vec![g as i32 + 1],
        }
    }

    /// Builds from raw letters, reducing freely.
    pub fn from_letters(letters: &[i32]) -> Self {
        let mut w = Word::empty();
        for &l in letters {
            w.push(l);
        }
        w
    }

    /// Appends one letter, cancelling against the tail.
    pub fn push(&mut self, letter: i32) {
        assert!(letter != 0, "letters are nonzero");
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// 0-based generator index of a letter.
    pub fn generator_of(letter: i32) -> usize {
        (letter.unsigned_abs() - 1) as usize
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// `self * other`, freely reduced.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    /// Largest generator index mentioned, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&l| Word::generator_of(l)).max()
    }
}

impl fmt::Display for Word {
    /// Letters as `g0 g2^-1 ...` using positional generator names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}", Word::generator_of(l))?;
            if l < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_letters(&[1, 2, -2, -1, 1]);
        assert_eq!(w.letters(), &[1]);
    }

    #[test]
    fn inverse_cancels() {
        let w = Word::from_letters(&[1, -2, 1]);
        assert!(w.concat(&w.inverse()).is_empty());
        assert!(w.inverse().concat(&w).is_empty());
    }
}
