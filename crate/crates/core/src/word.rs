//! Freely reduced words over a finite set of generators and their inverses.

use std::cmp::Ordering;

/// A generator index together with a sign, packed as `2 * gen + inverse`.
///
/// The packing fixes the letter order used everywhere for tie-breaking:
/// `g0 < g0⁻¹ < g1 < g1⁻¹ < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(u8);

impl Letter {
    pub const MAX_GENERATORS: usize = 128;

    pub fn new(generator: usize, inverse: bool) -> Self {
        assert!(
            generator < Self::MAX_GENERATORS,
            "generator index {generator} too large"
        );
        Letter((generator as u8) << 1 | inverse as u8)
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    /// Position in the letter order, `0..2 * generators`.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Letter {
        assert!(index < 2 * Self::MAX_GENERATORS);
        Letter(index as u8)
    }
}

/// A freely reduced word. Every constructor reduces, so no value of this
/// type contains an adjacent `x x⁻¹` pair.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(Vec<Letter>);

/// Free reduction with a stack; idempotent.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Appends one letter, cancelling against the last letter if needed.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        // Squaring keeps the number of reductions logarithmic in |n|.
        let mut acc = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = out.concat(&acc);
            }
            e >>= 1;
            if e > 0 {
                acc = acc.concat(&acc);
            }
        }
        out
    }

    /// Exponent sum of each generator, indexed by generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut sums = vec![0; generators];
        for l in &self.0 {
            sums[l.generator()] += l.sign();
        }
        sums
    }

    /// Shortlex order: shorter words first, then lexicographic in the
    /// letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Applies `rule` letter-wise (inverse letters map to inverted images)
    /// and reduces.
    pub fn substitute(&self, rule: &[Word]) -> Word {
        let mut out = Word::empty();
        for l in &self.0 {
            let image = &rule[l.generator()];
            if l.is_inverse() {
                for &m in image.0.iter().rev() {
                    out.push(m.inverse());
                }
            } else {
                for &m in &image.0 {
                    out.push(m);
                }
            }
        }
        out
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        free_reduce(iter)
    }
}
