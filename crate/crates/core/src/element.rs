//! Group elements: reduced words bound to a generator system.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::rc::Rc;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::portrait::Portrait;
use crate::system::GeneratorSystem;
use crate::vertex::Vertex;
use crate::word::{Letter, Word};

#[derive(Clone)]
pub struct Element {
    system: Arc<GeneratorSystem>,
    word: Word,
}

impl Element {
    pub fn new(system: &Arc<GeneratorSystem>, word: Word) -> Self {
        Element {
            system: Arc::clone(system),
            word,
        }
    }

    pub fn parse(system: &Arc<GeneratorSystem>, s: &str) -> Result<Self> {
        Ok(Self::new(system, system.parse_word(s)?))
    }

    pub fn identity(system: &Arc<GeneratorSystem>) -> Self {
        Self::new(system, Word::empty())
    }

    pub fn generator(system: &Arc<GeneratorSystem>, index: usize) -> Self {
        Self::new(system, Word::letter(Letter::new(index, false)))
    }

    pub fn system(&self) -> &Arc<GeneratorSystem> {
        &self.system
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    fn with_word(&self, word: Word) -> Element {
        Element {
            system: Arc::clone(&self.system),
            word,
        }
    }

    fn check_same_system(&self, other: &Element) -> Result<()> {
        if self.system.same_as(&other.system) {
            Ok(())
        } else {
            Err(Error::input(
                "elements belong to different generator systems",
            ))
        }
    }

    /// Concatenate and reduce. Panics on mixed systems; see [`try_mul`](Self::try_mul).
    pub fn mul(&self, other: &Element) -> Element {
        self.try_mul(other)
            .expect("multiplying elements of different systems")
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_same_system(other)?;
        Ok(self.with_word(self.word.concat(&other.word)))
    }

    pub fn inverse(&self) -> Element {
        self.with_word(self.word.inverse())
    }

    pub fn pow(&self, n: i64) -> Element {
        self.with_word(self.word.pow(n))
    }

    /// `self⁻¹ other⁻¹ self other`
    pub fn commutator(&self, other: &Element) -> Element {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    pub fn conjugate_by(&self, by: &Element) -> Element {
        by.inverse().mul(self).mul(by)
    }

    pub fn root_perm(&self) -> Permutation {
        self.system.root_perm_of(&self.word)
    }

    pub fn section(&self, x: usize) -> Result<Element> {
        if x >= self.system.alphabet() {
            return Err(Error::input(format!(
                "letter {x} out of range for alphabet of size {}",
                self.system.alphabet()
            )));
        }
        Ok(self.with_word(self.system.section_of(&self.word, x)))
    }

    /// All first-level sections, in letter order.
    pub fn sections(&self) -> Vec<Element> {
        (0..self.system.alphabet())
            .map(|x| self.with_word(self.system.section_of(&self.word, x)))
            .collect()
    }

    pub fn section_at(&self, v: &Vertex) -> Result<Element> {
        let mut w = self.word.clone();
        for &x in v.letters() {
            if x as usize >= self.system.alphabet() {
                return Err(Error::input(format!("vertex {v} is not over the alphabet")));
            }
            w = self.system.section_of(&w, x as usize);
        }
        Ok(self.with_word(w))
    }

    pub fn act(&self, v: &Vertex) -> Vertex {
        let mut letters = v.letters().to_vec();
        assert!(
            letters
                .iter()
                .all(|&x| (x as usize) < self.system.alphabet()),
            "vertex {v} is not over the alphabet"
        );
        self.system.act_in_place(self.word.letters(), &mut letters);
        Vertex::from_letters(letters)
    }

    pub fn fixes(&self, v: &Vertex) -> bool {
        &self.act(v) == v
    }

    pub fn is_trivial(&self) -> bool {
        self.system.is_trivial_word(&self.word)
    }

    /// Group equality, decided as triviality of `self · other⁻¹`.
    pub fn equals(&self, other: &Element) -> bool {
        self.try_equals(other)
            .expect("comparing elements of different systems")
    }

    pub fn try_equals(&self, other: &Element) -> Result<bool> {
        self.check_same_system(other)?;
        if self.word == other.word {
            return Ok(true);
        }
        Ok(self
            .system
            .is_trivial_word(&self.word.concat(&other.word.inverse())))
    }

    /// Permutation of the `d^n` level-`n` vertices, indexed in lexicographic
    /// order.
    pub fn level_perm(&self, n: usize) -> Permutation {
        let mut memo = HashMap::new();
        let images = level_images(&self.system, &self.word, n, &mut memo);
        Permutation::from_images_unchecked(images.as_ref().clone())
    }

    /// Letter-wise substitution `generator i ↦ rule[i]`, then reduction.
    pub fn substitute(&self, rule: &[Word]) -> Result<Element> {
        if rule.len() != self.system.generator_count() {
            return Err(Error::input(format!(
                "substitution defines {} images for {} generators",
                rule.len(),
                self.system.generator_count()
            )));
        }
        Ok(self.with_word(self.word.substitute(rule)))
    }

    pub fn portrait(&self, depth: usize) -> Portrait {
        Portrait::of(self, depth)
    }

    pub fn exponent_sums(&self) -> Vec<i64> {
        self.word.exponent_sums(self.system.generator_count())
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty_word(&self) -> bool {
        self.word.is_empty()
    }
}

/// Level images from the recursion: `g(x w) = σ_g(x) g_x(w)`, memoized on
/// `(section word, remaining depth)` since deep sections repeat heavily.
fn level_images(
    sys: &GeneratorSystem,
    w: &Word,
    n: usize,
    memo: &mut HashMap<(Word, usize), Rc<Vec<u32>>>,
) -> Rc<Vec<u32>> {
    if n == 0 {
        return Rc::new(vec![0]);
    }
    if w.is_empty() {
        let size = sys.alphabet().pow(n as u32);
        return Rc::new((0..size as u32).collect());
    }
    if let Some(hit) = memo.get(&(w.clone(), n)) {
        return Rc::clone(hit);
    }
    let d = sys.alphabet();
    let block = d.pow(n as u32 - 1);
    let root = sys.root_perm_of(w);
    let mut images = vec![0u32; d * block];
    for x in 0..d {
        let child = level_images(sys, &sys.section_of(w, x), n - 1, memo);
        let target = (root.apply(x) * block) as u32;
        for (i, &c) in child.iter().enumerate() {
            images[x * block + i] = target + c;
        }
    }
    let images = Rc::new(images);
    memo.insert((w.clone(), n), Rc::clone(&images));
    images
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        Element::mul(self, rhs)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.system.format_word(&self.word))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basilica;

    fn el(s: &str) -> Element {
        basilica::parse(s).unwrap()
    }

    fn v(s: &str) -> Vertex {
        Vertex::parse(s, 2).unwrap()
    }

    fn sigma() -> Permutation {
        Permutation::transposition(2, 0, 1)
    }

    #[test]
    fn free_reduction_examples() {
        assert!(el("aA").is_empty_word());
        assert!(el("abBA").is_empty_word());
        assert_eq!(el("ab").to_string(), "ab");
        assert!(Element::parse(&basilica::system(), "ax").is_err());
    }

    #[test]
    fn root_perm_examples() {
        assert!(el("a").root_perm().is_identity());
        assert_eq!(el("b").root_perm(), sigma());
        assert_eq!(el("ab").root_perm(), sigma());
    }

    #[test]
    fn section_examples() {
        assert!(el("a").section(1).unwrap().equals(&el("b")));
        assert!(el("b").section(0).unwrap().equals(&el("a")));
        let comm = el("a").commutator(&el("b"));
        assert!(comm.section(0).unwrap().equals(&el("Aba")));
        assert!(comm.section(1).unwrap().equals(&el("B")));
        assert!(el("a").section(2).is_err());
    }

    #[test]
    fn section_at_vertex_examples() {
        let g = el("abAB");
        assert_eq!(g.section_at(&Vertex::root()).unwrap().word(), g.word());
        assert!(el("aa").section_at(&v("11")).unwrap().equals(&el("a")));
        assert!(el("B").section_at(&v("1")).unwrap().equals(&el("A")));
        // section_at(uw) = section_at(section_at(u), w)
        let g = el("abbAbaB");
        for u in ["", "0", "1", "01"] {
            for w in ["0", "11", "10"] {
                let lhs = g.section_at(&v(u).concat(&v(w))).unwrap();
                let rhs = g.section_at(&v(u)).unwrap().section_at(&v(w)).unwrap();
                assert!(lhs.equals(&rhs));
            }
        }
    }

    #[test]
    fn act_examples() {
        assert_eq!(el("b").act(&v("0")), v("1"));
        assert_eq!(el("a").act(&v("0")), v("0"));
        assert_eq!(el("ab").act(&v("00")), v("11"));
    }

    #[test]
    fn triviality_examples() {
        let tau1 = el("Bab").commutator(&el("a"));
        assert!(tau1.is_trivial());
        assert!(!el("a").is_trivial());
        let ba = el("b").commutator(&el("a"));
        assert!(ba.commutator(&el("a")).is_trivial());
    }

    #[test]
    fn equality_examples() {
        assert!(el("ab").equals(&el("ab")));
        assert!(!el("ab").equals(&el("ba")));
        let other = Element::parse(
            &crate::system::GeneratorSystem::parse_definition(
                "alphabet 2\ngen a perm=1,0 sections=e,e",
            )
            .unwrap(),
            "a",
        )
        .unwrap();
        assert!(el("a").try_equals(&other).is_err());
    }

    #[test]
    fn level_perm_examples() {
        assert!(el("a").level_perm(1).is_identity());
        assert_eq!(el("b").level_perm(1), sigma());
        // 00 -> 11 -> 01 -> 10 -> 00, indices 0 -> 3 -> 1 -> 2 -> 0
        let expected = Permutation::from_images(vec![3, 2, 0, 1]).unwrap();
        assert_eq!(el("ab").level_perm(2), expected);
        assert_eq!(el("ab").level_perm(0).degree(), 1);
    }

    #[test]
    fn level_perm_agrees_with_act() {
        let g = el("abAbbaBA");
        let p = g.level_perm(5);
        for u in Vertex::level(5, 2) {
            assert_eq!(p.apply(u.index(2)), g.act(&u).index(2));
        }
    }

    #[test]
    fn substitution_examples() {
        let lambda = basilica::lambda();
        assert!(el("b").substitute(&lambda).unwrap().equals(&el("a")));
        assert_eq!(el("a").substitute(&lambda).unwrap().to_string(), "bb");
        assert_eq!(el("aB").substitute(&lambda).unwrap().to_string(), "bbA");
        assert!(el("a").substitute(&lambda[..1]).is_err());
    }

    #[test]
    fn multiply_inverse_examples() {
        assert!(el("a").mul(&el("A")).is_empty_word());
        assert_eq!(el("ab").inverse().to_string(), "BA");
        assert_eq!(el("ab").mul(&el("Ba")).to_string(), "aa");
        assert_eq!((&el("a") * &el("b")).to_string(), "ab");
    }
}
