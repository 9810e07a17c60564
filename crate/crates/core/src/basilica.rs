//! The Basilica group `⟨a, b⟩` with `a = (1, b)` and `b = σ(a, 1)`:
//! commutators `α_{s,t} = [a^s, b^t]`, the quotient maps to `Z²`, to the
//! Heisenberg group and to `B'/B''`, the relators `λ^k(τ_m)`, and rigid
//! stabilizer lifts over `B'`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::heisenberg::HeisenbergElement;
use crate::system::GeneratorSystem;
use crate::vertex::Vertex;
use crate::word::{Letter, Word};

pub const A: usize = 0;
pub const B: usize = 1;

/// Shared handle, so every caller hits the same triviality cache.
pub fn system() -> Arc<GeneratorSystem> {
    static SYSTEM: OnceLock<Arc<GeneratorSystem>> = OnceLock::new();
    Arc::clone(SYSTEM.get_or_init(GeneratorSystem::basilica))
}

pub fn is_basilica(sys: &GeneratorSystem) -> bool {
    sys.same_as(&system())
}

pub fn parse(s: &str) -> Result<Element> {
    Element::parse(&system(), s)
}

pub fn a() -> Element {
    Element::generator(&system(), A)
}

pub fn b() -> Element {
    Element::generator(&system(), B)
}

fn require(g: &Element) -> Result<()> {
    if is_basilica(g.system()) {
        Ok(())
    } else {
        Err(Error::precondition(
            "operation is defined for the Basilica system only",
        ))
    }
}

/// `α_{s,t} = [a^s, b^t] = a^{-s} b^{-t} a^s b^t`.
pub fn alpha(s: i64, t: i64) -> Element {
    a().pow(s).commutator(&b().pow(t))
}

/// Image in `B/B' ≅ Z²`: the exponent sums of `a` and `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct AbImage {
    pub s: i64,
    pub t: i64,
}

impl AbImage {
    pub const fn new(s: i64, t: i64) -> Self {
        AbImage { s, t }
    }

    pub fn is_zero(&self) -> bool {
        self.s == 0 && self.t == 0
    }
}

impl Add for AbImage {
    type Output = AbImage;
    fn add(self, o: AbImage) -> AbImage {
        AbImage::new(self.s + o.s, self.t + o.t)
    }
}

impl Sub for AbImage {
    type Output = AbImage;
    fn sub(self, o: AbImage) -> AbImage {
        AbImage::new(self.s - o.s, self.t - o.t)
    }
}

impl Neg for AbImage {
    type Output = AbImage;
    fn neg(self) -> AbImage {
        AbImage::new(-self.s, -self.t)
    }
}

impl fmt::Display for AbImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

pub fn ab_image(g: &Element) -> Result<AbImage> {
    require(g)?;
    let sums = g.exponent_sums();
    Ok(AbImage::new(sums[A], sums[B]))
}

pub fn in_derived(g: &Element) -> Result<bool> {
    Ok(ab_image(g)?.is_zero())
}

pub fn congruent_mod_derived(g: &Element, h: &Element) -> Result<bool> {
    Ok(ab_image(g)? == ab_image(h)?)
}

/// Image in `B/γ₃(B) ≅ H₃(Z)` with `a ↦ (1,0,0)`, `b ↦ (0,1,0)`.
pub fn heis_image(g: &Element) -> Result<HeisenbergElement> {
    require(g)?;
    Ok(heis_of_word(g.word()))
}

fn heis_of_word(w: &Word) -> HeisenbergElement {
    w.letters()
        .iter()
        .fold(HeisenbergElement::IDENTITY, |acc, l| {
            let base = if l.generator() == A {
                HeisenbergElement::A
            } else {
                HeisenbergElement::B
            };
            acc * if l.is_inverse() { base.inverse() } else { base }
        })
}

/// Coordinates of an element of `B'` in `B'/B'' ≅ Z³` with respect to the
/// basis `α_{1,1}, α_{1,-1}, α_{1,2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct BPrimeCoords {
    pub l: i64,
    pub m: i64,
    pub n: i64,
}

impl BPrimeCoords {
    pub const fn new(l: i64, m: i64, n: i64) -> Self {
        BPrimeCoords { l, m, n }
    }
}

impl fmt::Display for BPrimeCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.m, self.n)
    }
}

/// Reads off `(l, m, n)` from the Heisenberg images of the two first-level
/// sections, which equal `(b^{l+m} c^{-l}, b^{-l-m} c^{-n})`.
pub fn bprime_coords(g: &Element) -> Result<BPrimeCoords> {
    if !in_derived(g)? {
        return Err(Error::precondition(format!(
            "{g} is not in the derived subgroup"
        )));
    }
    let secs = g.sections();
    let h0 = heis_image(&secs[0])?;
    let h1 = heis_image(&secs[1])?;
    if h0.p != 0 || h1.p != 0 || h1.q != -h0.q {
        return Err(Error::Internal(format!(
            "section images {h0} and {h1} of {g} are not of the form (b^k c^x, b^-k c^y)"
        )));
    }
    Ok(BPrimeCoords::new(-h0.r, h0.q + h0.r, -h1.r))
}

/// The substitution `λ: a ↦ b², b ↦ a`.
pub fn lambda() -> Vec<Word> {
    let b = Letter::new(B, false);
    vec![Word::from_iter([b, b]), Word::letter(Letter::new(A, false))]
}

/// `τ_m = [b^{-m} a b^m, a]` for odd `m ≥ 1`.
pub fn tau(m: i64) -> Result<Element> {
    if m < 1 || m % 2 == 0 {
        return Err(Error::precondition(format!(
            "tau needs an odd positive index, got {m}"
        )));
    }
    Ok(a().conjugate_by(&b().pow(m)).commutator(&a()))
}

/// `λ^k(τ_m)`.
pub fn relator(m: i64, k: usize) -> Result<Element> {
    let rule = lambda();
    let mut g = tau(m)?;
    for _ in 0..k {
        g = g.substitute(&rule)?;
    }
    Ok(g)
}

/// Returns `r` fixing level `|v|` pointwise with section `w` at `v` and
/// trivial sections at every other vertex of that level.
///
/// One step down: `λ(w) = (a^{e_a(w)}, w)` and conjugating by `b` swaps the
/// coordinates, `b λ(w) b⁻¹ = (w, ·)`; both stay in `B'`, so the step can be
/// repeated along `v` from the bottom up.
pub fn lift_section(w: &Element, v: &Vertex) -> Result<Element> {
    if !in_derived(w)? {
        return Err(Error::precondition(format!(
            "{w} is not in the derived subgroup"
        )));
    }
    let rule = lambda();
    let mut r = w.clone();
    for &x in v.letters().iter().rev() {
        let lifted = r.substitute(&rule)?;
        r = match x {
            1 => lifted,
            0 => lifted.conjugate_by(&b().inverse()),
            _ => return Err(Error::input(format!("vertex {v} is not binary"))),
        };
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        parse(s).unwrap()
    }

    fn psi_is(g: &Element, left: &Element, right: &Element) -> bool {
        let secs = g.sections();
        g.root_perm().is_identity() && secs[0].equals(left) && secs[1].equals(right)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1, 1).to_string(), "ABab");
        assert!(alpha(0, 5).is_empty_word());
        assert!(psi_is(&alpha(1, 2), &el(""), &alpha(1, 1).inverse()));
    }

    #[test]
    fn ab_image_examples() {
        assert_eq!(ab_image(&el("ab")).unwrap(), AbImage::new(1, 1));
        assert_eq!(ab_image(&alpha(3, -2)).unwrap(), AbImage::new(0, 0));
        assert_eq!(ab_image(&el("Ba")).unwrap(), AbImage::new(1, -1));
        let other =
            GeneratorSystem::parse_definition("alphabet 2\ngen a perm=1,0 sections=e,a").unwrap();
        assert!(matches!(
            ab_image(&Element::generator(&other, 0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn congruence_examples() {
        assert!(congruent_mod_derived(&el("ba"), &el("ab")).unwrap());
        assert!(congruent_mod_derived(&el("ab").mul(&alpha(2, 3)), &el("ab")).unwrap());
        assert!(!congruent_mod_derived(&el("ab"), &el("aB")).unwrap());
    }

    #[test]
    fn heis_examples() {
        let c = a().commutator(&b());
        assert_eq!(heis_image(&c).unwrap(), HeisenbergElement::C);
        assert!(heis_image(&c.commutator(&a())).unwrap().is_identity());
        assert!(heis_image(&c.commutator(&b())).unwrap().is_identity());
        assert_eq!(
            heis_image(&el("Aba")).unwrap(),
            HeisenbergElement::new(0, 1, -1)
        );
    }

    #[test]
    fn bprime_examples() {
        assert_eq!(
            bprime_coords(&alpha(1, 1)).unwrap(),
            BPrimeCoords::new(1, 0, 0)
        );
        assert_eq!(
            bprime_coords(&alpha(1, -1)).unwrap(),
            BPrimeCoords::new(0, 1, 0)
        );
        assert_eq!(
            bprime_coords(&alpha(1, 2)).unwrap(),
            BPrimeCoords::new(0, 0, 1)
        );
        assert_eq!(
            bprime_coords(&alpha(2, 1)).unwrap(),
            BPrimeCoords::new(2, 0, 0)
        );
        assert!(matches!(
            bprime_coords(&el("a")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lift_examples() {
        let c = a().commutator(&b());
        assert_eq!(lift_section(&c, &Vertex::root()).unwrap().word(), c.word());

        let one = lift_section(&c, &Vertex::parse("1", 2).unwrap()).unwrap();
        assert!(one.equals(&b().pow(2).commutator(&a())));
        assert!(psi_is(&one, &el(""), &c));

        let zero = lift_section(&c, &Vertex::parse("0", 2).unwrap()).unwrap();
        assert!(zero.equals(&b().pow(2).commutator(&a()).conjugate_by(&b().inverse())));
        assert!(psi_is(&zero, &c, &el("")));

        assert!(lift_section(&el("ab"), &Vertex::root()).is_err());
    }

    #[test]
    fn tau_examples() {
        assert!(tau(1).unwrap().equals(&el("Bab").commutator(&a())));
        assert!(tau(1).unwrap().is_trivial());
        assert!(tau(3).unwrap().is_trivial());
        assert!(relator(1, 2).unwrap().is_trivial());
        assert!(tau(2).is_err());
        assert!(tau(-1).is_err());
    }
}
