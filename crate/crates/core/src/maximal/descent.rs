//! Descent along the tree by squaring: from `g` with odd `b`-exponent,
//! `g²` fixes level 1 and its sections are no longer than `g` and lie in a
//! predictable coset of `B'`. Breadth-first search over these moves reaches
//! `ab` (resp. `b⁻¹a`).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::basilica::{self, ab_image};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::maximal::congruence::CosetClass;
use crate::vertex::Vertex;
use crate::word::Word;

pub const DEFAULT_MAX_STATES: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Target {
    Ab,
    BInvA,
}

impl Target {
    pub fn element(self) -> Element {
        match self {
            Target::Ab => basilica::a().mul(&basilica::b()),
            Target::BInvA => basilica::b().inverse().mul(&basilica::a()),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Ab => "ab",
            Target::BInvA => "Ba",
        })
    }
}

/// `g^{2^k}` fixes `vertex` and has section `target` there.
#[derive(Clone, Debug)]
pub struct DescentCertificate {
    pub input: Element,
    pub steps: Vec<u8>,
    pub exponent_log: usize,
    pub target: Target,
    /// `trail[i]` is the section at the first `i` steps of `g^{2^i}`.
    pub trail: Vec<Element>,
    /// Number of distinct states the search touched.
    pub visited: usize,
}

impl DescentCertificate {
    pub fn vertex(&self) -> Vertex {
        Vertex::from_letters(self.steps.clone())
    }

    pub fn witness(&self) -> Element {
        self.input.pow(1i64 << self.exponent_log)
    }

    /// Recomputes the power and checks the claim with the decision
    /// procedure.
    pub fn replay(&self) -> bool {
        let v = self.vertex();
        let w = self.witness();
        w.fixes(&v)
            && w.section_at(&v)
                .is_ok_and(|s| s.equals(&self.target.element()))
    }
}

fn search(g: &Element, target: Target, max_states: usize) -> Result<DescentCertificate> {
    let goal = target.element();
    let sys = g.system();
    // states[i] = (word, parent, child letter)
    let mut states: Vec<(Word, usize, u8)> = vec![(g.word().clone(), usize::MAX, 0)];
    let mut seen: HashMap<Word, usize> = HashMap::from([(g.word().clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let h = Element::new(sys, states[i].0.clone());
        if h.equals(&goal) {
            return Ok(certificate(g, target, &states, i, seen.len()));
        }
        let square = h.pow(2);
        debug_assert!(square.root_perm().is_identity());
        for x in 0..2u8 {
            let child = square.section(x as usize)?.into_word();
            if seen.contains_key(&child) {
                continue;
            }
            if seen.len() >= max_states {
                return Err(Error::Budget(format!(
                    "descent from {g} towards {target} visited {max_states} states without success"
                )));
            }
            seen.insert(child.clone(), states.len());
            queue.push_back(states.len());
            states.push((child, i, x));
        }
    }
    Err(Error::Internal(format!(
        "descent from {g} towards {target} exhausted {} states without reaching it",
        seen.len()
    )))
}

fn certificate(
    g: &Element,
    target: Target,
    states: &[(Word, usize, u8)],
    end: usize,
    visited: usize,
) -> DescentCertificate {
    let mut path = vec![end];
    while let Some(&i) = path.last() {
        if states[i].1 == usize::MAX {
            break;
        }
        path.push(states[i].1);
    }
    path.reverse();
    let steps: Vec<u8> = path[1..].iter().map(|&i| states[i].2).collect();
    DescentCertificate {
        input: g.clone(),
        exponent_log: steps.len(),
        steps,
        target,
        trail: path
            .iter()
            .map(|&i| Element::new(g.system(), states[i].0.clone()))
            .collect(),
        visited,
    }
}

fn require_class(g: &Element, allowed: &[CosetClass]) -> Result<()> {
    let image = ab_image(g)?;
    if allowed.iter().any(|c| c.image() == image) {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "{g} has abelianization {image}, expected {}",
            allowed
                .iter()
                .map(|c| c.image().to_string())
                .collect::<Vec<_>>()
                .join(" or ")
        )))
    }
}

/// Finds `k` and a vertex `u` of depth `k` with `(g^{2^k})_u = ab`.
pub fn find_ab(g: &Element) -> Result<DescentCertificate> {
    find_ab_with_budget(g, DEFAULT_MAX_STATES)
}

pub fn find_ab_with_budget(g: &Element, max_states: usize) -> Result<DescentCertificate> {
    require_class(g, &[CosetClass::Ab])?;
    search(g, Target::Ab, max_states)
}

/// Finds `k` and a vertex `u` of depth `k` with `(g^{2^k})_u = b⁻¹a`, for
/// `g` in either coset `ab⁻¹B'` or `a⁻¹bB'` (squaring alternates between
/// them). Only positive powers are used: from `ab⁻¹` two squarings lead
/// through `a⁻¹b`.
pub fn find_b_inv_a(g: &Element) -> Result<DescentCertificate> {
    find_b_inv_a_with_budget(g, DEFAULT_MAX_STATES)
}

pub fn find_b_inv_a_with_budget(g: &Element, max_states: usize) -> Result<DescentCertificate> {
    require_class(g, &[CosetClass::ABInv, CosetClass::AInvB])?;
    search(g, Target::BInvA, max_states)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum AbForm {
    Ab,
    Ba,
}

impl AbForm {
    pub fn element(self) -> Element {
        let (a, b) = (basilica::a(), basilica::b());
        match self {
            AbForm::Ab => a.mul(&b),
            AbForm::Ba => b.mul(&a),
        }
    }

    /// Section of the square at child `x`: `(ab)² = (ba, ba)`,
    /// `(ba)² = (ba, ab)`.
    pub fn step(self, x: u8) -> AbForm {
        match (self, x) {
            (AbForm::Ba, 1) => AbForm::Ab,
            _ => AbForm::Ba,
        }
    }
}

impl fmt::Display for AbForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AbForm::Ab => "ab",
            AbForm::Ba => "ba",
        })
    }
}

/// `start^{2^k}` with `k = |v|` fixes `v` and has the returned form as its
/// section there.
pub fn persist_ab(start: AbForm, v: &Vertex) -> Result<(usize, AbForm)> {
    let mut form = start;
    for &x in v.letters() {
        if x > 1 {
            return Err(Error::input(format!("vertex {v} is not binary")));
        }
        form = form.step(x);
    }
    Ok((v.depth(), form))
}
