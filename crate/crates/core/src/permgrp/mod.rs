//! Finitely generated subgroups acting on tree levels: orbits with Schreier
//! transversals, stabilizer generators, projections to vertices, and orders
//! of level quotients.

mod chain;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

pub use chain::{group_order, StabilizerChain};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::norm::FINGERPRINT_DEPTH;
use crate::perm::Permutation;
use crate::system::GeneratorSystem;
use crate::vertex::Vertex;
use crate::word::{Letter, Word};

pub const DEFAULT_SCHREIER_CAP: usize = 64;

/// `⟨generators⟩`; the empty list is the trivial subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    system: Arc<GeneratorSystem>,
    generators: Vec<Element>,
}

impl SubgroupHandle {
    pub fn new(system: &Arc<GeneratorSystem>, generators: Vec<Element>) -> Result<Self> {
        if generators.len() > Letter::MAX_GENERATORS {
            return Err(Error::input(format!(
                "at most {} subgroup generators are supported",
                Letter::MAX_GENERATORS
            )));
        }
        if let Some(g) = generators.iter().find(|g| !g.system().same_as(system)) {
            return Err(Error::input(format!("{g} belongs to another system")));
        }
        Ok(SubgroupHandle {
            system: Arc::clone(system),
            generators,
        })
    }

    /// Comma-separated words, e.g. `ab,bb`. The empty string gives the
    /// trivial subgroup.
    pub fn parse(system: &Arc<GeneratorSystem>, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(system, Vec::new());
        }
        let gens = s
            .split(',')
            .map(|w| Element::parse(system, w.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(system, gens)
    }

    /// The subgroup generated by all generators of the system.
    pub fn full(system: &Arc<GeneratorSystem>) -> Self {
        let gens = (0..system.generator_count())
            .map(|i| Element::generator(system, i))
            .collect();
        SubgroupHandle {
            system: Arc::clone(system),
            generators: gens,
        }
    }

    pub fn system(&self) -> &Arc<GeneratorSystem> {
        &self.system
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn rule(&self) -> Vec<Word> {
        self.generators.iter().map(|g| g.word().clone()).collect()
    }

    /// The element spelled by a word over the subgroup generators.
    pub fn evaluate(&self, w: &Word) -> Result<Element> {
        if let Some(l) = w.letters().iter().find(|l| l.generator() >= self.len()) {
            return Err(Error::input(format!(
                "generator x{} is not among the {} subgroup generators",
                l.generator(),
                self.len()
            )));
        }
        Ok(Element::new(&self.system, w.substitute(&self.rule())))
    }

    pub fn evaluate_expr(&self, e: &Expr) -> Result<Element> {
        self.evaluate(&e.evaluate())
    }

    pub fn level_perms(&self, n: usize) -> Vec<Permutation> {
        self.generators.iter().map(|g| g.level_perm(n)).collect()
    }

    /// Order of the image of the subgroup in the action on level `n`.
    pub fn level_order(&self, n: usize) -> BigUint {
        let perms = self.level_perms(n);
        if perms.is_empty() {
            return BigUint::from(1u8);
        }
        group_order(&perms)
    }
}

impl fmt::Display for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The orbit of a vertex with transversal words over the subgroup
/// generators, in breadth-first order.
#[derive(Clone, Debug)]
pub struct SchreierTable {
    base: Vertex,
    orbit: Vec<Vertex>,
    transversal: Vec<Word>,
    index: HashMap<Vertex, usize>,
}

impl SchreierTable {
    pub fn base(&self) -> &Vertex {
        &self.base
    }

    pub fn orbit(&self) -> &[Vertex] {
        &self.orbit
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn contains(&self, u: &Vertex) -> bool {
        self.index.contains_key(u)
    }

    /// A word `t` over the subgroup generators with `t·base = u`.
    pub fn transversal(&self, u: &Vertex) -> Option<&Word> {
        self.index.get(u).map(|&i| &self.transversal[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vertex, &Word)> {
        self.orbit.iter().zip(&self.transversal)
    }

    /// One `vertex<TAB>word` line per orbit point.
    pub fn to_text(&self) -> String {
        self.entries()
            .map(|(v, w)| format!("{v}\t{}\n", Expr::from_word(w)))
            .collect()
    }
}

pub fn orbit(h: &SubgroupHandle, v: &Vertex) -> SchreierTable {
    let mut table = SchreierTable {
        base: v.clone(),
        orbit: vec![v.clone()],
        transversal: vec![Word::empty()],
        index: HashMap::from([(v.clone(), 0)]),
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in h.generators.iter().enumerate() {
            let image = g.act(&table.orbit[i]);
            if table.index.contains_key(&image) {
                continue;
            }
            let mut t = Word::letter(Letter::new(gi, false));
            for &l in table.transversal[i].letters() {
                t.push(l);
            }
            table.index.insert(image.clone(), table.orbit.len());
            queue.push_back(table.orbit.len());
            table.orbit.push(image);
            table.transversal.push(t);
        }
    }
    table
}

/// A generator of a vertex stabilizer together with its spelling over the
/// generators of the ambient subgroup.
#[derive(Clone, Debug)]
pub struct SchreierGenerator {
    pub word: Word,
    pub element: Element,
}

/// Schreier generators `t(g·u)⁻¹ g t(u)` of `St_H(v)`, without trivial ones
/// and duplicates, shortest first, at most `cap` of them. Without the cap
/// they generate the stabilizer.
pub fn stabilizer_generators_capped(
    h: &SubgroupHandle,
    v: &Vertex,
    cap: usize,
) -> Vec<SchreierGenerator> {
    let table = orbit(h, v);
    let mut candidates: Vec<Word> = Vec::new();
    for (u, t) in table.entries() {
        for (gi, g) in h.generators.iter().enumerate() {
            let back = table.transversal(&g.act(u)).expect("orbit is closed");
            let mut w = back.inverse();
            w.push(Letter::new(gi, false));
            for &l in t.letters() {
                w.push(l);
            }
            if !w.is_empty() {
                candidates.push(w);
            }
        }
    }
    let mut elements: Vec<SchreierGenerator> = candidates
        .into_iter()
        .map(|w| SchreierGenerator {
            element: h.evaluate(&w).expect("indices come from the subgroup"),
            word: w,
        })
        .collect();
    elements.sort_by_key(|s| s.element.len());
    dedup_nontrivial(elements, cap, |s| &s.element)
}

pub fn stabilizer_generators(h: &SubgroupHandle, v: &Vertex) -> Vec<SchreierGenerator> {
    stabilizer_generators_capped(h, v, DEFAULT_SCHREIER_CAP)
}

fn dedup_nontrivial<T>(items: Vec<T>, cap: usize, key: impl Fn(&T) -> &Element) -> Vec<T> {
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    let mut kept: Vec<T> = Vec::new();
    for item in items {
        if kept.len() >= cap {
            break;
        }
        let g = key(&item);
        if g.is_trivial() {
            continue;
        }
        let fp = g.level_perm(FINGERPRINT_DEPTH).images().to_vec();
        let bucket = buckets.entry(fp).or_default();
        if bucket.iter().any(|&i| key(&kept[i]).equals(g)) {
            continue;
        }
        bucket.push(kept.len());
        kept.push(item);
    }
    kept
}

/// `H_v`, with each generator's spelling over the generators of `H` as the
/// witness that its section at `v` comes from `St_H(v)`.
#[derive(Clone, Debug)]
pub struct ProjectedSubgroup {
    pub handle: SubgroupHandle,
    pub witnesses: Vec<Word>,
}

pub fn projected_subgroup_capped(h: &SubgroupHandle, v: &Vertex, cap: usize) -> ProjectedSubgroup {
    let mut pairs: Vec<(Element, Word)> = Vec::new();
    for s in stabilizer_generators_capped(h, v, cap) {
        let section = s
            .element
            .section_at(v)
            .expect("Schreier generators fix the base vertex");
        pairs.push((section, s.word));
    }
    let pairs = dedup_nontrivial(pairs, usize::MAX, |p| &p.0);
    let (gens, witnesses): (Vec<Element>, Vec<Word>) = pairs.into_iter().unzip();
    ProjectedSubgroup {
        handle: SubgroupHandle {
            system: Arc::clone(&h.system),
            generators: gens,
        },
        witnesses,
    }
}

pub fn projected_subgroup(h: &SubgroupHandle, v: &Vertex) -> ProjectedSubgroup {
    projected_subgroup_capped(h, v, DEFAULT_SCHREIER_CAP)
}

/// Whether `H` acts on level `n` like the whole group: `H·St(n) = G`.
pub fn level_quotient_equals_full(h: &SubgroupHandle, n: usize) -> bool {
    h.level_order(n) == SubgroupHandle::full(&h.system).level_order(n)
}
