//! Word norms over the symmetric generating set, geodesic representatives
//! and balls in the Cayley graph.
//!
//! Classes are found by breadth-first search in shortlex order, so the first
//! word reaching a class is its shortlex-least geodesic. Candidate words are
//! bucketed by their action on a fixed level; bucket hits are compared at a
//! deeper level and then confirmed with the exact decision procedure. The
//! fingerprints only ever rule equality out.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use crate::element::Element;
use crate::system::GeneratorSystem;
use crate::word::{Letter, Word};

pub const FINGERPRINT_DEPTH: usize = 6;
pub const DEEP_FINGERPRINT_DEPTH: usize = 12;

#[derive(Debug)]
pub struct BallClass {
    element: Element,
    norm: usize,
    deep: OnceLock<Vec<u32>>,
}

impl BallClass {
    /// The shortlex-least geodesic word, as an element.
    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn geodesic(&self) -> &Word {
        self.element.word()
    }

    pub fn norm(&self) -> usize {
        self.norm
    }

    fn deep_fingerprint(&self) -> &[u32] {
        self.deep.get_or_init(|| deep_fingerprint(&self.element))
    }
}

fn fingerprint(g: &Element) -> Vec<u32> {
    g.level_perm(FINGERPRINT_DEPTH).images().to_vec()
}

fn deep_fingerprint(g: &Element) -> Vec<u32> {
    g.level_perm(DEEP_FINGERPRINT_DEPTH).images().to_vec()
}

/// All group elements of norm at most `radius`, each once.
#[derive(Debug)]
pub struct Ball {
    system: Arc<GeneratorSystem>,
    radius: usize,
    classes: Vec<BallClass>,
    /// `sphere_starts[r]` is the index of the first class of norm `r`.
    sphere_starts: Vec<usize>,
    buckets: HashMap<Vec<u32>, Vec<usize>>,
}

impl Ball {
    pub fn new(system: &Arc<GeneratorSystem>, radius: usize) -> Ball {
        let identity = Element::identity(system);
        let mut ball = Ball {
            system: Arc::clone(system),
            radius: 0,
            classes: Vec::new(),
            sphere_starts: vec![0],
            buckets: HashMap::new(),
        };
        ball.insert(identity, 0, None);
        ball.extend_to(radius);
        ball
    }

    pub fn system(&self) -> &Arc<GeneratorSystem> {
        &self.system
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn classes(&self) -> &[BallClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes of norm exactly `r`.
    pub fn sphere(&self, r: usize) -> &[BallClass] {
        if r > self.radius {
            return &[];
        }
        let end = self
            .sphere_starts
            .get(r + 1)
            .copied()
            .unwrap_or(self.classes.len());
        &self.classes[self.sphere_starts[r]..end]
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        (0..=self.radius).map(|r| self.sphere(r).len()).collect()
    }

    /// Number of classes of norm at most `r`, for `r = 0..=radius`.
    pub fn growth(&self) -> Vec<usize> {
        self.sphere_sizes()
            .iter()
            .scan(0, |acc, &n| {
                *acc += n;
                Some(*acc)
            })
            .collect()
    }

    pub fn extend_to(&mut self, radius: usize) {
        while self.radius < radius {
            let r = self.radius + 1;
            let frontier = self.sphere_starts[r - 1]..self.classes.len();
            self.sphere_starts.push(self.classes.len());
            self.radius = r;
            let letters = 2 * self.system.generator_count();
            for i in frontier {
                let rep = self.classes[i].element.word().clone();
                for li in 0..letters {
                    let l = Letter::from_index(li);
                    if rep.letters().last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut w = rep.clone();
                    w.push(l);
                    let candidate = Element::new(&self.system, w);
                    let fp = fingerprint(&candidate);
                    if self.lookup(&candidate, &fp).is_none() {
                        self.insert(candidate, r, Some(fp));
                    }
                }
            }
        }
    }

    fn insert(&mut self, element: Element, norm: usize, fp: Option<Vec<u32>>) {
        let fp = fp.unwrap_or_else(|| fingerprint(&element));
        self.buckets.entry(fp).or_default().push(self.classes.len());
        self.classes.push(BallClass {
            element,
            norm,
            deep: OnceLock::new(),
        });
    }

    fn lookup(&self, g: &Element, fp: &[u32]) -> Option<usize> {
        let bucket = self.buckets.get(fp)?;
        let mut deep: Option<Vec<u32>> = None;
        for &i in bucket {
            let class = &self.classes[i];
            let query_deep = deep.get_or_insert_with(|| deep_fingerprint(g));
            if class.deep_fingerprint() != query_deep.as_slice() {
                continue;
            }
            if class.element.equals(g) {
                return Some(i);
            }
        }
        None
    }

    /// The class equal to `g`, if `g` has norm at most the radius.
    pub fn find(&self, g: &Element) -> Option<&BallClass> {
        assert!(
            self.system.same_as(g.system()),
            "element from another system"
        );
        self.lookup(g, &fingerprint(g)).map(|i| &self.classes[i])
    }

    /// Tab-separated `norm representative` lines in class order.
    pub fn to_table(&self) -> String {
        let mut out = String::from("norm\trepresentative\n");
        for c in &self.classes {
            let _ = writeln!(out, "{}\t{}", c.norm, c.element);
        }
        out
    }
}

pub fn ball(system: &Arc<GeneratorSystem>, radius: usize) -> Ball {
    Ball::new(system, radius)
}

/// A lazily grown ball shared between norm queries.
#[derive(Debug)]
pub struct Geometry {
    ball: RwLock<Ball>,
}

impl Geometry {
    pub fn new(system: &Arc<GeneratorSystem>) -> Self {
        Geometry {
            ball: RwLock::new(Ball::new(system, 0)),
        }
    }

    /// The shared instance for a system (keyed by its recursion tables).
    pub fn for_system(system: &Arc<GeneratorSystem>) -> Arc<Geometry> {
        static REGISTRY: OnceLock<Mutex<Vec<(Arc<GeneratorSystem>, Arc<Geometry>)>>> =
            OnceLock::new();
        let mut reg = REGISTRY.get_or_init(Default::default).lock().unwrap();
        if let Some((_, g)) = reg.iter().find(|(s, _)| s.same_as(system)) {
            return Arc::clone(g);
        }
        let g = Arc::new(Geometry::new(system));
        reg.push((Arc::clone(system), Arc::clone(&g)));
        g
    }

    pub fn ensure_radius(&self, r: usize) {
        if self.ball.read().unwrap().radius() < r {
            self.ball.write().unwrap().extend_to(r);
        }
    }

    /// Runs `f` on the ball grown to at least radius `r`.
    pub fn with_ball<T>(&self, r: usize, f: impl FnOnce(&Ball) -> T) -> T {
        self.ensure_radius(r);
        f(&self.ball.read().unwrap())
    }

    fn locate<T>(&self, g: &Element, f: impl Fn(&BallClass) -> T) -> T {
        // norm(g) ≤ |word(g)|, so growing one sphere at a time terminates
        let mut r = self.ball.read().unwrap().radius();
        loop {
            if let Some(found) = self.ball.read().unwrap().find(g).map(&f) {
                return found;
            }
            assert!(r < g.len(), "{g} missing from the ball of radius {r}");
            r += 1;
            self.ensure_radius(r);
        }
    }

    pub fn norm(&self, g: &Element) -> usize {
        if g.is_trivial() {
            return 0;
        }
        self.locate(g, BallClass::norm)
    }

    /// Shortlex-least word of length `norm(g)` representing `g`.
    pub fn geodesic_rep(&self, g: &Element) -> Word {
        if g.is_trivial() {
            return Word::empty();
        }
        self.locate(g, |c| c.geodesic().clone())
    }
}

pub fn norm(g: &Element) -> usize {
    Geometry::for_system(g.system()).norm(g)
}

pub fn geodesic_rep(g: &Element) -> Word {
    Geometry::for_system(g.system()).geodesic_rep(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basilica;

    fn el(s: &str) -> Element {
        basilica::parse(s).unwrap()
    }

    /// Every reduced word of length at most `r`, in shortlex order.
    fn reduced_words(r: usize) -> Vec<Element> {
        let sys = basilica::system();
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..r {
            let mut next = Vec::new();
            for w in &layer {
                for li in 0..4 {
                    let l = Letter::from_index(li);
                    if w.letters().last() != Some(&l.inverse()) {
                        let mut x = w.clone();
                        x.push(l);
                        next.push(x);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.into_iter().map(|w| Element::new(&sys, w)).collect()
    }

    fn classes_by_pairwise_equality(words: &[Element]) -> usize {
        let mut reps: Vec<&Element> = Vec::new();
        for w in words {
            if !reps.iter().any(|r| r.equals(w)) {
                reps.push(w);
            }
        }
        reps.len()
    }

    #[test]
    fn small_balls() {
        let sys = basilica::system();
        assert_eq!(ball(&sys, 0).len(), 1);
        let b1 = ball(&sys, 1);
        assert_eq!(b1.len(), 5);
        let reps: Vec<String> = b1
            .classes()
            .iter()
            .map(|c| c.element().to_string())
            .collect();
        assert_eq!(reps, ["1", "a", "A", "b", "B"]);

        let words = reduced_words(2);
        assert_eq!(words.len(), 17);
        let expected = classes_by_pairwise_equality(&words);
        assert_eq!(ball(&sys, 2).len(), expected);
    }

    #[test]
    fn ball_matches_pairwise_oracle_at_radius_four() {
        let words = reduced_words(4);
        let expected = classes_by_pairwise_equality(&words);
        assert_eq!(ball(&basilica::system(), 4).len(), expected);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&el("a")), 1);
        assert_eq!(norm(&basilica::tau(1).unwrap()), 0);
        assert_eq!(norm(&basilica::alpha(1, 1)), 4);
        assert_eq!(norm(&el("abAbaB")), 6);
    }

    #[test]
    fn geodesic_examples() {
        let g = el("a").mul(&el("A")).mul(&el("b"));
        assert_eq!(geodesic_rep(&g), el("b").into_word());
        let padded = basilica::tau(1).unwrap().mul(&basilica::tau(3).unwrap());
        assert!(geodesic_rep(&padded).is_empty());
        assert_eq!(geodesic_rep(&el("ab")), el("ab").into_word());
    }

    #[test]
    fn geodesic_of_relator_padded_word() {
        // τ₁ has length 8 as a word; padding ab with it still gives ab back
        let g = el("ab").mul(&basilica::tau(1).unwrap());
        assert!(g.len() > 2);
        assert_eq!(norm(&g), 2);
        assert_eq!(geodesic_rep(&g), el("ab").into_word());
    }

    #[test]
    fn growth_strictly_increases() {
        let sizes = ball(&basilica::system(), 5).growth();
        assert!(sizes.windows(2).all(|w| w[0] < w[1]), "{sizes:?}");
    }

    #[test]
    fn table_export() {
        let t = ball(&basilica::system(), 1).to_table();
        assert_eq!(t, "norm\trepresentative\n0\t1\n1\ta\n1\tA\n1\tb\n1\tB\n");
    }
}
