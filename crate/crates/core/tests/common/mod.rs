//! A small stand-alone model of the Basilica group used as an oracle. It
//! shares no code with the engine: words are byte strings over `aAbB`
//! (uppercase is the inverse) and act on the left, rightmost letter first.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

pub type W = Vec<u8>;

pub fn w(s: &str) -> W {
    if s == "1" {
        return Vec::new();
    }
    s.bytes().collect()
}

pub fn show(x: &[u8]) -> String {
    if x.is_empty() {
        "1".into()
    } else {
        String::from_utf8(x.to_vec()).unwrap()
    }
}

pub fn inv_letter(l: u8) -> u8 {
    l ^ 0x20
}

pub fn reduce(x: &[u8]) -> W {
    let mut out: W = Vec::with_capacity(x.len());
    for &l in x {
        if out.last() == Some(&inv_letter(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(x: &[u8]) -> W {
    x.iter().rev().map(|&l| inv_letter(l)).collect()
}

pub fn mul(x: &[u8], y: &[u8]) -> W {
    let mut v = x.to_vec();
    v.extend_from_slice(y);
    reduce(&v)
}

pub fn power(x: &[u8], n: i64) -> W {
    let base = if n < 0 { inverse(x) } else { x.to_vec() };
    let mut out = Vec::new();
    for _ in 0..n.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    reduce(&out)
}

/// `x⁻¹ y⁻¹ x y`.
pub fn comm(x: &[u8], y: &[u8]) -> W {
    reduce(&[inverse(x), inverse(y), x.to_vec(), y.to_vec()].concat())
}

/// Image of the first letter and the section there, for one generator:
/// `a = (1, b)`, `b = σ(a, 1)`.
fn letter_step(l: u8, x: u8) -> (u8, &'static [u8]) {
    match (l, x) {
        (b'a', 0) => (0, b""),
        (b'a', _) => (1, b"b"),
        (b'A', 0) => (0, b""),
        (b'A', _) => (1, b"B"),
        (b'b', 0) => (1, b"a"),
        (b'b', _) => (0, b""),
        (b'B', 0) => (1, b""),
        (b'B', _) => (0, b"A"),
        _ => panic!("bad letter {l}"),
    }
}

/// `(g(x), g_x)` with the section freely reduced.
pub fn step(g: &[u8], x: u8) -> (u8, W) {
    let mut cur = x;
    let mut parts: Vec<&[u8]> = Vec::with_capacity(g.len());
    for &l in g.iter().rev() {
        let (y, s) = letter_step(l, cur);
        parts.push(s);
        cur = y;
    }
    parts.reverse();
    (cur, reduce(&parts.concat()))
}

pub fn section(g: &[u8], x: u8) -> W {
    step(g, x).1
}

pub fn section_at(g: &[u8], v: &[u8]) -> W {
    v.iter().fold(g.to_vec(), |h, &x| section(&h, x))
}

pub fn apply(g: &[u8], v: &[u8]) -> Vec<u8> {
    let mut h = g.to_vec();
    let mut out = Vec::with_capacity(v.len());
    for &x in v {
        let (y, s) = step(&h, x);
        out.push(y);
        h = s;
    }
    out
}

pub fn swaps_root(g: &[u8]) -> bool {
    g.iter().filter(|&&l| l == b'b' || l == b'B').count() % 2 == 1
}

/// `g = 1` iff every section reachable from `g` fixes the first letter. The
/// reachable reduced words are no longer than `g`, so the search ends.
pub fn trivial(g: &[u8]) -> bool {
    let start = reduce(g);
    let mut seen: HashSet<W> = HashSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        if h.is_empty() || !seen.insert(h.clone()) {
            continue;
        }
        if swaps_root(&h) {
            return false;
        }
        queue.push_back(section(&h, 0));
        queue.push_back(section(&h, 1));
    }
    true
}

pub fn equal(g: &[u8], h: &[u8]) -> bool {
    trivial(&mul(g, &inverse(h)))
}

/// Checks `g = σ^flip (s0, s1)`.
pub fn has_psi(g: &[u8], flip: bool, s0: &[u8], s1: &[u8]) -> bool {
    swaps_root(g) == flip && equal(&section(g, 0), s0) && equal(&section(g, 1), s1)
}

pub fn vertices(depth: usize) -> Vec<Vec<u8>> {
    (0..1usize << depth)
        .map(|i| {
            (0..depth)
                .map(|j| ((i >> (depth - 1 - j)) & 1) as u8)
                .collect()
        })
        .collect()
}

fn index(v: &[u8]) -> usize {
    v.iter().fold(0, |acc, &x| 2 * acc + x as usize)
}

/// The permutation of level `n`, vertices indexed as binary numbers.
pub fn level_perm(g: &[u8], n: usize) -> Vec<u32> {
    vertices(n)
        .iter()
        .map(|v| index(&apply(g, v)) as u32)
        .collect()
}

/// `p` then `q`.
pub fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    p.iter().map(|&i| q[i as usize]).collect()
}

/// Order of the group generated by `gens`, by enumerating every element.
pub fn closure_order(gens: &[Vec<u32>]) -> usize {
    let Some(first) = gens.first() else { return 1 };
    let id: Vec<u32> = (0..first.len() as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(&p, g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// Orbit of a vertex under words, by breadth-first search.
pub fn orbit_size(gens: &[W], v: &[u8]) -> usize {
    let mut seen: HashSet<Vec<u8>> = HashSet::from([v.to_vec()]);
    let mut queue = VecDeque::from([v.to_vec()]);
    while let Some(u) = queue.pop_front() {
        for g in gens {
            let x = apply(g, &u);
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    seen.len()
}

const LETTERS: [u8; 4] = *b"aAbB";
const FINGERPRINT_LEVEL: usize = 8;

/// Every element of norm at most `radius`, found by breadth-first search
/// over reduced words, with word norms.
pub struct OracleBall {
    pub radius: usize,
    /// Shortest-first representatives; the length of each is its norm.
    pub reps: Vec<W>,
    buckets: HashMap<Vec<u32>, Vec<usize>>,
    letter_perms: HashMap<u8, Vec<u32>>,
    /// Every geodesic word with its class.
    pub geodesics: Vec<(W, usize)>,
}

impl OracleBall {
    pub fn new(radius: usize) -> OracleBall {
        let letter_perms = LETTERS
            .iter()
            .map(|&l| (l, level_perm(&[l], FINGERPRINT_LEVEL)))
            .collect();
        let mut ball = OracleBall {
            radius,
            reps: Vec::new(),
            buckets: HashMap::new(),
            letter_perms,
            geodesics: Vec::new(),
        };
        let id: Vec<u32> = (0..1u32 << FINGERPRINT_LEVEL).collect();
        ball.insert(Vec::new(), id.clone());
        ball.geodesics.push((Vec::new(), 0));
        // every reduced word of the current length with its permutation
        let mut frontier: Vec<(W, Vec<u32>)> = vec![(Vec::new(), id)];
        for _ in 1..=radius {
            let mut next = Vec::new();
            for (word, perm) in &frontier {
                for &l in &LETTERS {
                    if word.last() == Some(&inv_letter(l)) {
                        continue;
                    }
                    let mut x = word.clone();
                    x.push(l);
                    // x = word·l acts by l first
                    let p = compose(&ball.letter_perms[&l], perm);
                    match ball.lookup_with(&x, &p) {
                        Some(c) if ball.reps[c].len() == x.len() => {
                            ball.geodesics.push((x.clone(), c))
                        }
                        Some(_) => {}
                        None => {
                            let c = ball.insert(x.clone(), p.clone());
                            ball.geodesics.push((x.clone(), c));
                        }
                    }
                    next.push((x, p));
                }
            }
            frontier = next;
        }
        ball
    }

    fn insert(&mut self, x: W, p: Vec<u32>) -> usize {
        let c = self.reps.len();
        self.reps.push(x);
        self.buckets.entry(p).or_default().push(c);
        c
    }

    fn lookup_with(&self, x: &[u8], p: &[u32]) -> Option<usize> {
        self.buckets
            .get(p)?
            .iter()
            .copied()
            .find(|&c| equal(x, &self.reps[c]))
    }

    pub fn lookup(&self, x: &[u8]) -> Option<usize> {
        let x = reduce(x);
        self.lookup_with(&x, &level_perm(&x, FINGERPRINT_LEVEL))
    }

    pub fn norm(&self, x: &[u8]) -> Option<usize> {
        self.lookup(x).map(|c| self.reps[c].len())
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.radius + 1];
        for r in &self.reps {
            s[r.len()] += 1;
        }
        s
    }
}

/// Exponent sums `(s, t)` of `a` and `b`.
pub fn exponent_sums(x: &[u8]) -> (i64, i64) {
    x.iter().fold((0, 0), |(s, t), &l| match l {
        b'a' => (s + 1, t),
        b'A' => (s - 1, t),
        b'b' => (s, t + 1),
        _ => (s, t - 1),
    })
}

/// Heisenberg image `(p, q, r)` of `a^p b^q c^r` with `a ↦ (1,0,0)`,
/// `b ↦ (0,1,0)`, `c = [a, b]`.
pub fn heis(x: &[u8]) -> (i64, i64, i64) {
    let gen = |l: u8| match l {
        b'a' => (1, 0, 0),
        b'A' => (-1, 0, 0),
        b'b' => (0, 1, 0),
        _ => (0, -1, 0),
    };
    x.iter().fold((0, 0, 0), |(p, q, r), &l| {
        let (p2, q2, r2) = gen(l);
        // b^q a^p' = a^p' b^q c^{-q p'}
        (p + p2, q + q2, r + r2 - q * p2)
    })
}
