//! Deterministic Schreier–Sims: a base and strong generating set with
//! explicit transversals at every level.

use num_bigint::BigUint;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[x] = (u, u⁻¹)` with `u(point) = x`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Level {
        let mut level = Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild();
        level
    }

    fn rebuild(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        self.transversal[self.point] = Some((id.clone(), id));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let u = g.compose(&self.transversal[x].as_ref().unwrap().0);
                    let inv = u.inverse();
                    self.transversal[y] = Some((u, inv));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// A stabilizer chain `G = G₀ ≥ G₁ ≥ … ≥ G_k = 1` along the base.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

fn first_moved(g: &Permutation) -> Option<usize> {
    (0..g.degree()).find(|&x| !g.fixes(x))
}

impl StabilizerChain {
    /// Builds the chain for `⟨gens⟩` acting on `degree` points. New base
    /// points are always the least moved point, so the result depends only
    /// on the generator list.
    pub fn new(degree: usize, gens: &[Permutation]) -> StabilizerChain {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        assert!(
            gens.iter().all(|g| g.degree() == degree),
            "permutations of mixed degree"
        );
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for g in &gens {
            if chain.levels.iter().all(|l| g.fixes(l.point)) {
                chain
                    .levels
                    .push(Level::new(first_moved(g).unwrap(), degree));
            }
        }
        let points: Vec<usize> = chain.levels.iter().map(|l| l.point).collect();
        for (i, level) in chain.levels.iter_mut().enumerate() {
            level.gens = gens
                .iter()
                .filter(|g| points[..i].iter().all(|&p| g.fixes(p)))
                .cloned()
                .collect();
            level.rebuild();
        }
        chain.complete();
        chain
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_missing(level) {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let p = first_moved(&h).expect("sifted residue is not the identity");
                        self.levels.push(Level::new(p, self.degree));
                    }
                    for l in level + 1..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild();
                    }
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// Sifts every Schreier generator of `level`; returns the first residue
    /// that is not accounted for by the deeper levels.
    fn find_missing(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &x in &lv.orbit {
            let (u, _) = lv.transversal[x].as_ref().unwrap();
            for g in &lv.gens {
                let (_, w_inv) = lv.transversal[g.apply(x)].as_ref().unwrap();
                let schreier = w_inv.compose(&g.compose(u));
                let (h, j) = self.sift(schreier, level + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            match &level.transversal[g.apply(level.point)] {
                Some((_, inv)) => g = inv.compose(&g),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Basic orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .map(|l| BigUint::from(l.orbit.len()))
            .product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (h, j) = self.sift(g.clone(), 0);
            j == self.levels.len() && h.is_identity()
        }
    }
}

/// Order of the group generated by `perms`, all of one degree. The empty
/// list generates the trivial group.
pub fn group_order(perms: &[Permutation]) -> BigUint {
    match perms.first() {
        None => BigUint::from(1u8),
        Some(p) => StabilizerChain::new(p.degree(), perms).order(),
    }
}
