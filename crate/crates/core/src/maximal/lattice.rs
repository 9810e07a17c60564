//! Realizing a coset of `B'` inside a subgroup: the abelianization of a
//! subgroup is the lattice in `Z²` spanned by its generators' images.

use std::fmt;

use crate::basilica::{ab_image, AbImage};
use crate::error::Result;
use crate::expr::Expr;
use crate::permgrp::SubgroupHandle;

/// An integer combination of the subgroup generators.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Column {
    image: [i64; 2],
    coefficients: Vec<i64>,
}

impl Column {
    fn combine(&self, x: i64, other: &Column, y: i64) -> Column {
        Column {
            image: [
                x * self.image[0] + y * other.image[0],
                x * self.image[1] + y * other.image[1],
            ],
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(p, q)| x * p + y * q)
                .collect(),
        }
    }

    fn neg(&self) -> Column {
        self.combine(-1, self, 0)
    }
}

/// `(g, x, y)` with `g = gcd(p, q) ≥ 0` and `px + qy = g`.
fn ext_gcd(p: i64, q: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (p, q);
    let (mut x0, mut x1) = (1, 0);
    let (mut y0, mut y1) = (0, 1);
    while r1 != 0 {
        let t = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - t * r1);
        (x0, x1) = (x1, x0 - t * x1);
        (y0, y1) = (y1, y0 - t * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Unimodular column operations bringing `columns[from..]` to a single
/// column with nonzero entry in `row`; the others get 0 there.
fn reduce_row(columns: &mut [Column], row: usize) {
    for j in 1..columns.len() {
        let (p, q) = (columns[0].image[row], columns[j].image[row]);
        if q == 0 {
            continue;
        }
        let (g, x, y) = ext_gcd(p, q);
        let first = columns[0].combine(x, &columns[j], y);
        let rest = columns[0].combine(-q / g, &columns[j], p / g);
        columns[0] = first;
        columns[j] = rest;
    }
}

/// Lattice basis in echelon form `(g, x), (0, d)` with `g, d > 0`, each
/// basis vector paired with its coefficients over the generators.
fn echelon(h: &SubgroupHandle) -> Result<Vec<Column>> {
    let k = h.len();
    let mut cols: Vec<Column> = Vec::with_capacity(k);
    for (i, g) in h.generators().iter().enumerate() {
        let im = ab_image(g)?;
        let mut coefficients = vec![0; k];
        coefficients[i] = 1;
        cols.push(Column {
            image: [im.s, im.t],
            coefficients,
        });
    }
    let mut basis = Vec::new();
    let mut rest: &mut [Column] = &mut cols;
    for row in 0..2 {
        if let Some(p) = rest.iter().position(|c| c.image[row] != 0) {
            rest.swap(0, p);
            reduce_row(rest, row);
            if rest[0].image[row] < 0 {
                rest[0] = rest[0].neg();
            }
            basis.push(rest[0].clone());
            rest = &mut rest[1..];
        }
    }
    if let [first, second] = basis.as_mut_slice() {
        if first.image[0] != 0 {
            // Hermite normal form: 0 ≤ x < d in (g, x), (0, d)
            let q = first.image[1].div_euclid(second.image[1]);
            *first = first.combine(1, second, -q);
        }
    }
    Ok(basis)
}

/// Basis of the image of `h` in `Z²`.
pub fn lattice(h: &SubgroupHandle) -> Result<Vec<AbImage>> {
    Ok(echelon(h)?
        .iter()
        .map(|c| AbImage::new(c.image[0], c.image[1]))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSolution {
    /// Exponent of each generator, in generator order.
    pub coefficients: Vec<i64>,
    /// `∏ x_i^{c_i}`, realizing the target image.
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetOutcome {
    Solved(CosetSolution),
    NotInLattice(Vec<AbImage>),
}

/// Formats a lattice basis as `(1,1),(0,2)`; the zero lattice is `0`.
pub struct LatticeDisplay<'a>(pub &'a [AbImage]);

impl fmt::Display for LatticeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn solve_coset(h: &SubgroupHandle, target: AbImage) -> Result<CosetOutcome> {
    let basis = echelon(h)?;
    let images: Vec<AbImage> = basis
        .iter()
        .map(|c| AbImage::new(c.image[0], c.image[1]))
        .collect();
    let mut remaining = [target.s, target.t];
    let mut coefficients = vec![0i64; h.len()];
    for c in &basis {
        let row = if c.image[0] != 0 { 0 } else { 1 };
        if remaining[row] % c.image[row] != 0 {
            return Ok(CosetOutcome::NotInLattice(images));
        }
        let m = remaining[row] / c.image[row];
        remaining = [remaining[0] - m * c.image[0], remaining[1] - m * c.image[1]];
        for (acc, x) in coefficients.iter_mut().zip(&c.coefficients) {
            *acc += m * x;
        }
    }
    if remaining != [0, 0] {
        return Ok(CosetOutcome::NotInLattice(images));
    }
    let expr = Expr::seq(
        coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| Expr::gen(i, false).pow(c)),
    );
    Ok(CosetOutcome::Solved(CosetSolution { coefficients, expr }))
}
