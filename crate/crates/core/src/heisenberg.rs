//! The discrete Heisenberg group in normal form `a^p b^q c^r`, `c = [a,b]`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl HeisenbergElement {
    pub const IDENTITY: HeisenbergElement = HeisenbergElement { p: 0, q: 0, r: 0 };
    pub const A: HeisenbergElement = HeisenbergElement { p: 1, q: 0, r: 0 };
    pub const B: HeisenbergElement = HeisenbergElement { p: 0, q: 1, r: 0 };
    pub const C: HeisenbergElement = HeisenbergElement { p: 0, q: 0, r: 1 };

    pub const fn new(p: i64, q: i64, r: i64) -> Self {
        HeisenbergElement { p, q, r }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn inverse(&self) -> Self {
        HeisenbergElement {
            p: -self.p,
            q: -self.q,
            r: -self.r - self.q * self.p,
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Self::IDENTITY, |acc, _| acc * base)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse() * other.inverse() * *self * *other
    }
}

/// `(p,q,r)(p',q',r') = (p+p', q+q', r+r'-q p')`: moving `b^q` past `a^{p'}`
/// costs `c^{-q p'}`.
impl Mul for HeisenbergElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        HeisenbergElement {
            p: self.p + rhs.p,
            q: self.q + rhs.q,
            r: self.r + rhs.r - self.q * rhs.p,
        }
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}
