//! Vertices of the regular rooted tree: finite strings over `{0, .., d-1}`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest alphabet that has a one-character digit for every letter.
pub const MAX_ALPHABET: usize = 36;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Vertex(Vec<u8>);

impl Vertex {
    pub fn root() -> Self {
        Vertex(Vec::new())
    }

    pub fn from_letters(letters: Vec<u8>) -> Self {
        Vertex(letters)
    }

    /// Parses a string of base-36 digits, each below `alphabet`.
    /// The root may be written as the empty string, `ε` or `-`.
    pub fn parse(s: &str, alphabet: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "-" {
            return Ok(Vertex::root());
        }
        let mut letters = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c.to_digit(MAX_ALPHABET as u32) {
                Some(x) if (x as usize) < alphabet => letters.push(x as u8),
                _ => {
                    return Err(Error::parse(
                        i + 1,
                        format!("'{c}' is not a letter of the alphabet 0..{}", alphabet - 1),
                    ))
                }
            }
        }
        Ok(Vertex(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, x: u8) -> Vertex {
        let mut v = self.0.clone();
        v.push(x);
        Vertex(v)
    }

    pub fn concat(&self, other: &Vertex) -> Vertex {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Vertex(v)
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.0.is_empty() {
            None
        } else {
            Some(Vertex(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// Position among the vertices of its level, in lexicographic order.
    pub fn index(&self, alphabet: usize) -> usize {
        self.0.iter().fold(0, |acc, &x| acc * alphabet + x as usize)
    }

    pub fn from_index(mut index: usize, depth: usize, alphabet: usize) -> Vertex {
        let mut letters = vec![0u8; depth];
        for slot in letters.iter_mut().rev() {
            *slot = (index % alphabet) as u8;
            index /= alphabet;
        }
        Vertex(letters)
    }

    /// All vertices of one level, in lexicographic order.
    pub fn level(depth: usize, alphabet: usize) -> impl Iterator<Item = Vertex> {
        let count = alphabet.pow(depth as u32);
        (0..count).map(move |i| Vertex::from_index(i, depth, alphabet))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for &x in &self.0 {
            let c = char::from_digit(x as u32, MAX_ALPHABET as u32).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
