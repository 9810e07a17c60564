//! Finite portraits: the root permutation of every section down to a depth.

use std::fmt::{self, Write as _};

use crate::element::Element;
use crate::perm::Permutation;
use crate::vertex::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Portrait {
    alphabet: usize,
    /// `levels[n][i]` labels the `i`-th vertex of level `n` (lexicographic).
    levels: Vec<Vec<Permutation>>,
}

impl Portrait {
    pub fn of(g: &Element, depth: usize) -> Portrait {
        let d = g.system().alphabet();
        let mut levels = Vec::with_capacity(depth);
        let mut frontier = vec![g.clone()];
        for n in 0..depth {
            levels.push(frontier.iter().map(Element::root_perm).collect());
            if n + 1 < depth {
                frontier = frontier.iter().flat_map(Element::sections).collect();
            }
        }
        Portrait {
            alphabet: d,
            levels,
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn label(&self, v: &Vertex) -> Option<&Permutation> {
        self.levels.get(v.depth())?.get(v.index(self.alphabet))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().flatten().all(Permutation::is_identity)
    }

    /// Graphviz description; non-trivial labels are drawn filled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph portrait {\n  node [shape=circle];\n");
        for (n, level) in self.levels.iter().enumerate() {
            for (i, p) in level.iter().enumerate() {
                let v = Vertex::from_index(i, n, self.alphabet);
                let style = if p.is_identity() {
                    ""
                } else {
                    ", style=filled"
                };
                let _ = writeln!(out, "  \"{v}\" [label=\"{p}\"{style}];");
                if let Some(parent) = v.parent() {
                    let _ = writeln!(out, "  \"{parent}\" -> \"{v}\";");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// One line per vertex: `<vertex> <label>`.
impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, level) in self.levels.iter().enumerate() {
            for (i, p) in level.iter().enumerate() {
                writeln!(f, "{} {}", Vertex::from_index(i, n, self.alphabet), p)?;
            }
        }
        Ok(())
    }
}
