//! Generator systems: the finite recursion tables defining a self-similar
//! action on the regular rooted tree, and the word-level kernel (root
//! permutations, sections, the action on vertices, triviality).

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::vertex::MAX_ALPHABET;
use crate::word::{Letter, Word};

/// Triviality results kept per system before the cache is dropped.
const TRIVIALITY_CACHE_LIMIT: usize = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: char,
    pub root: Permutation,
    pub sections: Vec<Word>,
}

/// Raw generator data as read from a definition, before section words are
/// resolved against the full name table.
#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub name: char,
    pub perm: Vec<u32>,
    pub sections: Vec<String>,
}

#[derive(Debug)]
pub struct GeneratorSystem {
    alphabet: usize,
    generators: Vec<Generator>,
    // per letter index (see `Letter::index`)
    letter_perms: Vec<Vec<u32>>,
    letter_sections: Vec<Vec<Word>>,
    triviality: RwLock<HashMap<Word, bool>>,
}

pub const BASILICA_DEFINITION: &str = "\
alphabet 2
gen a perm=0,1 sections=e,b
gen b perm=1,0 sections=a,e
";

impl GeneratorSystem {
    pub fn new(alphabet: usize, specs: Vec<GeneratorSpec>) -> Result<Arc<Self>> {
        if !(2..=MAX_ALPHABET).contains(&alphabet) {
            return Err(Error::input(format!(
                "alphabet size must be in 2..={MAX_ALPHABET}, got {alphabet}"
            )));
        }
        if specs.is_empty() {
            return Err(Error::input("a system needs at least one generator"));
        }
        if specs.len() > Letter::MAX_GENERATORS {
            return Err(Error::input("too many generators"));
        }
        let mut names = Vec::with_capacity(specs.len());
        for s in &specs {
            if !s.name.is_ascii_lowercase() || s.name == 'e' {
                return Err(Error::input(format!(
                    "generator name '{}' must be a lowercase ASCII letter other than 'e'",
                    s.name
                )));
            }
            if names.contains(&s.name) {
                return Err(Error::input(format!(
                    "duplicate generator name '{}'",
                    s.name
                )));
            }
            names.push(s.name);
        }
        let mut generators = Vec::with_capacity(specs.len());
        for s in specs {
            if s.perm.len() != alphabet {
                return Err(Error::input(format!(
                    "generator '{}': permutation has {} images, expected {alphabet}",
                    s.name,
                    s.perm.len()
                )));
            }
            let root = Permutation::from_images(s.perm)
                .map_err(|e| Error::input(format!("generator '{}': {e}", s.name)))?;
            if s.sections.len() != alphabet {
                return Err(Error::input(format!(
                    "generator '{}': {} sections given, expected {alphabet}",
                    s.name,
                    s.sections.len()
                )));
            }
            let sections = s
                .sections
                .iter()
                .map(|w| parse_word_with(&names, w, true))
                .collect::<Result<Vec<_>>>()?;
            generators.push(Generator {
                name: s.name,
                root,
                sections,
            });
        }

        let mut letter_perms = Vec::with_capacity(2 * generators.len());
        let mut letter_sections = Vec::with_capacity(2 * generators.len());
        for g in &generators {
            letter_perms.push(g.root.images().to_vec());
            letter_sections.push(g.sections.clone());
            // (g⁻¹)_x = (g_{σ⁻¹(x)})⁻¹
            let inv = g.root.inverse();
            letter_perms.push(inv.images().to_vec());
            letter_sections.push(
                (0..alphabet)
                    .map(|x| g.sections[inv.apply(x)].inverse())
                    .collect(),
            );
        }

        Ok(Arc::new(GeneratorSystem {
            alphabet,
            generators,
            letter_perms,
            letter_sections,
            triviality: RwLock::new(HashMap::new()),
        }))
    }

    /// Parses a group-definition file:
    ///
    /// ```text
    /// alphabet 2
    /// gen a perm=0,1 sections=e,b
    /// gen b perm=1,0 sections=a,e
    /// ```
    ///
    /// Lines may also be separated by `;`, `#` starts a comment and `e`
    /// denotes the empty word.
    pub fn parse_definition(text: &str) -> Result<Arc<Self>> {
        let mut alphabet = None;
        let mut specs = Vec::new();
        for (lineno, raw) in text.split(['\n', ';']).enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| Error::parse(1, format!("statement {}: {m}", lineno + 1));
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("alphabet") => {
                    let d = fields
                        .next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| err("expected `alphabet <d>`".into()))?;
                    alphabet = Some(d);
                }
                Some("gen") => {
                    let name_field = fields
                        .next()
                        .ok_or_else(|| err("missing generator name".into()))?;
                    let mut chars = name_field.chars();
                    let name = match (chars.next(), chars.next()) {
                        (Some(c), None) => c,
                        _ => {
                            return Err(err(format!(
                                "generator name '{name_field}' must be one character"
                            )))
                        }
                    };
                    let mut perm = None;
                    let mut sections = None;
                    for f in fields {
                        if let Some(p) = f.strip_prefix("perm=") {
                            let images = p
                                .split(',')
                                .map(|x| x.trim().parse::<u32>())
                                .collect::<std::result::Result<Vec<_>, _>>()
                                .map_err(|_| err(format!("bad permutation '{p}'")))?;
                            perm = Some(images);
                        } else if let Some(s) = f.strip_prefix("sections=") {
                            sections = Some(s.split(',').map(str::to_string).collect());
                        } else {
                            return Err(err(format!("unknown field '{f}'")));
                        }
                    }
                    specs.push(GeneratorSpec {
                        name,
                        perm: perm.ok_or_else(|| err("missing perm=".into()))?,
                        sections: sections.ok_or_else(|| err("missing sections=".into()))?,
                    });
                }
                Some(other) => return Err(err(format!("unknown statement '{other}'"))),
                None => {}
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(1, "missing `alphabet` statement"))?;
        Self::new(alphabet, specs)
    }

    /// Serializes back to the definition format accepted by
    /// [`parse_definition`](Self::parse_definition).
    pub fn to_definition(&self) -> String {
        let mut out = format!("alphabet {}\n", self.alphabet);
        for g in &self.generators {
            let perm: Vec<String> = g.root.images().iter().map(|x| x.to_string()).collect();
            let secs: Vec<String> = g
                .sections
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "e".to_string()
                    } else {
                        self.format_word(w)
                    }
                })
                .collect();
            let _ = writeln!(
                out,
                "gen {} perm={} sections={}",
                g.name,
                perm.join(","),
                secs.join(",")
            );
        }
        out
    }

    pub fn basilica() -> Arc<Self> {
        Self::parse_definition(BASILICA_DEFINITION).expect("built-in definition is valid")
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: char) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Same recursion tables (not necessarily the same handle).
    pub fn same_as(&self, other: &GeneratorSystem) -> bool {
        std::ptr::eq(self, other)
            || (self.alphabet == other.alphabet && self.generators == other.generators)
    }

    /// Parses the surface syntax: lowercase generator names, uppercase for
    /// inverses, no separators. `""`, `"1"`, `"e"` and `"ε"` denote the
    /// identity. The result is freely reduced.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let names: Vec<char> = self.generators.iter().map(|g| g.name).collect();
        parse_word_with(&names, s, false)
    }

    /// Inverse of [`parse_word`](Self::parse_word); the empty word prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|l| {
                let c = self.generators[l.generator()].name;
                if l.is_inverse() {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }

    #[inline]
    pub(crate) fn letter_image(&self, l: Letter, x: usize) -> usize {
        self.letter_perms[l.index()][x] as usize
    }

    #[inline]
    pub(crate) fn letter_section(&self, l: Letter, x: usize) -> &Word {
        &self.letter_sections[l.index()][x]
    }

    /// Root permutation of a word: `σ_{x1} ∘ ... ∘ σ_{xn}`.
    pub fn root_perm_of(&self, w: &Word) -> Permutation {
        let images = (0..self.alphabet)
            .map(|x| {
                w.letters()
                    .iter()
                    .rev()
                    .fold(x, |p, &l| self.letter_image(l, p)) as u32
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    pub(crate) fn root_is_trivial(&self, w: &Word) -> bool {
        (0..self.alphabet).all(|x| {
            w.letters()
                .iter()
                .rev()
                .fold(x, |p, &l| self.letter_image(l, p))
                == x
        })
    }

    /// Section of a word at the first-level vertex `x`, using
    /// `(gh)_x = g_{σ_h(x)} h_x`.
    pub fn section_of(&self, w: &Word, x: usize) -> Word {
        debug_assert!(x < self.alphabet);
        let mut pieces: Vec<&Word> = Vec::with_capacity(w.len());
        let mut p = x;
        for &l in w.letters().iter().rev() {
            pieces.push(self.letter_section(l, p));
            p = self.letter_image(l, p);
        }
        let mut out = Word::empty();
        for piece in pieces.iter().rev() {
            for &m in piece.letters() {
                out.push(m);
            }
        }
        out
    }

    /// Applies a word to a vertex in place.
    pub(crate) fn act_in_place(&self, w: &[Letter], v: &mut [u8]) {
        if v.is_empty() {
            return;
        }
        for &l in w.iter().rev() {
            self.act_letter(l, v);
        }
    }

    fn act_letter(&self, l: Letter, v: &mut [u8]) {
        let x = v[0] as usize;
        v[0] = self.letter_image(l, x) as u8;
        if v.len() > 1 {
            let sec = self.letter_section(l, x);
            let rest = &mut v[1..];
            for &m in sec.letters().iter().rev() {
                self.act_letter(m, rest);
            }
        }
    }

    /// Decides whether a word acts trivially on the whole tree.
    ///
    /// A word is trivial iff every word in the closure of `{w}` under taking
    /// (reduced) first-level sections has trivial root permutation. For
    /// systems whose section lengths sum to at most the word length (the
    /// Basilica tables among them) the closure is finite; other systems may
    /// not terminate, which is why [`is_trivial_bounded`](Self::is_trivial_bounded)
    /// exists.
    pub fn is_trivial_word(&self, w: &Word) -> bool {
        self.is_trivial_bounded(w, usize::MAX)
            .expect("unbounded search always finishes")
    }

    /// As [`is_trivial_word`](Self::is_trivial_word) but gives up after
    /// visiting `max_states` distinct words.
    pub fn is_trivial_bounded(&self, w: &Word, max_states: usize) -> Result<bool> {
        if w.is_empty() {
            return Ok(true);
        }
        let cached = self.triviality.read().unwrap().get(w).copied();
        if let Some(known) = cached {
            return Ok(known);
        }
        let mut visited: HashSet<Word> = HashSet::new();
        let mut stack = vec![w.clone()];
        while let Some(u) = stack.pop() {
            if u.is_empty() || visited.contains(&u) {
                continue;
            }
            let cached = self.triviality.read().unwrap().get(&u).copied();
            match cached {
                Some(true) => continue,
                Some(false) => {
                    self.remember([w.clone()], false);
                    return Ok(false);
                }
                None => {}
            }
            if !self.root_is_trivial(&u) {
                self.remember([w.clone(), u], false);
                return Ok(false);
            }
            for x in 0..self.alphabet {
                let s = self.section_of(&u, x);
                if !s.is_empty() && !visited.contains(&s) {
                    stack.push(s);
                }
            }
            visited.insert(u);
            if visited.len() > max_states {
                return Err(Error::Budget(format!(
                    "triviality check visited more than {max_states} words"
                )));
            }
        }
        // every word in the closure is trivial
        self.remember(visited, true);
        Ok(true)
    }

    fn remember<I: IntoIterator<Item = Word>>(&self, words: I, value: bool) {
        let mut cache = self.triviality.write().unwrap();
        if cache.len() > TRIVIALITY_CACHE_LIMIT {
            cache.clear();
        }
        for w in words {
            cache.insert(w, value);
        }
    }
}

fn parse_word_with(names: &[char], s: &str, definition: bool) -> Result<Word> {
    let t = s.trim();
    if t.is_empty() || t == "1" || t == "e" || t == "ε" {
        return Ok(Word::empty());
    }
    let mut out = Word::empty();
    for (i, c) in s.chars().enumerate() {
        if c.is_whitespace() && !definition {
            continue;
        }
        let lower = c.to_ascii_lowercase();
        match names.iter().position(|&n| n == lower) {
            Some(g) => out.push(Letter::new(g, c.is_ascii_uppercase())),
            None => {
                return Err(Error::parse(i + 1, format!("unknown letter '{c}'")));
            }
        }
    }
    Ok(out)
}
