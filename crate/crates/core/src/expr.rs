//! Expressions over the generators of a finitely generated subgroup.
//!
//! Generator `i` is written `x<i>`, its inverse `X<i>`; juxtaposition is
//! multiplication and `(e)^n` is a power. The identity is `1`. Example:
//! `(x0x1)^4X2`. Constructors keep expressions in a normal form so that
//! printing and parsing are mutually inverse.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Gen {
        index: usize,
        inverse: bool,
    },
    /// Product of at least two factors, none of them a product.
    Seq(Vec<Expr>),
    /// `|n| ≥ 2`, or `n = -1` on a non-generator; the base is never a power
    /// and never an inverse generator.
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn identity() -> Expr {
        Expr::Seq(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Expr::Seq(v) if v.is_empty())
    }

    pub fn gen(index: usize, inverse: bool) -> Expr {
        Expr::Gen { index, inverse }
    }

    /// Flattens nested products and merges adjacent powers of one base.
    pub fn seq<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut out: Vec<Expr> = Vec::new();
        for e in items {
            push_factor(&mut out, e);
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Expr::Seq(out)
        }
    }

    /// `(base, n)` with `self = base^n`, `base` not a power or an inverse.
    fn split_power(self) -> (Expr, i64) {
        match self {
            Expr::Gen {
                index,
                inverse: true,
            } => (Expr::gen(index, false), -1),
            Expr::Pow(base, n) => (*base, n),
            other => (other, 1),
        }
    }

    pub fn pow(self, n: i64) -> Expr {
        if n == 0 || self.is_identity() {
            return Expr::identity();
        }
        if n == 1 {
            return self;
        }
        match self {
            Expr::Gen {
                index,
                inverse: true,
            } => Expr::gen(index, false).pow(-n),
            Expr::Gen {
                index,
                inverse: false,
            } if n == -1 => Expr::gen(index, true),
            Expr::Pow(base, m) => base.pow(m * n),
            other => Expr::Pow(Box::new(other), n),
        }
    }

    pub fn inverse(&self) -> Expr {
        match self {
            Expr::Gen { index, inverse } => Expr::gen(*index, !inverse),
            Expr::Seq(items) => Expr::seq(items.iter().rev().map(Expr::inverse)),
            Expr::Pow(base, n) => (**base).clone().pow(-n),
        }
    }

    /// Compresses runs of one letter into powers.
    pub fn from_word(w: &Word) -> Expr {
        Expr::seq(
            w.letters()
                .iter()
                .map(|l| Expr::gen(l.generator(), l.is_inverse())),
        )
    }

    /// Expands into a reduced word over the subgroup generators.
    pub fn evaluate(&self) -> Word {
        match self {
            Expr::Gen { index, inverse } => Word::letter(Letter::new(*index, *inverse)),
            Expr::Seq(items) => items
                .iter()
                .fold(Word::empty(), |acc, e| acc.concat(&e.evaluate())),
            Expr::Pow(base, n) => base.evaluate().pow(*n),
        }
    }

    /// Replaces generator `i` by `images[i]`.
    pub fn substitute(&self, images: &[Expr]) -> Expr {
        match self {
            Expr::Gen {
                index,
                inverse: false,
            } => images[*index].clone(),
            Expr::Gen {
                index,
                inverse: true,
            } => images[*index].inverse(),
            Expr::Seq(items) => Expr::seq(items.iter().map(|e| e.substitute(images))),
            Expr::Pow(base, n) => base.substitute(images).pow(*n),
        }
    }

    pub fn max_generator(&self) -> Option<usize> {
        match self {
            Expr::Gen { index, .. } => Some(*index),
            Expr::Seq(items) => items.iter().filter_map(Expr::max_generator).max(),
            Expr::Pow(base, _) => base.max_generator(),
        }
    }
}

fn push_factor(out: &mut Vec<Expr>, e: Expr) {
    if let Expr::Seq(inner) = e {
        for x in inner {
            push_factor(out, x);
        }
        return;
    }
    let (base, n) = e.split_power();
    if let Some(last) = out.last() {
        let (prev, m) = last.clone().split_power();
        if prev == base {
            out.pop();
            push_factor(out, base.pow(m + n));
            return;
        }
    }
    out.push(base.pow(n));
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen { index, inverse } => {
                write!(f, "{}{index}", if *inverse { 'X' } else { 'x' })
            }
            Expr::Seq(items) if items.is_empty() => f.write_str("1"),
            Expr::Seq(items) => items.iter().try_for_each(|e| write!(f, "{e}")),
            Expr::Pow(base, n) => write!(f, "({base})^{n}"),
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos + 1, message)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self, signed: bool) -> Result<i64> {
        let start = self.pos;
        if signed && self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.err("expected a number")
        })
    }

    fn product(&mut self, nested: bool) -> Result<Expr> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Some(c @ ('x' | 'X')) => {
                    self.pos += 1;
                    let index = self.number(false)?;
                    items.push(Expr::gen(index as usize, c == 'X'));
                }
                Some('(') => {
                    self.pos += 1;
                    let inner = self.product(true)?;
                    if self.peek() != Some(')') {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    if self.peek() != Some('^') {
                        return Err(self.err("expected '^' after ')'"));
                    }
                    self.pos += 1;
                    let n = self.number(true)?;
                    items.push(inner.pow(n));
                }
                Some(')') if nested => break,
                None => break,
                Some(c) => return Err(self.err(format!("unexpected '{c}'"))),
            }
        }
        if items.is_empty() {
            return Err(self.err("empty product"));
        }
        Ok(Expr::seq(items))
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        if s == "1" {
            return Ok(Expr::identity());
        }
        let mut p = Parser {
            chars: s.chars().collect(),
            pos: 0,
            _src: s,
        };
        p.product(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normal_form() {
        let x0 = Expr::gen(0, false);
        assert_eq!(x0.clone().pow(-1), Expr::gen(0, true));
        assert_eq!(x0.clone().pow(2).pow(3), x0.clone().pow(6));
        assert_eq!(Expr::gen(1, true).pow(2).to_string(), "(x1)^-2");
        assert!(Expr::seq([x0.clone(), Expr::identity()]) == x0);
        assert_eq!(Expr::identity().to_string(), "1");
    }

    #[test]
    fn parse_examples() {
        let e: Expr = "(x0x1)^4X2".parse().unwrap();
        assert_eq!(e.to_string(), "(x0x1)^4X2");
        assert_eq!(e.evaluate().len(), 9);
        assert_eq!(e.max_generator(), Some(2));
        assert!(matches!(
            "x0y".parse::<Expr>(),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!("(x0".parse::<Expr>().is_err());
        assert!("(x0)".parse::<Expr>().is_err());
        assert!("".parse::<Expr>().is_err());
    }

    #[test]
    fn from_word_compresses_runs() {
        let w: Word = [0, 0, 0, 3, 0]
            .iter()
            .map(|&i| Letter::from_index(i))
            .collect();
        assert_eq!(Expr::from_word(&w).to_string(), "(x0)^3X1x0");
        let p = Expr::seq([x01().pow(2), x01().pow(-4), x01().pow(2)]);
        assert!(p.is_identity());
        assert_eq!(
            Expr::seq([Expr::gen(0, false), Expr::gen(0, true), Expr::gen(1, false)]).to_string(),
            "x1"
        );
        assert_eq!(Expr::from_word(&w).evaluate(), w);
    }

    fn x01() -> Expr {
        Expr::seq([Expr::gen(0, false), Expr::gen(1, false)])
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = (0usize..4, any::<bool>()).prop_map(|(i, inv)| Expr::gen(i, inv));
        leaf.prop_recursive(4, 32, 4, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 0..4).prop_map(Expr::seq),
                (inner, -5i64..6).prop_map(|(e, n)| e.pow(n)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let text = e.to_string();
            let back: Expr = text.parse().unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn inverse_evaluates_to_inverse_word(e in arb_expr()) {
            prop_assert_eq!(e.inverse().evaluate(), e.evaluate().inverse());
        }

        #[test]
        fn substitution_commutes_with_evaluation(e in arb_expr(), images in proptest::collection::vec(arb_expr(), 4)) {
            let rule: Vec<Word> = images.iter().map(Expr::evaluate).collect();
            prop_assert_eq!(e.substitute(&images).evaluate(), e.evaluate().substitute(&rule));
        }
    }
}
