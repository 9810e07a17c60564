//! Projection certificates: two expressions over the generators of `H`
//! whose values fix a vertex `U` and have sections `a` and `b` there, so
//! that the projection `H_U` is the whole group.
//!
//! Text format, one field per line:
//!
//! ```text
//! projection-certificate
//! engine wreath-core 0.1.0
//! subgroup a,b
//! budgets visited=100000 schreier=64 depth=16
//! stage 1 coset expr=x0x1
//! ...
//! vertex 11
//! expr_a (x0x1)^4
//! expr_b ...
//! ```

use std::fmt;
use std::str::FromStr;

use crate::basilica;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::permgrp::SubgroupHandle;
use crate::vertex::Vertex;

pub const HEADER: &str = "projection-certificate";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Distinct states per descent search.
    pub max_visited: usize,
    /// Surviving Schreier generators per stabilizer.
    pub max_schreier: usize,
    /// Depth of any vertex the search may use.
    pub max_depth: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_visited: 100_000,
            max_schreier: 64,
            max_depth: 16,
        }
    }
}

impl fmt::Display for Budgets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "visited={} schreier={} depth={}",
            self.max_visited, self.max_schreier, self.max_depth
        )
    }
}

impl FromStr for Budgets {
    type Err = Error;

    fn from_str(s: &str) -> Result<Budgets> {
        let fields = parse_fields(s)?;
        let get = |key: &str| -> Result<usize> {
            let value = fields
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v)
                .ok_or_else(|| Error::input(format!("budgets lack '{key}'")))?;
            value
                .parse()
                .map_err(|_| Error::input(format!("budget {key}={value} is not a count")))
        };
        if fields.len() != 3 {
            return Err(Error::input(
                "budgets need exactly visited, schreier and depth",
            ));
        }
        Ok(Budgets {
            max_visited: get("visited")?,
            max_schreier: get("schreier")?,
            max_depth: get("depth")?,
        })
    }
}

fn parse_fields(s: &str) -> Result<Vec<(String, String)>> {
    s.split(' ')
        .filter(|f| !f.is_empty())
        .map(|f| {
            f.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::input(format!("expected key=value, got '{f}'")))
        })
        .collect()
}

/// What one stage of the search produced, as `key=value` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: u8,
    pub name: String,
    pub fields: Vec<(String, String)>,
}

impl StageRecord {
    pub fn new(stage: u8, name: &str) -> Self {
        StageRecord {
            stage,
            name: name.to_string(),
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for StageRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.stage, self.name)?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for StageRecord {
    type Err = Error;

    fn from_str(s: &str) -> Result<StageRecord> {
        let mut parts = s.splitn(3, ' ');
        let stage = parts
            .next()
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::input(format!("stage line '{s}' lacks a stage number")))?;
        let name = parts
            .next()
            .filter(|n| !n.is_empty() && !n.contains('='))
            .ok_or_else(|| Error::input(format!("stage line '{s}' lacks a name")))?;
        Ok(StageRecord {
            stage,
            name: name.to_string(),
            fields: parse_fields(parts.next().unwrap_or(""))?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProdenseCertificate {
    pub engine: String,
    /// Generators of `H`, as words of the system.
    pub subgroup: Vec<String>,
    pub budgets: Budgets,
    pub stages: Vec<StageRecord>,
    pub vertex: Vertex,
    pub expr_a: Expr,
    pub expr_b: Expr,
}

impl ProdenseCertificate {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for ProdenseCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}")?;
        writeln!(f, "engine {}", self.engine)?;
        writeln!(f, "subgroup {}", self.subgroup.join(","))?;
        writeln!(f, "budgets {}", self.budgets)?;
        for s in &self.stages {
            writeln!(f, "stage {s}")?;
        }
        writeln!(f, "vertex {}", self.vertex)?;
        writeln!(f, "expr_a {}", self.expr_a)?;
        writeln!(f, "expr_b {}", self.expr_b)
    }
}

fn field<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::input(format!("certificate ends before '{key}'")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' ').or((rest.is_empty()).then_some("")))
        .ok_or_else(|| Error::input(format!("expected '{key}', got '{line}'")))
}

fn expr_field(line: Option<&str>, key: &str) -> Result<Expr> {
    field(line, key)?
        .parse()
        .map_err(|e| Error::input(format!("{key}: {e}")))
}

impl FromStr for ProdenseCertificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().peekable();
        if lines.next() != Some(HEADER) {
            return Err(Error::input(format!(
                "certificate must start with '{HEADER}'"
            )));
        }
        let engine = field(lines.next(), "engine")?.to_string();
        let subgroup_line = field(lines.next(), "subgroup")?;
        let subgroup = if subgroup_line.is_empty() {
            Vec::new()
        } else {
            subgroup_line.split(',').map(str::to_string).collect()
        };
        let budgets = field(lines.next(), "budgets")?.parse()?;
        let mut stages = Vec::new();
        while let Some(rest) = lines.peek().and_then(|l| l.strip_prefix("stage ")) {
            stages.push(rest.parse()?);
            lines.next();
        }
        let vertex = Vertex::parse(field(lines.next(), "vertex")?, 2)
            .map_err(|e| Error::input(format!("vertex: {e}")))?;
        let expr_a = expr_field(lines.next(), "expr_a")?;
        let expr_b = expr_field(lines.next(), "expr_b")?;
        if let Some(extra) = lines.find(|l| !l.is_empty()) {
            return Err(Error::input(format!(
                "unexpected line after expr_b: '{extra}'"
            )));
        }
        Ok(ProdenseCertificate {
            engine,
            subgroup,
            budgets,
            stages,
            vertex,
            expr_a,
            expr_b,
        })
    }
}

/// Replays a certificate: both expressions must fix the vertex and have
/// sections `a` and `b` there. Nothing else from the certificate is trusted.
pub fn verify_certificate(h: &SubgroupHandle, cert: &ProdenseCertificate) -> Result<bool> {
    if !basilica::is_basilica(h.system()) {
        return Err(Error::precondition(
            "certificates are defined for the Basilica system only",
        ));
    }
    let words: Vec<String> = h.generators().iter().map(|g| g.to_string()).collect();
    let matches = words.len() == cert.subgroup.len()
        && h.generators()
            .iter()
            .zip(&cert.subgroup)
            .all(|(g, s)| h.system().parse_word(s).is_ok_and(|w| &w == g.word()));
    if !matches {
        return Err(Error::input(format!(
            "certificate is for subgroup ⟨{}⟩, not ⟨{}⟩",
            cert.subgroup.join(","),
            words.join(",")
        )));
    }
    let u = &cert.vertex;
    for (e, target) in [(&cert.expr_a, basilica::a()), (&cert.expr_b, basilica::b())] {
        let g = h.evaluate_expr(e)?;
        if !g.fixes(u) || !g.section_at(u)?.equals(&target) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ProdenseCertificate {
        ProdenseCertificate {
            engine: crate::ENGINE_VERSION.to_string(),
            subgroup: vec!["a".into(), "b".into()],
            budgets: Budgets::default(),
            stages: vec![StageRecord::new(1, "coset").with("expr", "x0x1")],
            vertex: Vertex::root(),
            expr_a: "x0".parse().unwrap(),
            expr_b: "x1".parse().unwrap(),
        }
    }

    #[test]
    fn text_round_trip() {
        let cert = sample();
        let text = cert.to_text();
        assert!(text.starts_with("projection-certificate\nengine wreath-core "));
        assert!(text.contains("\nvertex ε\n"));
        let back = ProdenseCertificate::parse(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn malformed_input() {
        let text = sample().to_text();
        assert!(ProdenseCertificate::parse(&text.replace("expr_b x1", "expr_b y1")).is_err());
        assert!(
            ProdenseCertificate::parse(&text.replace("budgets visited", "budgets seen")).is_err()
        );
        assert!(ProdenseCertificate::parse("").is_err());
        assert!(ProdenseCertificate::parse(&format!("{text}extra\n")).is_err());
    }

    #[test]
    fn trivial_certificate_for_the_whole_group() {
        let h = SubgroupHandle::full(&basilica::system());
        assert!(verify_certificate(&h, &sample()).unwrap());
        let mut swapped = sample();
        std::mem::swap(&mut swapped.expr_a, &mut swapped.expr_b);
        assert!(!verify_certificate(&h, &swapped).unwrap());
        let mut foreign = sample();
        foreign.expr_a = "x2".parse().unwrap();
        assert!(matches!(
            verify_certificate(&h, &foreign),
            Err(Error::Input(_))
        ));
        let other = SubgroupHandle::parse(&basilica::system(), "a,bb").unwrap();
        assert!(matches!(
            verify_certificate(&other, &sample()),
            Err(Error::Input(_))
        ));
    }
}
