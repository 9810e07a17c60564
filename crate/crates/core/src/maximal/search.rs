//! Searching for a vertex `U` with `H_U = B`.
//!
//! 1. `E1 ∈ H` with image `(1,1)`.
//! 2. Descent: `E2 = E1^{2^k}` fixes `v` with section `ab`.
//! 3. Generators of `H_v` from Schreier generators of `St_H(v)`.
//! 4. `E4 ∈ St_H(v)` whose section at `v` has image `(1,-1)`.
//! 5. Descent: `E5 = E4^{2^k'}` fixes `vv'` with section `b⁻¹a`.
//! 6. `E6 = E2^{2^|v'|}` has section `ab` or `ba` at `vv'`. With `ab`,
//!    `E6·E5` gives `a²` and `a² = (1, b²)`, `b² = (a, a)` yield `a` at
//!    `vv'11`; with `ba`, `E6·E5⁻¹` gives `b²` and so `a` at `vv'1`. A power
//!    of `E6` provides `ab` or `ba` at the same vertex, hence `b`.
//!
//! Every expression is kept over the generators of `H`.

use std::fmt;

use crate::basilica::{self, AbImage};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::maximal::certificate::{Budgets, ProdenseCertificate, StageRecord};
use crate::maximal::descent::{find_ab_with_budget, find_b_inv_a_with_budget, persist_ab, AbForm};
use crate::maximal::lattice::{solve_coset, CosetOutcome, LatticeDisplay};
use crate::permgrp::{projected_subgroup_capped, SubgroupHandle};
use crate::vertex::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureKind {
    NotInLattice(Vec<AbImage>),
    Budget(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureReport {
    pub stage: u8,
    pub kind: FailureKind,
    pub budgets: Budgets,
    /// Records of the stages that completed.
    pub trace: Vec<StageRecord>,
}

impl fmt::Display for FailureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "projection search failed: stage={}", self.stage)?;
        match &self.kind {
            FailureKind::NotInLattice(basis) => write!(f, " lattice={}", LatticeDisplay(basis))?,
            FailureKind::Budget(msg) => write!(f, " budget: {msg}")?,
        }
        write!(f, "\nbudgets {}", self.budgets)?;
        for s in &self.trace {
            write!(f, "\nstage {s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Certificate(ProdenseCertificate),
    Failure(FailureReport),
}

struct Run {
    budgets: Budgets,
    trace: Vec<StageRecord>,
}

impl Run {
    fn fail(&mut self, stage: u8, kind: FailureKind) -> SearchOutcome {
        SearchOutcome::Failure(FailureReport {
            stage,
            kind,
            budgets: self.budgets,
            trace: std::mem::take(&mut self.trace),
        })
    }

    fn depth_ok(&self, v: &Vertex) -> bool {
        v.depth() <= self.budgets.max_depth
    }

    fn too_deep(&mut self, stage: u8, v: &Vertex) -> SearchOutcome {
        let msg = format!("vertex {v} is deeper than {}", self.budgets.max_depth);
        self.fail(stage, FailureKind::Budget(msg))
    }
}

fn budget_or(stage: u8, run: &mut Run, e: Error) -> Result<SearchOutcome> {
    match e {
        Error::Budget(msg) => Ok(run.fail(stage, FailureKind::Budget(msg))),
        other => Err(other),
    }
}

fn pow2(e: &Expr, k: usize) -> Expr {
    e.clone().pow(1i64 << k)
}

pub fn prodense_projection_search(h: &SubgroupHandle, budgets: Budgets) -> Result<SearchOutcome> {
    if !basilica::is_basilica(h.system()) {
        return Err(Error::precondition(
            "the projection search is defined for the Basilica system only",
        ));
    }
    let mut run = Run {
        budgets,
        trace: Vec::new(),
    };

    let e1 = match solve_coset(h, AbImage::new(1, 1))? {
        CosetOutcome::Solved(s) => s.expr,
        CosetOutcome::NotInLattice(basis) => {
            return Ok(run.fail(1, FailureKind::NotInLattice(basis)))
        }
    };
    run.trace
        .push(StageRecord::new(1, "coset").with("expr", &e1));

    let h1 = h.evaluate_expr(&e1)?;
    let d2 = match find_ab_with_budget(&h1, budgets.max_visited) {
        Ok(d) => d,
        Err(e) => return budget_or(2, &mut run, e),
    };
    let v = d2.vertex();
    if !run.depth_ok(&v) {
        return Ok(run.too_deep(2, &v));
    }
    let e2 = pow2(&e1, d2.exponent_log);
    run.trace.push(
        StageRecord::new(2, "find_ab")
            .with("vertex", &v)
            .with("k", d2.exponent_log)
            .with("visited", d2.visited),
    );

    let projected = projected_subgroup_capped(h, &v, budgets.max_schreier);
    run.trace.push(
        StageRecord::new(3, "schreier")
            .with("vertex", &v)
            .with("generators", projected.handle.len()),
    );

    let e4_local = match solve_coset(&projected.handle, AbImage::new(1, -1))? {
        CosetOutcome::Solved(s) => s.expr,
        CosetOutcome::NotInLattice(basis) => {
            return Ok(run.fail(4, FailureKind::NotInLattice(basis)))
        }
    };
    let images: Vec<Expr> = projected.witnesses.iter().map(Expr::from_word).collect();
    let e4 = e4_local.substitute(&images);
    run.trace
        .push(StageRecord::new(4, "coset").with("expr", &e4_local));

    let h4 = projected.handle.evaluate_expr(&e4_local)?;
    let d5 = match find_b_inv_a_with_budget(&h4, budgets.max_visited) {
        Ok(d) => d,
        Err(e) => return budget_or(5, &mut run, e),
    };
    let v2 = d5.vertex();
    let w = v.concat(&v2);
    if !run.depth_ok(&w) {
        return Ok(run.too_deep(5, &w));
    }
    let e5 = pow2(&e4, d5.exponent_log);
    run.trace.push(
        StageRecord::new(5, "find_b_inv_a")
            .with("vertex", &v2)
            .with("k", d5.exponent_log)
            .with("visited", d5.visited),
    );

    let (k6, form) = persist_ab(AbForm::Ab, &v2)?;
    let e6 = pow2(&e2, k6);
    let (e_a, tail) = match form {
        // ab · b⁻¹a = a²
        AbForm::Ab => (
            Expr::seq([e6.clone(), e5]),
            Vertex::from_letters(vec![1, 1]),
        ),
        // ba · (b⁻¹a)⁻¹ = b²
        AbForm::Ba => (
            Expr::seq([e6.clone(), e5.inverse()]),
            Vertex::from_letters(vec![1]),
        ),
    };
    let u = w.concat(&tail);
    if !run.depth_ok(&u) {
        return Ok(run.too_deep(6, &u));
    }
    let (k_end, end_form) = persist_ab(form, &tail)?;
    let e_ab = pow2(&e6, k_end);
    let e_b = match end_form {
        AbForm::Ab => Expr::seq([e_a.inverse(), e_ab]),
        AbForm::Ba => Expr::seq([e_ab, e_a.inverse()]),
    };
    run.trace.push(
        StageRecord::new(6, "persist")
            .with("form", form)
            .with("k", k6)
            .with("tail", &tail),
    );

    Ok(SearchOutcome::Certificate(ProdenseCertificate {
        engine: crate::ENGINE_VERSION.to_string(),
        subgroup: h.generators().iter().map(Element::to_string).collect(),
        budgets,
        stages: run.trace,
        vertex: u,
        expr_a: e_a,
        expr_b: e_b,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maximal::certificate::verify_certificate;

    fn handle(s: &str) -> SubgroupHandle {
        SubgroupHandle::parse(&basilica::system(), s).unwrap()
    }

    fn certificate(h: &SubgroupHandle) -> ProdenseCertificate {
        match prodense_projection_search(h, Budgets::default()).unwrap() {
            SearchOutcome::Certificate(c) => c,
            SearchOutcome::Failure(f) => panic!("{f}"),
        }
    }

    fn failure(h: &SubgroupHandle) -> FailureReport {
        match prodense_projection_search(h, Budgets::default()).unwrap() {
            SearchOutcome::Certificate(c) => panic!("unexpected certificate\n{c}"),
            SearchOutcome::Failure(f) => f,
        }
    }

    #[test]
    fn whole_group() {
        let h = handle("a,b");
        let cert = certificate(&h);
        assert!(cert.vertex.depth() <= 8);
        assert!(verify_certificate(&h, &cert).unwrap());
        let back = ProdenseCertificate::parse(&cert.to_text()).unwrap();
        assert_eq!(back.to_text(), cert.to_text());

        let mut truncated = cert.clone();
        truncated.vertex = truncated.vertex.parent().unwrap();
        assert!(!verify_certificate(&h, &truncated).unwrap());
    }

    #[test]
    fn failures() {
        let f = failure(&handle("ab"));
        assert_eq!(f.stage, 4);
        assert_eq!(f.kind, FailureKind::NotInLattice(vec![AbImage::new(1, 1)]));
        assert!(f
            .to_string()
            .starts_with("projection search failed: stage=4 lattice=(1,1)"));

        let f = failure(&handle("a"));
        assert_eq!(f.stage, 1);
        assert_eq!(f.kind, FailureKind::NotInLattice(vec![AbImage::new(1, 0)]));
    }

    #[test]
    fn depth_budget() {
        let h = handle("a,b");
        let tight = Budgets {
            max_depth: 0,
            ..Budgets::default()
        };
        match prodense_projection_search(&h, tight).unwrap() {
            SearchOutcome::Failure(f) => assert!(matches!(f.kind, FailureKind::Budget(_))),
            SearchOutcome::Certificate(c) => panic!("{c}"),
        }
    }
}
