//! A self-check report: the section identities, relators, commutator and
//! quotient identities, length properties of geodesics, descent totality
//! and the projection search, each recomputed by the engine.
//!
//! The section, relator, free-semigroup and commutator suites read `a` and
//! `b` as generators 0 and 1 of whatever binary system they are given, so a
//! system with the tuple convention flipped fails the section suite. The
//! remaining suites need the Basilica system itself.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basilica::{self, ab_image, bprime_coords, heis_image, AbImage, BPrimeCoords};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::heisenberg::HeisenbergElement;
use crate::maximal::{
    find_ab, find_b_inv_a, persist_ab, prodense_projection_search, verify_certificate, AbForm,
    Budgets, CosetClass, FailureKind, SearchOutcome,
};
use crate::norm::{self, Ball, FINGERPRINT_DEPTH};
use crate::permgrp::{
    group_order, level_quotient_equals_full, orbit, projected_subgroup,
    stabilizer_generators_capped, SubgroupHandle,
};
use crate::system::GeneratorSystem;
use crate::vertex::Vertex;
use crate::word::{Letter, Word};

pub const SUITES: &[&str] = &[
    "psi",
    "relators",
    "free-semigroup",
    "commutators",
    "quotients",
    "lengths",
    "descent",
    "persist",
    "lifts",
    "permgrp",
    "search",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub id: String,
    /// The statement being checked.
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub engine: String,
    pub seed: u64,
    pub entries: Vec<CheckEntry>,
    pub passed: usize,
    pub failed: usize,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("engine {}\nseed {}\n", self.engine, self.seed);
        for e in &self.entries {
            let _ = write!(out, "{}\t{}\t{}", e.status, e.id, e.anchor);
            if !e.detail.is_empty() {
                let _ = write!(out, "\t{}", e.detail);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "summary passed={} failed={}", self.passed, self.failed);
        out
    }
}

type Outcome = Result<(bool, String)>;

fn pass() -> Outcome {
    Ok((true, String::new()))
}

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    Ok((ok, detail.into()))
}

struct Runner {
    entries: Vec<CheckEntry>,
}

impl Runner {
    fn check(&mut self, id: &str, anchor: &str, f: impl FnOnce() -> Outcome) {
        let (status, detail) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.entries.push(CheckEntry {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            detail,
        });
    }
}

/// Runs the selected suites (all when `only` is empty) in a fixed order.
pub fn run_checks(
    system: &Arc<GeneratorSystem>,
    only: &[String],
    seed: u64,
) -> Result<CheckReport> {
    if let Some(unknown) = only.iter().find(|s| !SUITES.contains(&s.as_str())) {
        return Err(Error::input(format!(
            "unknown suite '{unknown}'; suites are {}",
            SUITES.join(", ")
        )));
    }
    let mut r = Runner {
        entries: Vec::new(),
    };
    for (i, &suite) in SUITES.iter().enumerate() {
        if !only.is_empty() && !only.iter().any(|s| s == suite) {
            continue;
        }
        // independent of which other suites run
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(i as u64));
        match suite {
            "psi" => psi_suite(&mut r, system),
            "relators" => relator_suite(&mut r, system, &mut rng),
            "free-semigroup" => free_semigroup_suite(&mut r, system),
            "commutators" => commutator_suite(&mut r, system),
            _ if !basilica::is_basilica(system) => {
                r.check(suite, "suite needs the Basilica system", || {
                    Err(Error::precondition(
                        "the loaded system is not the Basilica system",
                    ))
                })
            }
            "quotients" => quotient_suite(&mut r, &mut rng),
            "lengths" => length_suite(&mut r),
            "descent" => descent_suite(&mut r),
            "persist" => persist_suite(&mut r),
            "lifts" => lift_suite(&mut r, &mut rng),
            "permgrp" => permgrp_suite(&mut r),
            "search" => search_suite(&mut r),
            _ => unreachable!(),
        }
    }
    let passed = r
        .entries
        .iter()
        .filter(|e| e.status == Status::Pass)
        .count();
    Ok(CheckReport {
        engine: crate::ENGINE_VERSION.to_string(),
        seed,
        failed: r.entries.len() - passed,
        passed,
        entries: r.entries,
    })
}

/// `a`, `b` of a system with at least two generators on a binary tree.
fn pair(system: &Arc<GeneratorSystem>) -> Result<(Element, Element)> {
    if system.alphabet() != 2 || system.generator_count() < 2 {
        return Err(Error::precondition(
            "suite needs a binary system with two generators",
        ));
    }
    Ok((Element::generator(system, 0), Element::generator(system, 1)))
}

fn describe(g: &Element) -> String {
    let s = g.sections();
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("root={} sections=({})", g.root_perm(), parts.join(", "))
}

/// Checks `g = σ^flip (left, right)`.
fn psi_is(g: &Element, flip: bool, left: &Element, right: &Element) -> Outcome {
    let secs = g.sections();
    let ok = g.root_perm().is_identity() != flip && secs[0].equals(left) && secs[1].equals(right);
    verdict(ok, if ok { String::new() } else { describe(g) })
}

fn psi_suite(r: &mut Runner, system: &Arc<GeneratorSystem>) {
    let ab = pair(system);
    let run = |f: &dyn Fn(&Element, &Element) -> Outcome| -> Outcome {
        let (a, b) = ab.clone()?;
        f(&a, &b)
    };
    let alpha = |a: &Element, b: &Element, s: i64, t: i64| a.pow(s).commutator(&b.pow(t));
    let one = |a: &Element| Element::identity(a.system());

    r.check(
        "psi.alpha11",
        "ψ₁(α_{1,1}) = (a⁻¹ba, b⁻¹)",
        || run(&|a, b| psi_is(&alpha(a, b, 1, 1), false, &b.conjugate_by(a), &b.inverse())),
    );
    r.check("psi.alpha1-1", "ψ₁(α_{1,-1}) = (b, b⁻¹)", || {
        run(&|a, b| psi_is(&alpha(a, b, 1, -1), false, b, &b.inverse()))
    });
    r.check(
        "psi.alpha12",
        "ψ₁(α_{1,2}) = (1, α_{1,1}⁻¹)",
        || {
            run(&|a, b| {
                psi_is(
                    &alpha(a, b, 1, 2),
                    false,
                    &one(a),
                    &alpha(a, b, 1, 1).inverse(),
                )
            })
        },
    );
    r.check("psi.b2", "b² = (a, a)", || {
        run(&|a, b| psi_is(&b.pow(2), false, a, a))
    });
    r.check("psi.a2", "a² = (1, b²)", || {
        run(&|a, b| psi_is(&a.pow(2), false, &one(a), &b.pow(2)))
    });
    r.check("psi.ab", "ab = σ(ba, 1)", || {
        run(&|a, b| psi_is(&a.mul(b), true, &b.mul(a), &one(a)))
    });
    r.check("psi.ab-squared", "(ab)² = (ba, ba)", || {
        run(&|a, b| psi_is(&a.mul(b).pow(2), false, &b.mul(a), &b.mul(a)))
    });
    r.check("psi.ba-squared", "(ba)² = (ba, ab)", || {
        run(&|a, b| psi_is(&b.mul(a).pow(2), false, &b.mul(a), &a.mul(b)))
    });
    r.check(
        "psi.aB-inverse-squared",
        "(ab⁻¹)⁻² = (b⁻¹a, ab⁻¹)",
        || {
            run(&|a, b| {
                let g = a.mul(&b.inverse()).pow(-2);
                psi_is(&g, false, &b.inverse().mul(a), &a.mul(&b.inverse()))
            })
        },
    );
    r.check(
        "psi.b-ak-B",
        "b aᵏ b⁻¹ = (bᵏ, 1) for k in [-4, 4]",
        || {
            run(&|a, b| {
                for k in -4..=4 {
                    let (ok, d) = psi_is(
                        &a.pow(k).conjugate_by(&b.inverse()),
                        false,
                        &b.pow(k),
                        &one(a),
                    )?;
                    if !ok {
                        return verdict(false, format!("k={k}: {d}"));
                    }
                }
                pass()
            })
        },
    );
    r.check(
        "psi.BB-ak-bb",
        "b⁻² aᵏ b² = (1, a⁻¹ bᵏ a) for k in [-4, 4]",
        || {
            run(&|a, b| {
                for k in -4..=4 {
                    let g = a.pow(k).conjugate_by(&b.pow(2));
                    let (ok, d) = psi_is(&g, false, &one(a), &b.pow(k).conjugate_by(a))?;
                    if !ok {
                        return verdict(false, format!("k={k}: {d}"));
                    }
                }
                pass()
            })
        },
    );
}

/// A uniformly chosen freely reduced word of the given length.
pub fn random_reduced_word<R: Rng>(rng: &mut R, generators: usize, len: usize) -> Word {
    let mut w = Word::empty();
    while w.len() < len {
        let l = Letter::from_index(rng.random_range(0..2 * generators));
        if w.letters().last() != Some(&l.inverse()) {
            w.push(l);
        }
    }
    w
}

fn relator_suite(r: &mut Runner, system: &Arc<GeneratorSystem>, rng: &mut ChaCha8Rng) {
    let ab = pair(system);
    for m in [1i64, 3, 5, 7] {
        for k in 0..4usize {
            let id = format!("relators.m{m}.k{k}");
            let anchor = format!("λ^{k}(τ_{m}) = 1 with τ_m = [b⁻ᵐabᵐ, a], λ: a ↦ b², b ↦ a");
            r.check(&id, &anchor, || {
                let (a, b) = ab.clone()?;
                let mut g = a.conjugate_by(&b.pow(m)).commutator(&a);
                let rule = basilica::lambda();
                for _ in 0..k {
                    g = g.substitute(&rule)?;
                }
                verdict(g.is_trivial(), format!("length {}", g.len()))
            });
        }
    }
    r.check(
        "relators.random-nontrivial",
        "50 random words of length ≤ 12 acting nontrivially on level 12 are nontrivial",
        || {
            let (a, _) = ab.clone()?;
            let sys = a.system();
            let mut tested = 0;
            while tested < 50 {
                let len = rng.random_range(1..=12);
                let g = Element::new(sys, random_reduced_word(rng, 2, len));
                if g.level_perm(12).is_identity() {
                    continue;
                }
                tested += 1;
                if g.is_trivial() {
                    return verdict(false, format!("{g} reported trivial"));
                }
            }
            verdict(true, format!("{tested} words"))
        },
    );
}

fn positive_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0..(1u32 << len) {
            out.push(
                (0..len)
                    .map(|i| Letter::new(((bits >> (len - 1 - i)) & 1) as usize, false))
                    .collect(),
            );
        }
    }
    out
}

fn free_semigroup_suite(r: &mut Runner, system: &Arc<GeneratorSystem>) {
    r.check(
        "free-semigroup.length10",
        "the 2046 positive words of length 1..10 in a, b are pairwise distinct",
        || {
            pair(system)?;
            let words = positive_words(10);
            let mut buckets: std::collections::HashMap<Vec<u32>, Vec<Element>> = Default::default();
            let mut comparisons = 0usize;
            for w in words {
                let g = Element::new(system, w);
                let bucket = buckets
                    .entry(g.level_perm(FINGERPRINT_DEPTH).images().to_vec())
                    .or_default();
                for h in bucket.iter() {
                    comparisons += 1;
                    if h.equals(&g) {
                        return verdict(false, format!("{h} = {g}"));
                    }
                }
                bucket.push(g);
            }
            verdict(
                true,
                format!("{comparisons} exact comparisons after fingerprinting"),
            )
        },
    );
}

fn commutator_suite(r: &mut Runner, system: &Arc<GeneratorSystem>) {
    let ab = pair(system);
    let sweep = |f: &dyn Fn(&Element, &Element, i64, i64) -> bool| -> Outcome {
        let (a, b) = ab.clone()?;
        for s in -3..=3 {
            for t in -3..=3 {
                if !f(&a, &b, s, t) {
                    return verdict(false, format!("s={s} t={t}"));
                }
            }
        }
        verdict(true, "49 cases")
    };
    let alpha = |a: &Element, b: &Element, s: i64, t: i64| a.pow(s).commutator(&b.pow(t));
    r.check(
        "commutators.odd",
        "α_{s,2t+1} = (α_{1,1}(α_{1,-1}⁻¹α_{1,1})^t)^s for s, t in [-3, 3]",
        || {
            sweep(&|a, b, s, t| {
                let a11 = alpha(a, b, 1, 1);
                let rhs = a11
                    .mul(&alpha(a, b, 1, -1).inverse().mul(&a11).pow(t))
                    .pow(s);
                alpha(a, b, s, 2 * t + 1).equals(&rhs)
            })
        },
    );
    r.check(
        "commutators.even",
        "α_{s,2t} = α_{1,1}^{s-1}(α_{1,2}^t α_{1,1}⁻¹)^{s-1} α_{1,2}^t for s, t in [-3, 3]",
        || {
            sweep(&|a, b, s, t| {
                let (a11, a12) = (alpha(a, b, 1, 1), alpha(a, b, 1, 2));
                let rhs = a11
                    .pow(s - 1)
                    .mul(&a12.pow(t).mul(&a11.inverse()).pow(s - 1))
                    .mul(&a12.pow(t));
                alpha(a, b, s, 2 * t).equals(&rhs)
            })
        },
    );
    r.check(
        "commutators.power",
        "α_{s,2t+1} = α_{1,2t+1}^s for s, t in [-3, 3]",
        || sweep(&|a, b, s, t| alpha(a, b, s, 2 * t + 1).equals(&alpha(a, b, 1, 2 * t + 1).pow(s))),
    );
}

fn bprime_word(l: i64, m: i64, n: i64) -> Element {
    let alpha = basilica::alpha;
    alpha(1, 1)
        .pow(l)
        .mul(&alpha(1, -1).pow(m))
        .mul(&alpha(1, 2).pow(n))
}

fn quotient_suite(r: &mut Runner, rng: &mut ChaCha8Rng) {
    let (a, b) = (basilica::a(), basilica::b());
    let c = a.commutator(&b);
    type H = HeisenbergElement;
    r.check(
        "quotients.heis-relators",
        "[[a,b],a] and [[a,b],b] map to 1 in H₃(Z)",
        || {
            verdict(
                heis_image(&c.commutator(&a))?.is_identity()
                    && heis_image(&c.commutator(&b))?.is_identity(),
                "",
            )
        },
    );
    r.check(
        "quotients.heis-homomorphism",
        "heis(gh) = heis(g) heis(h) for 300 random pairs",
        || {
            let sys = basilica::system();
            for _ in 0..300 {
                let len = rng.random_range(0..=10);
                let g = Element::new(&sys, random_reduced_word(rng, 2, len));
                let len = rng.random_range(0..=10);
                let h = Element::new(&sys, random_reduced_word(rng, 2, len));
                if heis_image(&g.mul(&h))? != heis_image(&g)? * heis_image(&h)? {
                    return verdict(false, format!("g={g} h={h}"));
                }
            }
            verdict(true, "300 pairs")
        },
    );
    r.check(
        "quotients.heis-sections",
        "section images: α_{1,1} ↦ (bc⁻¹, b⁻¹), α_{1,-1} ↦ (b, b⁻¹), α_{1,2} ↦ (1, c⁻¹)",
        || {
            let expect = [
                ((1, 1), H::B * H::C.inverse(), H::B.inverse()),
                ((1, -1), H::B, H::B.inverse()),
                ((1, 2), H::IDENTITY, H::C.inverse()),
            ];
            for ((s, t), h0, h1) in expect {
                let secs = basilica::alpha(s, t).sections();
                let got = (heis_image(&secs[0])?, heis_image(&secs[1])?);
                if got != (h0, h1) {
                    return verdict(false, format!("α_{{{s},{t}}}: ({}, {})", got.0, got.1));
                }
            }
            pass()
        },
    );
    r.check(
        "quotients.bprime-basis",
        "α_{1,1}, α_{1,-1}, α_{1,2} have coordinates (1,0,0), (0,1,0), (0,0,1)",
        || {
            let got = [
                bprime_coords(&basilica::alpha(1, 1))?,
                bprime_coords(&basilica::alpha(1, -1))?,
                bprime_coords(&basilica::alpha(1, 2))?,
            ];
            let want = [
                BPrimeCoords::new(1, 0, 0),
                BPrimeCoords::new(0, 1, 0),
                BPrimeCoords::new(0, 0, 1),
            ];
            verdict(got == want, format!("{} {} {}", got[0], got[1], got[2]))
        },
    );
    r.check(
        "quotients.bprime-round-trip",
        "α_{1,1}^l α_{1,-1}^m α_{1,2}^n has coordinates (l,m,n) for l, m, n in [-2, 2]",
        || {
            for l in -2..=2 {
                for m in -2..=2 {
                    for n in -2..=2 {
                        let got = bprime_coords(&bprime_word(l, m, n))?;
                        if got != BPrimeCoords::new(l, m, n) {
                            return verdict(false, format!("({l},{m},{n}) ↦ {got}"));
                        }
                    }
                }
            }
            verdict(true, "125 cases")
        },
    );
    r.check(
        "quotients.bprime-well-defined",
        "coordinates are unchanged by factors from B''",
        || {
            let x = bprime_word(1, -1, 2);
            let b2 = [
                basilica::alpha(1, 1).commutator(&basilica::alpha(1, -1)),
                basilica::alpha(1, 2).commutator(&basilica::alpha(2, 1)),
                bprime_word(0, 1, 1).commutator(&bprime_word(2, 0, -1)),
            ];
            for z in &b2 {
                if bprime_coords(&x.mul(z))? != bprime_coords(&x)? {
                    return verdict(false, format!("factor {z}"));
                }
            }
            pass()
        },
    );
    r.check(
        "quotients.second-derived-sections",
        "ψ₁([α_{1,1}, α_{1,-1}]) = ([[b,a],b], 1) and ψ₁([α_{1,1}, α_{1,2}]) = (1, [[b,a],b⁻¹]⁻¹)",
        || {
            let one = Element::identity(&basilica::system());
            let ba = b.commutator(&a);
            let (ok1, d1) = psi_is(
                &basilica::alpha(1, 1).commutator(&basilica::alpha(1, -1)),
                false,
                &ba.commutator(&b),
                &one,
            )?;
            let (ok2, d2) = psi_is(
                &basilica::alpha(1, 1).commutator(&basilica::alpha(1, 2)),
                false,
                &one,
                &ba.commutator(&b.inverse()).inverse(),
            )?;
            verdict(ok1 && ok2, format!("{d1}{d2}"))
        },
    );
}

fn norm_in(ball: &Ball, g: &Element) -> Option<usize> {
    ball.find(g).map(|c| c.norm())
}

/// Whether `w` contains `x yᵏ z` with `k ≥ 1` for the letter `y` or its
/// inverse, where `x` and `z` are given as strings of letters.
fn has_pattern(w: &str, x: &str, z: &str) -> bool {
    let bytes = w.as_bytes();
    (0..bytes.len()).any(|i| {
        if !w[i..].starts_with(x) {
            return false;
        }
        let start = i + x.len();
        let Some(&first) = bytes.get(start) else {
            return false;
        };
        if first != b'a' && first != b'A' {
            return false;
        }
        let end = (start..bytes.len())
            .find(|&j| bytes[j] != first)
            .unwrap_or(bytes.len());
        w[end..].starts_with(z)
    })
}

fn length_suite(r: &mut Runner) {
    const RADIUS: usize = 8;
    let sys = basilica::system();
    let geometry = norm::Geometry::for_system(&sys);
    geometry.ensure_radius(RADIUS);
    geometry.with_ball(RADIUS, |ball| {
        let within = |c: &crate::norm::BallClass| c.norm() <= RADIUS;
        let section_sum = |g: &Element| -> Option<usize> {
            let s = g.sections();
            Some(norm_in(ball, &s[0])? + norm_in(ball, &s[1])?)
        };
        r.check(
            "lengths.section-sum",
            "|g₀| + |g₁| ≤ |g| for every g in the ball of radius 8",
            || {
                for c in ball.classes().iter().filter(|c| within(c)) {
                    if section_sum(c.element()).is_none_or(|s| s > c.norm()) {
                        return verdict(false, format!("g={}", c.element()));
                    }
                }
                verdict(
                    true,
                    format!(
                        "{} classes",
                        ball.classes().iter().filter(|c| within(c)).count()
                    ),
                )
            },
        );
        r.check(
            "lengths.square-sections",
            "both sections of g² have norm ≤ |g| when g has nontrivial root permutation, radius 8",
            || {
                for c in ball.classes().iter().filter(|c| within(c)) {
                    let g = c.element();
                    if g.root_perm().is_identity() {
                        continue;
                    }
                    for s in g.pow(2).sections() {
                        if norm_in(ball, &s).is_none_or(|n| n > c.norm()) {
                            return verdict(false, format!("g={g}"));
                        }
                    }
                }
                pass()
            },
        );
        let strict = |x: &'static str, z: &'static str| {
            move || -> Outcome {
                let mut matched = 0;
                for c in ball.classes().iter().filter(|c| within(c)) {
                    if !has_pattern(&c.element().to_string(), x, z) {
                        continue;
                    }
                    matched += 1;
                    if section_sum(c.element()).is_none_or(|s| s >= c.norm()) {
                        return verdict(false, format!("g={}", c.element()));
                    }
                }
                verdict(matched > 0, format!("{matched} geodesics matched"))
            }
        };
        r.check(
            "lengths.strict-b-ak-B",
            "|g₀| + |g₁| < |g| when the geodesic of g contains b aᵏ b⁻¹, radius 8",
            strict("b", "B"),
        );
        r.check(
            "lengths.strict-BB-ak-bb",
            "|g₀| + |g₁| < |g| when the geodesic of g contains b⁻² aᵏ b², radius 8",
            strict("BB", "bb"),
        );
        r.check(
            "lengths.growth",
            "ball sizes strictly increase up to radius 8",
            || {
                let g = ball.growth();
                verdict(
                    g.windows(2).take(RADIUS).all(|w| w[0] < w[1]),
                    format!("{:?}", &g[..=RADIUS]),
                )
            },
        );
    });
}

fn descent_suite(r: &mut Runner) {
    const RADIUS: usize = 7;
    let sys = basilica::system();
    let geometry = norm::Geometry::for_system(&sys);
    let (ab_class, ba_class): (Vec<Element>, Vec<Element>) = geometry.with_ball(RADIUS, |ball| {
        let pick = |target: AbImage| -> Vec<Element> {
            ball.classes()
                .iter()
                .filter(|c| c.norm() <= RADIUS && ab_image(c.element()).ok() == Some(target))
                .map(|c| c.element().clone())
                .collect()
        };
        (pick(AbImage::new(1, 1)), pick(AbImage::new(1, -1)))
    });
    let mut certs = Vec::new();
    r.check(
        "descent.find-ab",
        "find_ab succeeds and replays on every g of image (1,1) in the ball of radius 7",
        || {
            let mut max_visited = 0;
            for g in &ab_class {
                let c = find_ab(g)?;
                if !c.replay() {
                    return verdict(false, format!("g={g}"));
                }
                max_visited = max_visited.max(c.visited);
                certs.push(c);
            }
            verdict(
                true,
                format!("{} elements, at most {max_visited} states", ab_class.len()),
            )
        },
    );
    r.check(
        "descent.find-b-inv-a",
        "find_b_inv_a succeeds and replays on every g of image (1,-1) in the ball of radius 7",
        || {
            let mut max_visited = 0;
            for g in &ba_class {
                let c = find_b_inv_a(g)?;
                if !c.replay() {
                    return verdict(false, format!("g={g}"));
                }
                max_visited = max_visited.max(c.visited);
                certs.push(c);
            }
            verdict(
                true,
                format!("{} elements, at most {max_visited} states", ba_class.len()),
            )
        },
    );
    r.check(
        "descent.monotone",
        "norms are non-increasing along every descent",
        || {
            for c in &certs {
                let norms: Vec<usize> = c.trail.iter().map(norm::norm).collect();
                if norms.windows(2).any(|w| w[1] > w[0]) {
                    return verdict(false, format!("g={} norms {norms:?}", c.input));
                }
            }
            pass()
        },
    );
    r.check(
        "descent.classes",
        "descent states stay in ab B', or alternate between ab⁻¹ B' and a⁻¹b B'",
        || {
            for c in &certs {
                let mut class = CosetClass::from_image(ab_image(&c.input)?)?;
                for h in &c.trail {
                    if ab_image(h)? != class.image() {
                        return verdict(false, format!("g={} at {h}", c.input));
                    }
                    class = class.transition();
                }
            }
            pass()
        },
    );
    r.check(
        "descent.root-parity",
        "every descent state has nontrivial root permutation",
        || {
            let bad = certs
                .iter()
                .flat_map(|c| &c.trail)
                .find(|h| h.root_perm().is_identity());
            verdict(
                bad.is_none(),
                bad.map(|h| h.to_string()).unwrap_or_default(),
            )
        },
    );
}

fn persist_suite(r: &mut Runner) {
    r.check(
        "persist.table",
        "(ab)² = (ba, ba) and (ba)² = (ba, ab)",
        || {
            for form in [AbForm::Ab, AbForm::Ba] {
                let sq = form.element().pow(2);
                if !sq.root_perm().is_identity() {
                    return verdict(false, format!("{form}² moves level 1"));
                }
                for x in 0..2u8 {
                    if !sq.section(x as usize)?.equals(&form.step(x).element()) {
                        return verdict(false, format!("{form}² at {x}"));
                    }
                }
            }
            pass()
        },
    );
    r.check(
        "persist.replay",
        "ab^{2^|v|} has section ab or ba at v for all v of depth ≤ 4",
        || {
            for depth in 0..=4 {
                for v in Vertex::level(depth, 2) {
                    for start in [AbForm::Ab, AbForm::Ba] {
                        let (k, end) = persist_ab(start, &v)?;
                        let w = start.element().pow(1 << k);
                        if !w.fixes(&v) || !w.section_at(&v)?.equals(&end.element()) {
                            return verdict(false, format!("{start} at {v}"));
                        }
                    }
                }
            }
            pass()
        },
    );
}

/// Whether `r` fixes level `|v|`, has section `w` at `v` and trivial
/// sections elsewhere on that level.
pub fn rigid_support_ok(r: &Element, w: &Element, v: &Vertex) -> Result<bool> {
    if !r.level_perm(v.depth()).is_identity() {
        return Ok(false);
    }
    for u in Vertex::level(v.depth(), 2) {
        let s = r.section_at(&u)?;
        let ok = if &u == v { s.equals(w) } else { s.is_trivial() };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn lift_suite(r: &mut Runner, rng: &mut ChaCha8Rng) {
    r.check(
        "lifts.support",
        "lifts of 20 random w in B' of norm ≤ 6 to every vertex of depth ≤ 3 have section w there and trivial sections elsewhere on the level",
        || {
            let sys = basilica::system();
            let mut pool: Vec<Element> = norm::Geometry::for_system(&sys).with_ball(6, |ball| {
                ball.classes()
                    .iter()
                    .filter(|c| c.norm() > 0 && c.norm() <= 6)
                    .map(|c| c.element().clone())
                    .filter(|g| ab_image(g).is_ok_and(|i| i.is_zero()))
                    .collect()
            });
            pool.shuffle(rng);
            pool.truncate(20);
            for w in &pool {
                for depth in 0..=3 {
                    for v in Vertex::level(depth, 2) {
                        let lifted = basilica::lift_section(w, &v)?;
                        if !rigid_support_ok(&lifted, w, &v)? {
                            return verdict(false, format!("w={w} v={v}"));
                        }
                    }
                }
            }
            verdict(pool.len() == 20, format!("{} elements", pool.len()))
        },
    );
}

fn battery() -> Vec<SubgroupHandle> {
    let sys = basilica::system();
    ["a,b", "a", "b", "ab", "a,bb", "ab,bb", "b,aa", "aB,ba"]
        .iter()
        .map(|s| SubgroupHandle::parse(&sys, s).expect("fixed battery parses"))
        .collect()
}

fn permgrp_suite(r: &mut Runner) {
    r.check(
        "permgrp.level2-order",
        "the action on level 2 has order 8",
        || {
            let full = SubgroupHandle::full(&basilica::system());
            let order = group_order(&full.level_perms(2));
            verdict(order == 8u8.into(), order.to_string())
        },
    );
    r.check(
        "permgrp.orbit-stabilizer",
        "|orbit(v)| · |π_n(St_H(v))| = |π_n(H)| at n = |v| + 2 for |v| ≤ 3",
        || {
            for h in battery() {
                for depth in 0..=3 {
                    let n = depth + 2;
                    for v in Vertex::level(depth, 2) {
                        let stab: Vec<Element> = stabilizer_generators_capped(&h, &v, usize::MAX)
                            .into_iter()
                            .map(|s| s.element)
                            .collect();
                        let stab = SubgroupHandle::new(h.system(), stab)?;
                        let lhs = stab.level_order(n) * orbit(&h, &v).len();
                        if lhs != h.level_order(n) {
                            return verdict(false, format!("H=⟨{h}⟩ v={v}"));
                        }
                    }
                }
            }
            pass()
        },
    );
    r.check(
        "permgrp.self-replicating",
        "projections of ⟨a,b⟩ to vertices of depth ≤ 2 act on level 3 like the whole group",
        || {
            let h = SubgroupHandle::full(&basilica::system());
            for depth in 0..=2 {
                for v in Vertex::level(depth, 2) {
                    if !level_quotient_equals_full(&projected_subgroup(&h, &v).handle, 3) {
                        return verdict(false, format!("v={v}"));
                    }
                }
            }
            pass()
        },
    );
}

fn search_suite(r: &mut Runner) {
    let sys = basilica::system();
    r.check(
        "search.whole-group",
        "the projection search for ⟨a,b⟩ yields a certificate of depth ≤ 8 that verifies",
        || {
            let h = SubgroupHandle::full(&sys);
            match prodense_projection_search(&h, Budgets::default())? {
                SearchOutcome::Certificate(c) => {
                    let ok = c.vertex.depth() <= 8 && verify_certificate(&h, &c)?;
                    verdict(ok, format!("vertex {}", c.vertex))
                }
                SearchOutcome::Failure(f) => verdict(false, f.to_string()),
            }
        },
    );
    r.check(
        "search.cyclic",
        "the projection search for ⟨ab⟩ fails at stage 4 with lattice ⟨(1,1)⟩",
        || {
            let h = SubgroupHandle::parse(&sys, "ab")?;
            match prodense_projection_search(&h, Budgets::default())? {
                SearchOutcome::Failure(f) => verdict(
                    f.stage == 4 && f.kind == FailureKind::NotInLattice(vec![AbImage::new(1, 1)]),
                    f.to_string().lines().next().unwrap_or("").to_string(),
                ),
                SearchOutcome::Certificate(c) => {
                    verdict(false, format!("unexpected certificate at {}", c.vertex))
                }
            }
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns() {
        assert!(has_pattern("abaaB", "b", "B"));
        assert!(has_pattern("bAB", "b", "B"));
        assert!(!has_pattern("baAB", "b", "B"));
        assert!(!has_pattern("bB", "b", "B"));
        assert!(has_pattern("BBabb", "BB", "bb"));
        assert!(!has_pattern("BBbb", "BB", "bb"));
    }

    #[test]
    fn positive_word_count() {
        assert_eq!(positive_words(10).len(), 2046);
    }

    #[test]
    fn quick_suites_pass() {
        let only: Vec<String> = ["psi", "relators", "commutators", "persist", "search"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let report = run_checks(&basilica::system(), &only, 0).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn mirrored_convention_fails_the_section_suite() {
        let mirrored = GeneratorSystem::parse_definition(
            "alphabet 2\ngen a perm=0,1 sections=b,e\ngen b perm=1,0 sections=e,a\n",
        )
        .unwrap();
        let only = vec!["psi".to_string(), "relators".to_string()];
        let report = run_checks(&mirrored, &only, 0).unwrap();
        let failed: Vec<&str> = report
            .entries
            .iter()
            .filter(|e| e.status == Status::Fail)
            .map(|e| e.id.as_str())
            .collect();
        assert!(failed.iter().all(|id| id.starts_with("psi.")), "{failed:?}");
        assert!(failed.len() >= 5);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_checks(&basilica::system(), &["nope".to_string()], 0).is_err());
    }
}
