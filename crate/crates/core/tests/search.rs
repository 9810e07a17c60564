//! The projection search over many small subgroups: every certificate must
//! replay in the model and survive a text round-trip; every failure must
//! name a lattice that really misses the required coset.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wreath_core::maximal::{
    prodense_projection_search, verify_certificate, Budgets, FailureKind, ProdenseCertificate,
    SearchOutcome,
};
use wreath_core::{basilica, AbImage, Expr, SubgroupHandle};

fn expand(e: &Expr, gens: &[W]) -> W {
    let letters: Vec<u8> = e
        .evaluate()
        .letters()
        .iter()
        .flat_map(|l| {
            let g = &gens[l.generator()];
            if l.is_inverse() {
                inverse(g)
            } else {
                g.clone()
            }
        })
        .collect();
    reduce(&letters)
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> String {
    let letters = ['a', 'A', 'b', 'B'];
    let mut s = String::new();
    while s.len() < len {
        let l = letters[rng.random_range(0..4)];
        let inv = if l.is_ascii_lowercase() {
            l.to_ascii_uppercase()
        } else {
            l.to_ascii_lowercase()
        };
        if !s.ends_with(inv) {
            s.push(l);
        }
    }
    s
}

fn in_lattice(basis: &[AbImage], t: AbImage) -> bool {
    (-30i64..=30).any(|x| {
        (-30i64..=30).any(|y| {
            let b0 = basis.first().copied().unwrap_or_default();
            let b1 = basis.get(1).copied().unwrap_or_default();
            AbImage::new(x * b0.s + y * b1.s, x * b0.t + y * b1.t) == t
        })
    })
}

#[test]
fn random_subgroups() {
    let sys = basilica::system();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut certified, mut failed) = (0, 0);
    for _ in 0..40 {
        let count = rng.random_range(1..=3);
        let gens: Vec<String> = (0..count)
            .map(|_| {
                let len = rng.random_range(1..=4);
                random_word(&mut rng, len)
            })
            .collect();
        let h = SubgroupHandle::parse(&sys, &gens.join(",")).unwrap();
        match prodense_projection_search(&h, Budgets::default()).unwrap() {
            SearchOutcome::Certificate(c) => {
                certified += 1;
                assert!(verify_certificate(&h, &c).unwrap(), "{gens:?}");
                let back = ProdenseCertificate::parse(&c.to_text()).unwrap();
                assert_eq!(back, c);
                let model_gens: Vec<W> = gens.iter().map(|g| w(g)).collect();
                let u = c.vertex.letters();
                for (e, target) in [(&c.expr_a, w("a")), (&c.expr_b, w("b"))] {
                    let x = expand(e, &model_gens);
                    assert_eq!(apply(&x, u), u, "{gens:?}");
                    assert!(equal(&section_at(&x, u), &target), "{gens:?}");
                }
            }
            SearchOutcome::Failure(f) => {
                failed += 1;
                match &f.kind {
                    FailureKind::NotInLattice(basis) if f.stage == 1 => {
                        assert!(!in_lattice(basis, AbImage::new(1, 1)), "{gens:?}");
                    }
                    FailureKind::NotInLattice(basis) => {
                        assert_eq!(f.stage, 4, "{gens:?}");
                        assert!(!in_lattice(basis, AbImage::new(1, -1)), "{gens:?}");
                    }
                    FailureKind::Budget(msg) => panic!("{gens:?}: {msg}"),
                }
            }
        }
    }
    assert!(
        certified > 0 && failed > 0,
        "certified {certified}, failed {failed}"
    );
}
