//! The engine against the stand-alone model on random words.

mod common;

use common::*;
use proptest::prelude::*;
use wreath_core::{basilica, norm, Element, Vertex};

fn el(x: &[u8]) -> Element {
    basilica::parse(std::str::from_utf8(x).unwrap()).unwrap()
}

fn ow(g: &Element) -> W {
    w(&g.to_string())
}

fn word(max: usize) -> impl Strategy<Value = W> {
    proptest::collection::vec(
        prop_oneof![Just(b'a'), Just(b'A'), Just(b'b'), Just(b'B')],
        0..max,
    )
    .prop_map(|x| reduce(&x))
}

fn vertex(max: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..2, 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sections_agree(g in word(24), x in 0u8..2) {
        let e = el(&g);
        prop_assert_eq!(e.root_perm().is_identity(), !swaps_root(&g));
        prop_assert!(equal(&ow(&e.section(x as usize).unwrap()), &section(&g, x)));
    }

    #[test]
    fn action_agrees(g in word(20), v in vertex(10)) {
        let e = el(&g);
        let image = e.act(&Vertex::from_letters(v.clone()));
        let expected = apply(&g, &v);
        prop_assert_eq!(image.letters(), expected.as_slice());
    }

    #[test]
    fn word_problem_agrees(g in word(16), h in word(16)) {
        prop_assert_eq!(el(&g).equals(&el(&h)), equal(&g, &h));
        let r = mul(&g, &inverse(&g));
        prop_assert!(el(&r).is_trivial());
    }

    #[test]
    fn commutators_of_relator_shape_are_trivial(m in 0i64..4, k in 0usize..3) {
        let m = 2 * m + 1;
        let g = basilica::relator(m, k).unwrap();
        prop_assert!(trivial(&ow(&g)));
    }

    #[test]
    fn norm_is_at_most_word_length(g in word(9)) {
        let e = el(&g);
        let n = norm::norm(&e);
        prop_assert!(n <= g.len());
        let geodesic = Element::new(e.system(), norm::geodesic_rep(&e));
        prop_assert_eq!(geodesic.len(), n);
        prop_assert!(equal(&ow(&geodesic), &g));
    }

    #[test]
    fn heisenberg_images_agree(g in word(30)) {
        let (p, q, r) = heis(&g);
        prop_assert_eq!(basilica::heis_image(&el(&g)).unwrap(), wreath_core::HeisenbergElement::new(p, q, r));
    }
}

#[test]
fn balls_agree_to_radius_six() {
    let model = OracleBall::new(6);
    let engine = norm::ball(&basilica::system(), 6);
    assert_eq!(engine.sphere_sizes(), model.sphere_sizes());
    assert_eq!(engine.sphere_sizes(), [1, 4, 12, 36, 100, 268, 704]);
}
