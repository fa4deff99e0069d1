//! Property tests for the algebraic invariants that hold on all inputs, not
//! just the catalog examples.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use divlab_core::group::{centralizer, subgroup_closure, Subgroup};
use divlab_core::indexed::{
    enumerate_homs, enumerate_homs_baseline, enumerate_homs_seq, kernel_image, Constraint,
    IndexedPresentation,
};
use divlab_core::ring_eq::{homogeneity_check, parse::parse_system, RingSystem};
use divlab_core::specs::{build_group, build_ring, Bounds};
use divlab_core::word::Word;

use common::catalog;

fn sym4() -> Arc<divlab_core::group::FiniteGroup> {
    build_group("sym:4", &Bounds::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_idempotent_and_monotone(
        seed in proptest::collection::vec(0usize..24, 0..4),
        extra in 0usize..24,
    ) {
        let g = sym4();
        let h = subgroup_closure(&g, &seed).unwrap();
        let again = subgroup_closure(&g, h.elements()).unwrap();
        prop_assert_eq!(&h, &again);

        let mut bigger = seed.clone();
        bigger.push(extra);
        let k = subgroup_closure(&g, &bigger).unwrap();
        prop_assert!(k.contains_subgroup(&h));
    }

    #[test]
    fn centralizer_intersects_pointwise(
        set in proptest::collection::vec(0usize..24, 0..4),
    ) {
        let g = sym4();
        let joint = centralizer(&g, &set).unwrap();
        for x in 0..g.order() {
            let everywhere = set
                .iter()
                .all(|&s| centralizer(&g, &[s]).unwrap().contains(x));
            prop_assert_eq!(joint.contains(x), everywhere);
        }
    }

    #[test]
    fn word_degree_is_additive_and_evaluation_multiplicative(
        a in proptest::collection::vec((0usize..2, -3i64..=3), 1..5),
        b in proptest::collection::vec((0usize..2, -3i64..=3), 1..5),
        images in proptest::collection::vec(0usize..24, 2),
    ) {
        let a: Vec<(usize, i64)> = a.into_iter().filter(|&(_, e)| e != 0).collect();
        let b: Vec<(usize, i64)> = b.into_iter().filter(|&(_, e)| e != 0).collect();
        let wa = Word::from_letters(a);
        let wb = Word::from_letters(b);
        let degrees = vec![3i64, -2];
        prop_assert_eq!(
            wa.concat(&wb).degree(&degrees),
            wa.degree(&degrees) + wb.degree(&degrees)
        );
        let g = sym4();
        prop_assert_eq!(
            wa.concat(&wb).evaluate(&g, &images),
            g.mul(wa.evaluate(&g, &images), wb.evaluate(&g, &images))
        );
    }

    #[test]
    fn homogeneity_invariant_under_permutation(
        perm_seed in 0u64..1000,
    ) {
        let ring = build_ring("zmod:10", &Bounds::default()).unwrap();
        let mut constants = BTreeMap::new();
        constants.insert("c".to_string(), ring.parse_elem("3").unwrap());
        let system = parse_system(
            &ring,
            3,
            &constants,
            &[
                "x0^2*c + x1*x0 - x2^2 = 0".to_string(),
                "x0*x1 - x1*x0 = 0".to_string(),
            ],
        ).unwrap();
        // permute equations and monomials deterministically from the seed
        let mut equations = system.equations.clone();
        if perm_seed % 2 == 1 {
            equations.reverse();
        }
        for (i, eq) in equations.iter_mut().enumerate() {
            if (perm_seed >> i) % 2 == 1 {
                eq.monomials.reverse();
            }
        }
        let permuted = RingSystem::new(3, equations).unwrap();
        prop_assert_eq!(
            homogeneity_check(&system).is_some(),
            homogeneity_check(&permuted).is_some()
        );
    }
}

#[test]
fn enumeration_paths_agree_everywhere() {
    // pruned, baseline, sequential and parallel engines return the same
    // lexicographically ordered list on every catalog group
    let commutator = Word::from_letters(vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
    for (spec, g) in catalog() {
        if g.order() > 12 {
            continue;
        }
        let p = IndexedPresentation::new(
            vec!["x0".into(), "x1".into()],
            vec![commutator.clone()],
            vec![],
            None,
        )
        .unwrap();
        for constraints in [
            vec![],
            vec![Constraint::Surjective],
            vec![Constraint::SubsetInSubgroup {
                words: vec![Word::generator(1)],
                subgroup: Subgroup::trivial(&g),
            }],
        ] {
            let fast = enumerate_homs(&p, &g, &constraints).unwrap();
            let seq = enumerate_homs_seq(&p, &g, &constraints).unwrap();
            let base = enumerate_homs_baseline(&p, &g, &constraints).unwrap();
            assert_eq!(fast, seq, "{spec}");
            assert_eq!(fast, base, "{spec}");
            for w in fast.windows(2) {
                assert!(w[0].images() < w[1].images(), "{spec} order");
            }
        }
    }
}

#[test]
fn kernel_image_is_normal_with_cyclic_quotient() {
    // the degree-kernel image is normal in the full image, and the quotient
    // embeds in the cyclic group generated by the degree-one image
    let commutator = Word::from_letters(vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
    for (spec, g) in catalog() {
        let presentations = vec![
            IndexedPresentation::free(2).unwrap(),
            IndexedPresentation::new(
                vec!["x0".into(), "x1".into()],
                vec![commutator.clone()],
                vec![],
                None,
            )
            .unwrap(),
        ];
        for p in presentations {
            let t_word = p.degree_one_word();
            for hom in enumerate_homs(&p, &g, &vec![]).unwrap().iter().step_by(3) {
                let image = hom.image_subgroup();
                let kernel = kernel_image(hom);
                assert!(image.contains_subgroup(&kernel), "{spec}");
                for &k in kernel.elements() {
                    for &m in image.elements() {
                        assert!(kernel.contains(g.conj(k, m)), "{spec} normality");
                    }
                }
                let quotient = image.order() / kernel.order();
                let t_ord = g.element_order(hom.evaluate(&t_word));
                assert_eq!(t_ord % quotient as u64, 0, "{spec} cyclic quotient");
            }
        }
    }
}
