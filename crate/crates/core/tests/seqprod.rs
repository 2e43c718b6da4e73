mod common;

use common::{brute_big_pi, brute_pi, group, random_terms, seq};
use davenport_core::lattice::{big_pi, big_pi_upto, find_ordering, is_atom, is_product_one_free, pi_set};
use davenport_core::{Elem, FiniteGroup, DEFAULT_DP_BUDGET as B};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SMALL: &[&str] = &[
    "C:1", "C:2", "C:3", "C:4", "C:5", "C:6", "C:7", "C:8", "C:9", "C:10", "C:11", "C:12", "C:2x2",
    "C:2x4", "C:2x6", "C:3x3", "C:2x2x2", "D:6", "D:8", "D:10", "D:12", "MC:3,4,2", "MC:4,2,3",
];

const NONABELIAN: &[&str] = &["F:2,3", "D:8", "MC:3,4,2", "F:3,7", "ND:5", "M:3,3", "MC:8,2,3"];

fn brute_is_atom(g: &FiniteGroup, terms: &[Elem]) -> bool {
    if terms.is_empty() || !brute_pi(g, terms).contains(0) {
        return false;
    }
    let full = (1u32 << terms.len()) - 1;
    (1..full).all(|mask| {
        let pick = |m: u32| -> Vec<Elem> {
            (0..terms.len()).filter(|i| m >> i & 1 == 1).map(|i| terms[i]).collect()
        };
        !(brute_pi(g, &pick(mask)).contains(0) && brute_pi(g, &pick(full & !mask)).contains(0))
    })
}

#[test]
fn pi_matches_all_orderings_on_500_random_instances() {
    let groups: Vec<FiniteGroup> = SMALL.iter().map(|s| group(s)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let len = rng.gen_range(0..=7);
        let terms = random_terms(&mut rng, g.order(), len);
        let s = seq(g, &terms);
        let expected = if terms.is_empty() { [0].into_iter().collect() } else { brute_pi(g, &terms) };
        assert_eq!(pi_set(g, &s, B).unwrap(), expected, "{} {terms:?}", g.label());
        assert_eq!(big_pi(g, &s, B).unwrap(), brute_big_pi(g, &terms, usize::MAX), "{} {terms:?}", g.label());
        let m = rng.gen_range(1..=4);
        assert_eq!(big_pi_upto(g, &s, m, B).unwrap(), brute_big_pi(g, &terms, m));
        assert_eq!(is_atom(g, &s, B).unwrap(), brute_is_atom(g, &terms), "{} {terms:?}", g.label());
    }
}

#[test]
fn orderings_realize_their_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for spec in NONABELIAN {
        let g = group(spec);
        for _ in 0..50 {
            let len = rng.gen_range(1..=8);
            let terms = random_terms(&mut rng, g.order(), len);
            let s = seq(&g, &terms);
            for target in pi_set(&g, &s, B).unwrap().iter() {
                let o = find_ordering(&g, &s, target, B).unwrap().unwrap();
                assert_eq!(g.product(&o), target);
                assert_eq!(seq(&g, &o), s);
            }
        }
    }
}

fn group_and_terms() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..NONABELIAN.len()).prop_flat_map(|i| (Just(i), prop::collection::vec(any::<prop::sample::Index>(), 0..8)))
        .prop_map(|(i, idx)| {
            let n = group(NONABELIAN[i]).order();
            (i, idx.into_iter().map(|x| x.index(n)).collect())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn appending_a_term_contains_both_translates((gi, terms) in group_and_terms(), x in any::<prop::sample::Index>()) {
        let g = group(NONABELIAN[gi]);
        let x = x.index(g.order());
        let s = seq(&g, &terms);
        let p = pi_set(&g, &s, B).unwrap();
        let mut ext = s.clone();
        ext.push(x);
        let q = pi_set(&g, &ext, B).unwrap();
        prop_assert!(g.right_mul_set(&p, x).is_subset(&q));
        prop_assert!(g.left_mul_set(x, &p).is_subset(&q));
    }

    #[test]
    fn products_lie_in_one_commutator_coset((gi, terms) in group_and_terms()) {
        let g = group(NONABELIAN[gi]);
        let derived = g.commutator_subgroup();
        let p = pi_set(&g, &seq(&g, &terms), B).unwrap();
        let first = p.first().unwrap();
        for y in p.iter() {
            prop_assert!(derived.contains(g.mul(y, g.inv(first))));
        }
    }

    #[test]
    fn abelian_products_are_unique(spec in prop::sample::select(vec!["C:12", "C:2x6", "C:3x3", "C:2x2x2"]), idx in prop::collection::vec(any::<prop::sample::Index>(), 0..8)) {
        let g = group(spec);
        let terms: Vec<Elem> = idx.iter().map(|i| i.index(g.order())).collect();
        prop_assert_eq!(pi_set(&g, &seq(&g, &terms), B).unwrap().len(), 1);
    }

    #[test]
    fn free_sequences_stay_free_after_removal((gi, terms) in group_and_terms()) {
        // removing terms from a product-one-free sequence keeps it product-one-free
        let g = group(NONABELIAN[gi]);
        let s = seq(&g, &terms);
        if is_product_one_free(&g, &s, B).unwrap() && !terms.is_empty() {
            let shorter = seq(&g, &terms[1..]);
            prop_assert!(is_product_one_free(&g, &shorter, B).unwrap());
        }
    }
}

#[test]
fn noncommuting_products_are_not_central() {
    for spec in NONABELIAN {
        let g = group(spec);
        let z = g.center();
        for x in g.elements() {
            for y in g.elements() {
                if !g.commute(x, y) {
                    assert!(!z.contains(g.mul(x, y)), "{spec} {x} {y}");
                }
            }
        }
    }
}
