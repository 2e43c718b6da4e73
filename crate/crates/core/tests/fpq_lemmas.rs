//! Product-set estimates for `F_pq` and the near-dihedral group, checked
//! directly against the product-set machinery.

mod common;

use common::{group, multisets, random_terms, seq};
use davenport_core::lattice::{big_pi, big_pi_upto, is_atom, is_product_one_free, pi_set};
use davenport_core::witness::WitnessKind;
use davenport_core::{Elem, FiniteGroup, DEFAULT_DP_BUDGET as B};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FPQ: &[(u64, u64)] = &[(2, 3), (2, 5), (3, 7), (2, 7)];

fn fpq(p: u64, q: u64) -> FiniteGroup {
    group(&format!("F:{p},{q}"))
}

fn split(g: &FiniteGroup) -> (Vec<Elem>, Vec<Elem>) {
    let d = g.commutator_subgroup();
    let inside = g.elements().filter(|&x| x != 0 && d.contains(x)).collect();
    let outside = g.elements().filter(|&x| !d.contains(x)).collect();
    (inside, outside)
}

#[test]
fn one_outside_term_spreads_commutator_terms() {
    // |pi(x S)| >= min(q, |x S|) for S over G' \ {1} and x outside G'
    for &(p, q) in FPQ {
        let g = fpq(p, q);
        let (inside, outside) = split(&g);
        for len in 0..q as usize {
            for s in multisets(&inside, len) {
                for &x in &outside {
                    let mut t = s.clone();
                    t.push(x);
                    let n = pi_set(&g, &seq(&g, &t), B).unwrap().len();
                    assert!(n >= (q as usize).min(t.len()), "F:{p},{q} {t:?}");
                }
            }
        }
    }
}

#[test]
fn two_outside_terms_double_the_spread() {
    // |pi(g1 g2 S)| >= min(q, 2|S| + 1) when g1 g2 is outside G'
    for &(p, q) in FPQ {
        let g = fpq(p, q);
        let d = g.commutator_subgroup();
        let (inside, outside) = split(&g);
        let mut checked = 0;
        for len in 0..=((q as usize - 1) / 2) {
            for s in multisets(&inside, len) {
                for &g1 in &outside {
                    for &g2 in &outside {
                        if d.contains(g.mul(g1, g2)) {
                            continue;
                        }
                        let mut t = s.clone();
                        t.extend([g1, g2]);
                        let n = pi_set(&g, &seq(&g, &t), B).unwrap().len();
                        assert!(n >= (q as usize).min(2 * len + 1), "F:{p},{q} {t:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked > 0, p > 2);
    }
}

#[test]
fn generating_sequences_have_p_products() {
    // <supp S> = G and 1 not in S imply |pi(S)| >= min(p, |S|)
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &(p, q) in FPQ {
        let g = fpq(p, q);
        let nonid: Vec<Elem> = (1..g.order()).collect();
        let check = |t: &[Elem]| {
            if g.subgroup_generated(t.iter().copied()).order() == g.order() {
                let n = pi_set(&g, &seq(&g, t), B).unwrap().len();
                assert!(n >= (p as usize).min(t.len()), "F:{p},{q} {t:?}");
            }
        };
        for len in 1..=(p as usize + 1) {
            for t in multisets(&nonid, len) {
                check(&t);
            }
        }
        for _ in 0..2000 {
            let len = rng.gen_range(2..=10);
            let t: Vec<Elem> = (0..len).map(|_| rng.gen_range(1..g.order())).collect();
            check(&t);
        }
    }
}

#[test]
fn long_sequences_with_commutator_product_contain_product_one() {
    // pi(S) in G' and |S| >= q imply 1 in Pi(S)
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for &(p, q) in FPQ {
        let g = fpq(p, q);
        let d = g.commutator_subgroup();
        let mut hits = 0;
        while hits < 1000 {
            let len = rng.gen_range(q as usize..=q as usize + 3);
            let t = random_terms(&mut rng, g.order(), len);
            if !d.contains(g.product(&t)) {
                continue;
            }
            hits += 1;
            assert!(big_pi(&g, &seq(&g, &t), B).unwrap().contains(0), "F:{p},{q} {t:?}");
        }
    }
}

#[test]
fn short_product_one_subsequences_exist() {
    // every sequence of length q + 2p - 3 has a product-one subsequence of length <= q
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for &(p, q) in FPQ {
        let g = fpq(p, q);
        let len = (q + 2 * p - 3) as usize;
        let all: Vec<Elem> = g.elements().collect();
        let check = |t: &[Elem]| {
            assert!(big_pi_upto(&g, &seq(&g, t), q as usize, B).unwrap().contains(0), "F:{p},{q} {t:?}");
        };
        if g.order() <= 10 {
            multisets(&all, len).iter().for_each(|t| check(t));
        }
        for _ in 0..3000 {
            check(&random_terms(&mut rng, g.order(), len));
        }
    }
}

#[test]
fn near_dihedral_quotient_atoms() {
    // if the image of S in G/G' = C_4 is an atom, then 1 in pi(S) or |pi(S)| >= |S|
    let g = group("ND:5");
    let quo = g.quotient(&g.commutator_subgroup()).unwrap();
    assert!(quo.image.is_cyclic() && quo.image.order() == 4);
    let all: Vec<Elem> = g.elements().collect();
    let mut checked = 0;
    for len in 1..=4 {
        for t in multisets(&all, len) {
            let image: Vec<Elem> = t.iter().map(|&x| quo.project(x)).collect();
            if !is_atom(&quo.image, &seq(&quo.image, &image), B).unwrap() {
                continue;
            }
            let pi = pi_set(&g, &seq(&g, &t), B).unwrap();
            assert!(pi.contains(0) || pi.len() >= t.len(), "{t:?}");
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn family_witnesses_have_their_lengths() {
    for (p, q) in [(2, 3), (2, 5), (3, 7), (2, 7), (5, 11), (3, 13), (2, 11), (7, 29)] {
        let atom = WitnessKind::FpqAtom { p, q, r: None }.build().unwrap();
        assert_eq!(atom.sequence.len(), 2 * q as usize);
        assert!(is_atom(&atom.group, &atom.sequence, B).unwrap(), "F:{p},{q}");
        let free = WitnessKind::FpqFree { p, q }.build().unwrap();
        assert_eq!(free.sequence.len(), (q + p - 2) as usize);
        assert!(is_product_one_free(&free.group, &free.sequence, B).unwrap(), "F:{p},{q}");
    }
    for (p, n) in [(2, 3), (2, 4), (3, 3), (2, 5)] {
        let w = WitnessKind::MpnAtom { p, n }.build().unwrap();
        assert_eq!(w.sequence.len(), (p.pow(n - 1) + p) as usize);
        assert!(is_atom(&w.group, &w.sequence, B).unwrap(), "M:{p},{n}");
    }
    for q in [5, 13] {
        let w = WitnessKind::NearDihedralFree { q }.build().unwrap();
        assert_eq!(w.sequence.len(), (q + 2) as usize);
        assert!(is_product_one_free(&w.group, &w.sequence, B).unwrap(), "ND:{q}");
    }
}
