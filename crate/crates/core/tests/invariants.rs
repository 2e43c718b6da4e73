mod common;

use common::{brute_big_pi, group};
use davenport_core::bounds::{verify_group, BoundId, EqualityStatus, Status, VerifyOptions};
use davenport_core::lattice::{is_atom, is_product_one_free};
use davenport_core::search::{eta, large_davenport, small_davenport, DHints, SearchConfig, SequentialSolver, Unlimited};
use davenport_core::{FiniteGroup, DEFAULT_DP_BUDGET as B};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all(g: &FiniteGroup) -> (usize, usize, usize) {
    let cfg = SearchConfig::default();
    let d = small_davenport(g, &cfg, &Unlimited);
    let big = large_davenport(g, &cfg, &DHints::default(), &Unlimited);
    let e = eta(g, &cfg, &Unlimited);
    assert!(d.exhaustive && big.exhaustive && e.exhaustive);
    assert!(is_product_one_free(g, &d.witness, B).unwrap());
    assert!(is_atom(g, &big.witness, B).unwrap());
    let m = g.max_element_order() as usize;
    assert!(!brute_big_pi(g, &e.witness.terms(), m).contains(0));
    (d.value, big.value, e.value)
}

#[test]
fn cyclic_groups() {
    for n in 1..=12 {
        let (d, big, e) = all(&group(&format!("C:{n}")));
        assert_eq!((d, big), (n - 1, n), "C:{n}");
        assert_eq!(e, n, "C:{n}");
    }
}

#[test]
fn rank_two_abelian_groups() {
    // d(C_n^2) + 1 = D(C_n^2) = 2n - 1 and eta(C_n^2) = 3n - 2
    for n in [2, 3] {
        let (d, big, e) = all(&group(&format!("C:{n}x{n}")));
        assert_eq!((d + 1, big, e), (2 * n - 1, 2 * n - 1, 3 * n - 2));
    }
    assert_eq!(all(&group("C:2x2x2x2")).0, 4);
}

#[test]
fn small_non_abelian_groups() {
    assert_eq!(all(&group("F:2,3")), (3, 6, 4));
    for (spec, d, big) in [("D:8", 4, 6), ("F:2,5", 5, 10), ("MC:3,4,2", 6, 9)] {
        let (got_d, got_big, _) = all(&group(spec));
        assert_eq!((got_d, got_big), (d, big), "{spec}");
    }
}

#[test]
fn verification_sweep_is_clean() {
    let solver = SequentialSolver::default();
    for spec in ["C:1", "C:4", "C:2x2", "C:2x4", "D:8", "MC:4,2,3", "F:2,3", "F:2,5", "MC:3,4,2", "D:12", "C:3x3"] {
        let g = group(spec);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = verify_group(&g, &solver, &mut rng, &VerifyOptions::default());
        assert!(r.violations.is_empty(), "{spec}: {:?}", r.violations);
        let comm = r.entry(BoundId::Commutator);
        let expect = if g.is_abelian() { EqualityStatus::Equal } else { EqualityStatus::Strict };
        assert_eq!(comm.equality, Some(expect), "{spec}");
        assert!(r.entries.iter().all(|e| e.status != Some(Status::Unchecked)), "{spec}");
    }
}
