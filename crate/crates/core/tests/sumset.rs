use davenport_core::arith::mult_order;
use davenport_core::sumset::{
    cauchy_davenport_bound, orbit_representatives, orbit_union_sets, vosper_check, OrbitSelection, PrimeSet,
};
use proptest::prelude::*;

/// Direct AP test: some start `a` and difference `d` generate the set.
fn brute_is_ap(s: &PrimeSet) -> bool {
    let p = s.modulus();
    let n = s.len() as u32;
    if n <= 1 {
        return true;
    }
    (0..p).any(|a| {
        (1..p).any(|d| {
            let ap = PrimeSet::new(p, (0..n).map(|k| (a + k * d) % p)).unwrap();
            ap == *s
        })
    })
}

fn brute_sumset(a: &PrimeSet, b: &PrimeSet) -> PrimeSet {
    let p = a.modulus();
    let mut out = PrimeSet::empty(p).unwrap();
    for x in a.members() {
        for y in b.members() {
            out.insert(x + y);
        }
    }
    out
}

fn nonempty_sets(p: u32) -> impl Iterator<Item = PrimeSet> {
    (1u128..1 << p).map(move |m| PrimeSet::from_mask(p, m).unwrap())
}

#[test]
fn cauchy_davenport_and_vosper_exhaustive() {
    for p in [5u32, 7, 11] {
        let sets: Vec<PrimeSet> = nonempty_sets(p).collect();
        for a in &sets {
            for b in &sets {
                let s = a.sumset(b).unwrap();
                assert!(s.len() >= cauchy_davenport_bound(a, b), "p={p} {a:?} {b:?}");
                if a.len() >= 2 && b.len() >= 2 {
                    assert!(vosper_check(a, b).unwrap(), "p={p} {:?} {:?}", a.members(), b.members());
                }
            }
        }
    }
}

#[test]
fn progression_detection_matches_brute_force() {
    for p in [2u32, 3, 5, 7, 11, 13] {
        for s in nonempty_sets(p) {
            assert_eq!(s.is_arithmetic_progression(), brute_is_ap(&s), "p={p} {:?}", s.members());
            let n = s.len();
            if (2..=p as usize - 2).contains(&n) {
                // the difference is unique up to sign
                assert!(s.progression_differences().len() <= 2);
            }
        }
    }
}

#[test]
fn orbit_unions_are_never_progressions() {
    for (p, q) in [(3u32, 7u32), (3, 13), (5, 11), (3, 31)] {
        for r in (2..q).filter(|&r| mult_order(r as u64, q as u64) == Some(p as u64)) {
            let reps = orbit_representatives(q, r);
            assert_eq!(reps.len() as u32, (q - 1) / p);
            for mask in 0u32..(1 << (reps.len() + 1)) {
                let sel = OrbitSelection {
                    zero: mask & 1 == 1,
                    reps: (0..reps.len()).filter(|i| mask >> (i + 1) & 1 == 1).map(|i| reps[i]).collect(),
                };
                let a = orbit_union_sets(q, p, r, &sel).unwrap();
                assert_eq!(a.scale(r), a);
                if (2..=q as usize - 2).contains(&a.len()) {
                    assert!(!a.is_arithmetic_progression(), "p={p} q={q} r={r} {:?}", a.members());
                }
            }
        }
    }
}

fn prime_set() -> impl Strategy<Value = (PrimeSet, PrimeSet)> {
    prop::sample::select(vec![13u32, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 127])
        .prop_flat_map(|p| {
            let full = (1u128 << p) - 1;
            (Just(p), 1..=full, 1..=full)
        })
        .prop_map(|(p, a, b)| (PrimeSet::from_mask(p, a).unwrap(), PrimeSet::from_mask(p, b).unwrap()))
        .prop_filter("nonempty", |(a, b)| !a.is_empty() && !b.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn cauchy_davenport_for_larger_primes((a, b) in prime_set()) {
        let s = a.sumset(&b).unwrap();
        prop_assert_eq!(s, brute_sumset(&a, &b));
        prop_assert!(s.len() >= cauchy_davenport_bound(&a, &b));
        if a.len() >= 2 && b.len() >= 2 {
            prop_assert!(vosper_check(&a, &b).unwrap());
        }
    }

    #[test]
    fn short_progressions_attain_the_bound(p in prop::sample::select(vec![13u32, 31, 61, 127]), start in 0u32..127, d in 1u32..127, k in 1u32..6, l in 1u32..6) {
        let d = d % p;
        prop_assume!(d != 0);
        let a = PrimeSet::new(p, (0..k).map(|i| start + i * d)).unwrap();
        let b = PrimeSet::new(p, (0..l).map(|i| i * d)).unwrap();
        prop_assert_eq!(a.sumset(&b).unwrap().len(), cauchy_davenport_bound(&a, &b));
        prop_assert!(a.is_arithmetic_progression());
    }
}
