use std::fs;
use std::process::Command;

use davenport::cache::{fingerprint, Cache, CacheFile, CACHE_VERSION};
use davenport::parallel::{Budget, ParallelSolver};
use davenport_core::search::{Invariant, InvariantResult, SearchConfig, Solver};
use davenport_core::{FiniteGroup, GroupSpec, Sequence};
use proptest::prelude::*;
use serde_json::Value;

fn group(s: &str) -> FiniteGroup {
    s.parse::<GroupSpec>().unwrap().build().unwrap()
}

fn result(g: &FiniteGroup, inv: Invariant, value: usize, terms: &[usize], exhaustive: bool) -> InvariantResult {
    InvariantResult {
        invariant: inv,
        value,
        upper: exhaustive.then_some(value),
        witness: Sequence::from_terms(g.order(), terms),
        exhaustive,
        nodes: 1234,
    }
}

#[test]
fn round_trip_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let g = group("F:2,3");
    let r = result(&g, Invariant::LargeD, 6, &[1, 1, 1, 1, 3, 3], true);
    cache.put(&g, &r, true).unwrap();
    assert_eq!(cache.get(&g, Invariant::LargeD, true), Some(r.clone()));
    // the automorphism setting and the invariant are part of the key
    assert_eq!(cache.get(&g, Invariant::LargeD, false), None);
    assert_eq!(cache.get(&g, Invariant::SmallD, true), None);
    let s = result(&g, Invariant::SmallD, 3, &[1, 1, 3], true);
    cache.put(&g, &s, true).unwrap();
    assert_eq!(cache.get(&g, Invariant::LargeD, true), Some(r));
    assert_eq!(cache.get(&g, Invariant::SmallD, true), Some(s));
}

#[test]
fn partial_results_are_not_stored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let g = group("C:5");
    cache.put(&g, &result(&g, Invariant::SmallD, 3, &[1, 1, 1], false), true).unwrap();
    assert!(!cache.path_for(&g).exists());
}

#[test]
fn stale_version_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let g = group("C:4");
    cache.put(&g, &result(&g, Invariant::SmallD, 3, &[1, 1, 1], true), true).unwrap();
    let path = cache.path_for(&g);
    let mut file: CacheFile = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file.version, CACHE_VERSION);
    file.version = "davenport-0.0.0/0".into();
    fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(cache.get(&g, Invariant::SmallD, true), None);
}

#[test]
fn fingerprint_collision_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path()).unwrap();
    let c4 = group("C:4");
    let v4 = group("C:2x2");
    cache.put(&c4, &result(&c4, Invariant::SmallD, 3, &[1, 1, 1], true), true).unwrap();
    // pretend the file under V4's key holds C4's table
    fs::copy(cache.path_for(&c4), cache.path_for(&v4)).unwrap();
    assert_eq!(cache.get(&v4, Invariant::SmallD, true), None);
    fs::write(cache.path_for(&v4), "not json").unwrap();
    assert_eq!(cache.get(&v4, Invariant::SmallD, true), None);
}

#[test]
fn equal_tables_share_entries() {
    let a = group("MC:5,4,2");
    let b = group("ND:5");
    assert_eq!(a.table(), b.table());
    assert_eq!(fingerprint(&a), fingerprint(&b));
    assert_ne!(fingerprint(&a), fingerprint(&group("C:20")));
}

#[test]
fn solver_fills_and_reads_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let solver = ParallelSolver::new(SearchConfig::default(), Budget::default(), Some(Cache::new(dir.path()).unwrap()));
    let g = group("D:12");
    let first = solver.small_davenport(&g);
    assert!(solver.cache.as_ref().unwrap().path_for(&g).exists());
    let second = solver.small_davenport(&g);
    assert_eq!(first, second);
}

#[test]
fn cli_uses_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_davenport"))
            .args(["invariant", "eta", "D:8", "--cache-dir", dir.path().to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success());
        serde_json::from_slice::<Value>(&out.stdout).unwrap()
    };
    let a = run();
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(run(), a);
    assert_eq!(a["value"], 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arbitrary_results_round_trip(
        spec in prop::sample::select(vec!["C:6", "F:2,3", "D:8", "C:2x2x2"]),
        inv in prop::sample::select(vec![Invariant::SmallD, Invariant::LargeD, Invariant::Eta]),
        terms in prop::collection::vec(0usize..6, 0..12),
        value in 0usize..40,
        nodes in any::<u64>(),
        aut in any::<bool>(),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let g = group(spec);
        let r = InvariantResult { nodes, ..result(&g, inv, value, &terms, true) };
        cache.put(&g, &r, aut).unwrap();
        prop_assert_eq!(cache.get(&g, inv, aut), Some(r));
    }
}
