//! Parallel invariant searches with node and wall-clock budgets.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use davenport_core::search::{
    free_result, large_davenport_with, AtomExplorer, DHints, FreeExplorer, FreeOutcome, Interrupt,
    Invariant, InvariantResult, LevelOutcome, NodeLimit, SearchConfig, Solver,
};
use davenport_core::FiniteGroup;
use rayon::prelude::*;

use crate::cache::Cache;

/// Limits applied to each invariant computation separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub nodes: u64,
    pub seconds: Option<f64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { nodes: 2_000_000_000, seconds: None }
    }
}

/// Node limit combined with an optional deadline.
pub struct Deadline {
    nodes: NodeLimit,
    until: Option<Instant>,
}

impl Deadline {
    pub fn start(budget: Budget) -> Self {
        let until = budget.seconds.map(|s| Instant::now() + Duration::from_secs_f64(s));
        Deadline { nodes: NodeLimit::new(budget.nodes), until }
    }
}

impl Interrupt for Deadline {
    fn charge(&self, nodes: u64) -> bool {
        self.nodes.charge(nodes) && self.until.is_none_or(|t| Instant::now() < t)
    }
}

/// Splits the search tree a few levels down and explores the subtrees on the
/// rayon pool. Results are merged in lexicographic subtree order, so the
/// witnesses match the sequential search.
pub struct ParallelSolver {
    pub config: SearchConfig,
    pub budget: Budget,
    pub cache: Option<Cache>,
}

/// Split depth giving enough subtrees to keep the pool busy.
fn split_depth(g: &FiniteGroup) -> usize {
    if g.order() <= 8 {
        2
    } else {
        3
    }
}

impl ParallelSolver {
    pub fn new(config: SearchConfig, budget: Budget, cache: Option<Cache>) -> Self {
        ParallelSolver { config, budget, cache }
    }

    fn cached(&self, g: &FiniteGroup, inv: Invariant, compute: impl FnOnce() -> InvariantResult) -> InvariantResult {
        let tag = self.config.use_automorphisms;
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(g, inv, tag)) {
            return hit;
        }
        let r = compute();
        if let Some(c) = &self.cache {
            if let Err(e) = c.put(g, &r, tag) {
                eprintln!("warning: cache write failed: {e}");
            }
        }
        r
    }

    fn free_search(&self, g: &FiniteGroup, inv: Invariant, cap: usize) -> InvariantResult {
        let cfg = &self.config;
        let reps = cfg.root_reps(g);
        let deadline = Deadline::start(self.budget);
        let new = || FreeExplorer::new(g, cfg, cap, reps.as_deref(), &deadline);
        let (roots, top) = new().split(split_depth(g));
        let parts: Vec<FreeOutcome> = roots.par_iter().map_init(new, |ex, r| ex.run(r)).collect();
        free_result(g, inv, FreeOutcome::merge(std::iter::once(top).chain(parts)))
    }

    fn atom_level(&self, g: &FiniteGroup, reps: Option<&[usize]>, deadline: &Deadline, len: usize) -> (LevelOutcome, u64) {
        let cfg = &self.config;
        let new = || AtomExplorer::new(g, cfg, len, reps, deadline);
        let mut top = new();
        let (roots, ok) = top.split(split_depth(g));
        let nodes = AtomicU64::new(top.nodes());
        if !ok {
            return (LevelOutcome::Interrupted, nodes.into_inner());
        }
        // subtrees after the first one with an atom cannot change the merge
        let first_found = AtomicUsize::new(usize::MAX);
        let parts: Vec<LevelOutcome> = roots
            .par_iter()
            .enumerate()
            .map_init(new, |ex, (i, r)| {
                if i > first_found.load(Ordering::Relaxed) {
                    return LevelOutcome::Empty;
                }
                let out = ex.run(r);
                nodes.fetch_add(ex.nodes(), Ordering::Relaxed);
                if matches!(out, LevelOutcome::Found(_)) {
                    first_found.fetch_min(i, Ordering::Relaxed);
                }
                out
            })
            .collect();
        (LevelOutcome::merge(parts), nodes.into_inner())
    }
}

impl Solver for ParallelSolver {
    fn small_davenport(&self, g: &FiniteGroup) -> InvariantResult {
        self.cached(g, Invariant::SmallD, || self.free_search(g, Invariant::SmallD, usize::MAX))
    }

    fn large_davenport(&self, g: &FiniteGroup, hints: &DHints) -> InvariantResult {
        self.cached(g, Invariant::LargeD, || {
            let reps = self.config.root_reps(g);
            let deadline = Deadline::start(self.budget);
            large_davenport_with(g, &self.config, hints, |len| self.atom_level(g, reps.as_deref(), &deadline, len))
        })
    }

    fn eta(&self, g: &FiniteGroup) -> InvariantResult {
        let cap = davenport_core::search::eta_cap(g);
        self.cached(g, Invariant::Eta, || self.free_search(g, Invariant::Eta, cap))
    }
}
