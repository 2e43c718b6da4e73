//! Depth-first search over product-one-free sequences.
//!
//! With `cap = usize::MAX` a sequence is kept when it has no nontrivial
//! product-one subsequence at all (d search). With a finite cap only
//! subsequences of length at most `cap + 1` count (eta search with
//! `cap = maxord - 1`).
//!
//! Appending `x` to an admissible `S` keeps it admissible iff `x != 1` and
//! `x^{-1}` is not a product of some ordering of a short enough subsequence
//! of `S`: any product-one ordering of `T * x` can be rotated so that `x` is
//! last.

use alloc::vec::Vec;

use super::{better, Interrupt, SearchConfig, CHARGE_BATCH};
use crate::bits::ElementSet;
use crate::group::{Elem, FiniteGroup};
use crate::lattice::Lattice;

/// Result of exploring one subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeOutcome {
    /// Longest admissible sequence found, lexicographically smallest among
    /// those of that length.
    pub best: Vec<Elem>,
    /// False when the subtree was cut short by the interrupt, the DP budget
    /// or the length cap.
    pub complete: bool,
    pub nodes: u64,
}

impl FreeOutcome {
    /// Combine subtree outcomes.
    pub fn merge(parts: impl IntoIterator<Item = FreeOutcome>) -> FreeOutcome {
        let mut out = FreeOutcome { best: Vec::new(), complete: true, nodes: 0 };
        for p in parts {
            if better(&p.best, &out.best) {
                out.best = p.best;
            }
            out.complete &= p.complete;
            out.nodes += p.nodes;
        }
        out
    }
}

pub struct FreeExplorer<'a, I: Interrupt + ?Sized> {
    g: &'a FiniteGroup,
    lat: Lattice<'a>,
    cap: usize,
    max_length: usize,
    reps: Option<&'a [Elem]>,
    avoid: Vec<ElementSet>,
    stack: Vec<Elem>,
    best: Vec<Elem>,
    nodes: u64,
    pending: u64,
    interrupt: &'a I,
    stopped: bool,
    incomplete: bool,
}

impl<'a, I: Interrupt + ?Sized> FreeExplorer<'a, I> {
    pub fn new(
        g: &'a FiniteGroup,
        cfg: &SearchConfig,
        cap: usize,
        reps: Option<&'a [Elem]>,
        interrupt: &'a I,
    ) -> Self {
        FreeExplorer {
            g,
            lat: Lattice::new(g, cfg.dp_budget),
            cap,
            max_length: cfg.max_length.unwrap_or(usize::MAX),
            reps,
            avoid: alloc::vec![ElementSet::new()],
            stack: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            pending: 0,
            interrupt,
            stopped: false,
            incomplete: false,
        }
    }

    fn allowed(&self, x: Elem) -> bool {
        if x == 0 || self.avoid.last().unwrap().contains(self.g.inv(x)) {
            return false;
        }
        match (self.stack.is_empty(), self.reps) {
            (true, Some(reps)) => reps[x] == x,
            _ => true,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.pending += 1;
        if self.pending >= CHARGE_BATCH {
            if !self.interrupt.charge(self.pending) {
                self.stopped = true;
            }
            self.pending = 0;
        }
        !self.stopped
    }

    fn push(&mut self, x: Elem) -> bool {
        let range = match self.lat.push(x) {
            Ok(r) => r,
            Err(_) => {
                self.incomplete = true;
                return false;
            }
        };
        let mut avoid = *self.avoid.last().unwrap();
        for r in range {
            if self.lat.state_len(r) as usize <= self.cap {
                avoid.union_with(self.lat.set(r));
            }
        }
        self.avoid.push(avoid);
        self.stack.push(x);
        true
    }

    fn pop(&mut self) {
        self.lat.pop();
        self.avoid.pop();
        self.stack.pop();
    }

    fn record(&mut self) {
        if better(&self.stack, &self.best) {
            self.best.clone_from(&self.stack);
        }
    }

    fn dfs(&mut self, depth_limit: usize, frontier: &mut Option<&mut Vec<Vec<Elem>>>) {
        let start = self.stack.last().copied().unwrap_or(1);
        for x in start..self.g.order() {
            if self.stopped {
                return;
            }
            if !self.allowed(x) {
                continue;
            }
            if self.stack.len() >= self.max_length {
                self.incomplete = true;
                return;
            }
            if !self.tick() || !self.push(x) {
                continue;
            }
            self.record();
            if self.stack.len() == depth_limit {
                if let Some(f) = frontier.as_mut() {
                    f.push(self.stack.clone());
                }
            } else {
                self.dfs(depth_limit, frontier);
            }
            self.pop();
        }
    }

    fn reset(&mut self) {
        while !self.stack.is_empty() {
            self.pop();
        }
        self.best.clear();
        self.stopped = false;
        self.incomplete = false;
    }

    fn load_prefix(&mut self, prefix: &[Elem]) -> bool {
        for &x in prefix {
            if !self.allowed(x) || !self.push(x) {
                return false;
            }
        }
        self.record();
        true
    }

    fn finish(&mut self) -> FreeOutcome {
        if self.pending > 0 {
            if !self.interrupt.charge(self.pending) {
                self.stopped = true;
            }
            self.pending = 0;
        }
        let out = FreeOutcome {
            best: core::mem::take(&mut self.best),
            complete: !self.stopped && !self.incomplete,
            nodes: self.nodes,
        };
        self.nodes = 0;
        out
    }

    /// Explore the whole subtree below `prefix` (which must itself be
    /// admissible; an inadmissible prefix yields an empty outcome).
    pub fn run(&mut self, prefix: &[Elem]) -> FreeOutcome {
        self.reset();
        if self.load_prefix(prefix) {
            self.dfs(usize::MAX, &mut None);
        }
        self.finish()
    }

    /// Enumerate the admissible sequences of length exactly `depth` (in
    /// lexicographic order), returning them as subtree roots together with
    /// the outcome of the part of the tree above them.
    pub fn split(&mut self, depth: usize) -> (Vec<Vec<Elem>>, FreeOutcome) {
        self.reset();
        let mut roots = Vec::new();
        self.dfs(depth.max(1), &mut Some(&mut roots));
        let out = self.finish();
        (roots, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::search::Unlimited;

    fn g(s: &str) -> FiniteGroup {
        s.parse::<GroupSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn split_then_merge_matches_direct() {
        for spec in ["F:2,3", "C:2x4", "D:8", "C:3x3"] {
            let grp = g(spec);
            for aut in [false, true] {
                let cfg = SearchConfig { use_automorphisms: aut, ..Default::default() };
                let reps = cfg.root_reps(&grp);
                let mut ex = FreeExplorer::new(&grp, &cfg, usize::MAX, reps.as_deref(), &Unlimited);
                let direct = ex.run(&[]);
                let (roots, top) = ex.split(2);
                let parts = roots.iter().map(|r| ex.run(r));
                let merged = FreeOutcome::merge(core::iter::once(top).chain(parts));
                assert_eq!(merged.best, direct.best, "{spec}");
                assert!(merged.complete && direct.complete);
            }
        }
    }
}
