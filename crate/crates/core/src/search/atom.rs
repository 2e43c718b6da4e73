//! Depth-first search for atoms of one fixed length `L`.
//!
//! Prefixes `P` of a candidate are pruned when no extension to length `L` can
//! be an atom:
//!
//! * the central terms of `P` contain a nonempty product-one sub-multiset
//!   (central terms can be pulled out of any product-one ordering, so the rest
//!   of the final sequence would be product-one too);
//! * `P = U * C` with `U` nonempty product-one and `C` nonempty with
//!   `|pi(C)| = |G'|`. The complement of `U` in the final sequence has its
//!   products in a single `G'`-coset, in fact in `G'` itself, and contains a
//!   translate of `pi(C)`, so it is product-one;
//! * in abelian groups, `P` itself product-one while shorter than `L`.
//!
//! The last term `x` must satisfy `x^{-1} in pi(P)`, since a product-one
//! ordering can be rotated to end in `x`. Complete candidates then go through
//! the full atom test.

use alloc::vec::Vec;

use super::{Interrupt, SearchConfig, CHARGE_BATCH};
use crate::bits::ElementSet;
use crate::group::{Elem, FiniteGroup};
use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    /// The lexicographically smallest atom of the requested length.
    Found(Vec<Elem>),
    /// No atom of the requested length exists.
    Empty,
    /// The search was cut short.
    Interrupted,
}

impl LevelOutcome {
    /// Combine outcomes of subtrees listed in lexicographic order: the first
    /// subtree with an atom wins, provided every earlier one finished.
    pub fn merge(parts: impl IntoIterator<Item = LevelOutcome>) -> LevelOutcome {
        for p in parts {
            match p {
                LevelOutcome::Empty => continue,
                other => return other,
            }
        }
        LevelOutcome::Empty
    }
}

pub struct AtomExplorer<'a, I: Interrupt + ?Sized> {
    g: &'a FiniteGroup,
    lat: Lattice<'a>,
    len: usize,
    derived: usize,
    abelian: bool,
    center: ElementSet,
    reps: Option<&'a [Elem]>,
    /// Products of nonempty sub-multisets of the central terms, per depth.
    central: Vec<ElementSet>,
    stack: Vec<Elem>,
    nodes: u64,
    pending: u64,
    interrupt: &'a I,
    stopped: bool,
    incomplete: bool,
}

impl<'a, I: Interrupt + ?Sized> AtomExplorer<'a, I> {
    pub fn new(
        g: &'a FiniteGroup,
        cfg: &SearchConfig,
        len: usize,
        reps: Option<&'a [Elem]>,
        interrupt: &'a I,
    ) -> Self {
        let derived = g.commutator_subgroup().order();
        AtomExplorer {
            g,
            lat: Lattice::new(g, cfg.dp_budget),
            len,
            derived,
            abelian: derived == 1,
            center: *g.center().members(),
            reps,
            central: alloc::vec![ElementSet::new()],
            stack: Vec::new(),
            nodes: 0,
            pending: 0,
            interrupt,
            stopped: false,
            incomplete: false,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
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

    fn root_ok(&self, x: Elem) -> bool {
        match (self.stack.is_empty(), self.reps) {
            (true, Some(reps)) => reps[x] == x,
            _ => true,
        }
    }

    /// Push `x` and apply the prefix pruning rules. Returns false (with `x`
    /// not pushed) if the prefix cannot lead to an atom.
    fn push_prefix(&mut self, x: Elem) -> bool {
        let mut central = *self.central.last().unwrap();
        if self.center.contains(x) {
            let shifted = self.g.right_mul_set(&central, x);
            central.union_with(&shifted);
            central.insert(x);
            if central.contains(0) {
                return false;
            }
        }
        if self.lat.push(x).is_err() {
            self.incomplete = true;
            return false;
        }
        let full = self.lat.full();
        let prunable = if self.abelian {
            (1..=full).any(|u| self.lat.set(u).contains(0))
        } else {
            (1..full).any(|u| {
                self.lat.set(u).contains(0) && self.lat.set(full - u).len() == self.derived
            })
        };
        if prunable {
            self.lat.pop();
            return false;
        }
        self.central.push(central);
        self.stack.push(x);
        true
    }

    fn pop(&mut self) {
        self.lat.pop();
        self.central.pop();
        self.stack.pop();
    }

    /// Try every last term; returns the first atom found.
    fn leaves(&mut self) -> Option<Vec<Elem>> {
        let start = self.stack.last().copied().unwrap_or(0);
        let pi = *self.lat.pi();
        for x in start..self.g.order() {
            if (x == 0 && self.len > 1) || !pi.contains(self.g.inv(x)) || !self.root_ok(x) {
                continue;
            }
            if !self.tick() {
                return None;
            }
            if self.lat.push(x).is_err() {
                self.incomplete = true;
                continue;
            }
            let atom = self.lat.is_atom();
            self.lat.pop();
            if atom {
                let mut w = self.stack.clone();
                w.push(x);
                return Some(w);
            }
        }
        None
    }

    fn dfs(&mut self, depth_limit: usize, frontier: &mut Option<&mut Vec<Vec<Elem>>>) -> Option<Vec<Elem>> {
        if self.stack.len() + 1 == self.len {
            return self.leaves();
        }
        let start = self.stack.last().copied().unwrap_or(1);
        for x in start..self.g.order() {
            if self.stopped {
                return None;
            }
            if x == 0 || !self.root_ok(x) {
                continue;
            }
            if !self.tick() || !self.push_prefix(x) {
                continue;
            }
            if self.stack.len() == depth_limit {
                if let Some(f) = frontier.as_mut() {
                    f.push(self.stack.clone());
                }
            } else if let Some(w) = self.dfs(depth_limit, frontier) {
                self.pop();
                return Some(w);
            }
            self.pop();
        }
        None
    }

    fn reset(&mut self) {
        while !self.stack.is_empty() {
            self.pop();
        }
        self.stopped = false;
        self.incomplete = false;
    }

    fn flush(&mut self) {
        if self.pending > 0 {
            if !self.interrupt.charge(self.pending) {
                self.stopped = true;
            }
            self.pending = 0;
        }
    }

    fn outcome(&mut self, found: Option<Vec<Elem>>) -> LevelOutcome {
        self.flush();
        match found {
            Some(w) => LevelOutcome::Found(w),
            None if self.stopped || self.incomplete => LevelOutcome::Interrupted,
            None => LevelOutcome::Empty,
        }
    }

    /// Search the subtree below `prefix` (a root produced by [`split`] or the
    /// empty prefix for the whole level).
    ///
    /// [`split`]: AtomExplorer::split
    pub fn run(&mut self, prefix: &[Elem]) -> LevelOutcome {
        self.reset();
        if self.len == 0 {
            return LevelOutcome::Empty;
        }
        for &x in prefix {
            if !self.push_prefix(x) {
                return self.outcome(None);
            }
        }
        let found = self.dfs(usize::MAX, &mut None);
        self.outcome(found)
    }

    /// Prefixes of length `depth` (less than the level length) that survive
    /// pruning, in lexicographic order.
    pub fn split(&mut self, depth: usize) -> (Vec<Vec<Elem>>, bool) {
        self.reset();
        let mut roots = Vec::new();
        if depth == 0 || depth + 1 >= self.len {
            roots.push(Vec::new());
            return (roots, true);
        }
        self.dfs(depth, &mut Some(&mut roots));
        self.flush();
        (roots, !self.stopped && !self.incomplete)
    }
}
