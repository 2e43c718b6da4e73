//! Exhaustive searches for d(G), D(G) and eta(G).
//!
//! All three searches walk multisets as non-decreasing index sequences in
//! depth-first pre-order, which visits sequences of equal length in
//! lexicographic order. The first sequence found at a length is therefore the
//! lexicographically smallest one, and parallel drivers can merge subtree
//! results by (length, lexicographic order) to get the same witness.

mod atom;
mod free;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use core::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::group::{automorphism_orbits, Elem, FiniteGroup, DEFAULT_AUT_LIMIT};
use crate::lattice::{Lattice, DEFAULT_DP_BUDGET};
use crate::seq::Sequence;

pub use atom::{AtomExplorer, LevelOutcome};
pub use free::{FreeExplorer, FreeOutcome};

/// Cooperative cancellation. Searches report progress in batches; a `false`
/// return stops the search and marks the result as not exhaustive.
pub trait Interrupt: Sync {
    fn charge(&self, nodes: u64) -> bool;
}

/// Never interrupts.
pub struct Unlimited;

impl Interrupt for Unlimited {
    fn charge(&self, _nodes: u64) -> bool {
        true
    }
}

/// Stops after a fixed number of search nodes, shared across workers.
pub struct NodeLimit {
    used: AtomicU64,
    limit: u64,
    tripped: AtomicBool,
}

impl NodeLimit {
    pub fn new(limit: u64) -> Self {
        NodeLimit { used: AtomicU64::new(0), limit, tripped: AtomicBool::new(false) }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }
}

impl Interrupt for NodeLimit {
    fn charge(&self, nodes: u64) -> bool {
        let prev = self.used.fetch_add(nodes, Ordering::Relaxed);
        if prev.saturating_add(nodes) > self.limit {
            self.tripped.store(true, Ordering::Relaxed);
            false
        } else {
            true
        }
    }
}

/// Nodes between two calls to [`Interrupt::charge`].
pub(crate) const CHARGE_BATCH: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Invariant {
    /// Small Davenport constant `d(G)`.
    SmallD,
    /// Large Davenport constant `D(G)`.
    LargeD,
    Eta,
}

impl Invariant {
    pub fn symbol(self) -> &'static str {
        match self {
            Invariant::SmallD => "d",
            Invariant::LargeD => "D",
            Invariant::Eta => "eta",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Invariant {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "d" => Ok(Invariant::SmallD),
            "D" => Ok(Invariant::LargeD),
            "eta" => Ok(Invariant::Eta),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cap on lattice states per sequence.
    pub dp_budget: usize,
    /// Restrict the first branching level to Aut(G)-orbit representatives.
    pub use_automorphisms: bool,
    /// Order limit for automorphism enumeration.
    pub aut_limit: usize,
    /// Optional cap on sequence length explored by the d and eta searches.
    pub max_length: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            dp_budget: DEFAULT_DP_BUDGET,
            use_automorphisms: true,
            aut_limit: DEFAULT_AUT_LIMIT,
            max_length: None,
        }
    }
}

impl SearchConfig {
    /// Orbit representative for each element, or `None` when disabled.
    pub fn root_reps(&self, g: &FiniteGroup) -> Option<Vec<Elem>> {
        self.use_automorphisms.then(|| automorphism_orbits(g, self.aut_limit))
    }
}

/// A computed invariant. When `exhaustive` is false, `value` is a certified
/// lower bound (witnessed) and `upper`, if present, the best known upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantResult {
    pub invariant: Invariant,
    pub value: usize,
    pub upper: Option<usize>,
    pub witness: Sequence,
    pub exhaustive: bool,
    pub nodes: u64,
}

impl InvariantResult {
    /// Interval `[lo, hi]` known to contain the invariant.
    pub fn interval(&self) -> (usize, Option<usize>) {
        if self.exhaustive {
            (self.value, Some(self.value))
        } else {
            (self.value, self.upper)
        }
    }
}

/// Pick the longer sequence, breaking ties by lexicographic order.
pub fn better(a: &[Elem], b: &[Elem]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

/// Result of a complete or interrupted d or eta search.
pub fn free_result(
    g: &FiniteGroup,
    invariant: Invariant,
    out: FreeOutcome,
) -> InvariantResult {
    let witness = Sequence::from_terms(g.order(), &out.best);
    let value = match invariant {
        Invariant::Eta => out.best.len() + 1,
        _ => out.best.len(),
    };
    InvariantResult { invariant, value, upper: None, witness, exhaustive: out.complete, nodes: out.nodes }
}

/// Bound on the length of sub-multisets that count for the eta search.
pub fn eta_cap(g: &FiniteGroup) -> usize {
    g.max_element_order() as usize - 1
}

/// Sequential computation of `d(G)`.
pub fn small_davenport<I: Interrupt + ?Sized>(
    g: &FiniteGroup,
    cfg: &SearchConfig,
    interrupt: &I,
) -> InvariantResult {
    let reps = cfg.root_reps(g);
    let mut ex = FreeExplorer::new(g, cfg, usize::MAX, reps.as_deref(), interrupt);
    free_result(g, Invariant::SmallD, ex.run(&[]))
}

/// Sequential computation of `eta(G)`. The trivial group gets `eta = 1`.
pub fn eta<I: Interrupt + ?Sized>(
    g: &FiniteGroup,
    cfg: &SearchConfig,
    interrupt: &I,
) -> InvariantResult {
    let reps = cfg.root_reps(g);
    let mut ex = FreeExplorer::new(g, cfg, eta_cap(g), reps.as_deref(), interrupt);
    free_result(g, Invariant::Eta, ex.run(&[]))
}

/// Extra information for the D search.
#[derive(Debug, Clone, Default)]
pub struct DHints {
    /// Best known upper bound on D(G); the search starts one level above it
    /// so that the bound is confirmed rather than assumed.
    pub upper: Option<usize>,
    /// Candidate atoms (checked before use) and product-one-free sequences
    /// (extended to atoms) that seed the lower bound.
    pub atoms: Vec<Sequence>,
    pub free: Vec<Sequence>,
}

/// `S * g` where `g` is the inverse of some ordered product of the
/// product-one-free sequence `S`. Any split of the result into two
/// product-one parts would leave a nontrivial product-one subsequence of `S`,
/// so the result is an atom of length `|S| + 1`.
pub fn atom_from_free(g: &FiniteGroup, s: &Sequence, dp_budget: usize) -> Option<Sequence> {
    let lat = Lattice::of(g, s, dp_budget).ok()?;
    let p = lat.pi().first()?;
    let mut out = s.clone();
    out.push(g.inv(p));
    Some(out)
}

/// Certified lower bound for D(G) from the hints and elementary witnesses.
fn lower_witness(g: &FiniteGroup, cfg: &SearchConfig, hints: &DHints) -> Sequence {
    let n = g.order();
    let mut best = Sequence::from_terms(n, &[0]);
    let mut consider = |s: Sequence| {
        if (s.len() > best.len() || (s.len() == best.len() && s.terms() < best.terms()))
            && crate::lattice::is_atom(g, &s, cfg.dp_budget).unwrap_or(false) {
                best = s;
            }
    };
    if let Some(x) = g.elements().max_by_key(|&x| (g.element_order(x), core::cmp::Reverse(x))) {
        let mut s = Sequence::empty(n);
        s.push_n(x, g.element_order(x));
        consider(s);
    }
    for a in &hints.atoms {
        consider(a.clone());
    }
    for f in &hints.free {
        if crate::lattice::is_product_one_free(g, f, cfg.dp_budget).unwrap_or(false) {
            if let Some(a) = atom_from_free(g, f, cfg.dp_budget) {
                consider(a);
            }
        }
    }
    best
}

/// D(G) search over levels, with the per-level search supplied by the caller
/// (sequential or parallel). `level(L)` must report whether an atom of length
/// exactly `L` exists, returning the lexicographically smallest one.
///
/// Atoms of length `L + 1` can be shortened to atoms of length `L` (merge the
/// last two terms of a product-one ordering), so a level without atoms bounds
/// D(G) from above and a level with atoms bounds it from below.
pub fn large_davenport_with<F>(
    g: &FiniteGroup,
    cfg: &SearchConfig,
    hints: &DHints,
    mut level: F,
) -> InvariantResult
where
    F: FnMut(usize) -> (LevelOutcome, u64),
{
    let n = g.order();
    let mut nodes = 0u64;
    let lower = lower_witness(g, cfg, hints);
    let result = |value: usize, witness: Sequence, exhaustive: bool, upper: Option<usize>, nodes: u64| {
        InvariantResult { invariant: Invariant::LargeD, value, upper, witness, exhaustive, nodes }
    };
    if n == 1 {
        return result(1, lower, true, Some(1), 0);
    }
    let upper_hint = hints.upper.unwrap_or(n).min(n);
    let start = (upper_hint + 1).min(n).max(lower.len());
    let mut best_upper;
    let mut run = |len: usize, nodes: &mut u64| {
        let (o, k) = level(len);
        *nodes += k;
        o
    };
    // ascend while atoms keep appearing above the start level
    let first = run(start, &mut nodes);
    match first {
        LevelOutcome::Found(w) => {
            let mut value = start;
            let mut witness = w;
            loop {
                if value == n {
                    return result(value, Sequence::from_terms(n, &witness), true, Some(n), nodes);
                }
                match run(value + 1, &mut nodes) {
                    LevelOutcome::Found(w) => {
                        value += 1;
                        witness = w;
                    }
                    LevelOutcome::Empty => {
                        return result(value, Sequence::from_terms(n, &witness), true, Some(value), nodes);
                    }
                    LevelOutcome::Interrupted => {
                        return result(value, Sequence::from_terms(n, &witness), false, Some(n), nodes);
                    }
                }
            }
        }
        LevelOutcome::Empty => best_upper = start - 1,
        LevelOutcome::Interrupted => {
            let upper = Some(upper_hint.max(lower.len()));
            return result(lower.len(), lower, false, upper, nodes);
        }
    }
    // descend until a level with atoms
    let mut len = start - 1;
    loop {
        match run(len, &mut nodes) {
            LevelOutcome::Found(w) => {
                return result(len, Sequence::from_terms(n, &w), true, Some(len), nodes);
            }
            LevelOutcome::Empty if len > lower.len() => {
                best_upper = len - 1;
                len -= 1;
            }
            LevelOutcome::Empty => {
                // cannot happen: the lower witness is an atom of this length
                return result(lower.len(), lower, false, Some(best_upper), nodes);
            }
            LevelOutcome::Interrupted => {
                if len == lower.len() {
                    return result(len, lower, true, Some(len), nodes);
                }
                return result(lower.len(), lower, false, Some(best_upper), nodes);
            }
        }
    }
}

/// Sequential computation of `D(G)`.
pub fn large_davenport<I: Interrupt + ?Sized>(
    g: &FiniteGroup,
    cfg: &SearchConfig,
    hints: &DHints,
    interrupt: &I,
) -> InvariantResult {
    let reps = cfg.root_reps(g);
    large_davenport_with(g, cfg, hints, |len| {
        let mut ex = AtomExplorer::new(g, cfg, len, reps.as_deref(), interrupt);
        let out = ex.run(&[]);
        (out, ex.nodes())
    })
}

/// Computes invariants on demand; lets the bound engine work with either the
/// sequential search here or a parallel, cached implementation.
pub trait Solver {
    fn small_davenport(&self, g: &FiniteGroup) -> InvariantResult;
    fn large_davenport(&self, g: &FiniteGroup, hints: &DHints) -> InvariantResult;
    fn eta(&self, g: &FiniteGroup) -> InvariantResult;
}

/// Sequential solver with a fresh node limit per computation.
pub struct SequentialSolver {
    pub config: SearchConfig,
    pub node_limit: u64,
}

impl Default for SequentialSolver {
    fn default() -> Self {
        SequentialSolver { config: SearchConfig::default(), node_limit: 50_000_000 }
    }
}

impl Solver for SequentialSolver {
    fn small_davenport(&self, g: &FiniteGroup) -> InvariantResult {
        small_davenport(g, &self.config, &NodeLimit::new(self.node_limit))
    }
    fn large_davenport(&self, g: &FiniteGroup, hints: &DHints) -> InvariantResult {
        large_davenport(g, &self.config, hints, &NodeLimit::new(self.node_limit))
    }
    fn eta(&self, g: &FiniteGroup) -> InvariantResult {
        eta(g, &self.config, &NodeLimit::new(self.node_limit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::lattice::{is_atom, Lattice};
    use alloc::vec;

    fn g(s: &str) -> FiniteGroup {
        s.parse::<GroupSpec>().unwrap().build().unwrap()
    }

    /// All multisets of length `len` as non-decreasing index vectors.
    fn multisets(n: usize, len: usize) -> Vec<Vec<Elem>> {
        fn rec(n: usize, len: usize, start: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for x in start..n {
                cur.push(x);
                rec(n, len, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, len, 0, &mut Vec::new(), &mut out);
        out
    }

    /// Reference values straight from the definitions.
    fn brute(g: &FiniteGroup) -> (usize, usize, usize) {
        let n = g.order();
        let m = g.max_element_order() as usize;
        let (mut d, mut big_d, mut e) = (0, 0, 0);
        for len in 1..=n {
            for terms in multisets(n, len) {
                let s = Sequence::from_terms(n, &terms);
                let lat = Lattice::of(g, &s, 1 << 22).unwrap();
                if !lat.big_pi().contains(0) {
                    d = d.max(len);
                }
                if !lat.big_pi_upto(m).contains(0) {
                    e = e.max(len);
                }
                if lat.is_atom() {
                    big_d = big_d.max(len);
                }
            }
        }
        (d, big_d, e + 1)
    }

    #[test]
    fn searches_match_brute_force() {
        for spec in ["C:1", "C:2", "C:3", "C:4", "C:2x2", "F:2,3", "C:6", "C:7", "D:8", "C:2x4", "C:2x2x2"] {
            let grp = g(spec);
            let (d, big_d, e) = brute(&grp);
            for aut in [false, true] {
                let cfg = SearchConfig { use_automorphisms: aut, ..Default::default() };
                let rd = small_davenport(&grp, &cfg, &Unlimited);
                let rbig = large_davenport(&grp, &cfg, &DHints::default(), &Unlimited);
                let re = eta(&grp, &cfg, &Unlimited);
                assert_eq!((rd.value, rbig.value, re.value), (d, big_d, e), "{spec}");
                assert!(rd.exhaustive && rbig.exhaustive && re.exhaustive);
                assert_eq!(rd.witness.len(), d);
                assert!(crate::lattice::is_product_one_free(&grp, &rd.witness, 1 << 22).unwrap());
                assert!(is_atom(&grp, &rbig.witness, 1 << 22).unwrap(), "{spec}");
                assert_eq!(re.witness.len(), e - 1);
            }
        }
    }

    #[test]
    fn witnesses_do_not_depend_on_symmetry_pruning() {
        for spec in ["F:2,3", "C:2x4", "D:8", "C:3x3"] {
            let grp = g(spec);
            let with = SearchConfig::default();
            let without = SearchConfig { use_automorphisms: false, ..Default::default() };
            assert_eq!(
                small_davenport(&grp, &with, &Unlimited).witness,
                small_davenport(&grp, &without, &Unlimited).witness
            );
            assert_eq!(
                large_davenport(&grp, &with, &DHints::default(), &Unlimited).witness,
                large_davenport(&grp, &without, &DHints::default(), &Unlimited).witness
            );
        }
    }

    #[test]
    fn hints_do_not_change_the_answer() {
        let grp = g("D:8");
        let cfg = SearchConfig::default();
        let plain = large_davenport(&grp, &cfg, &DHints::default(), &Unlimited);
        for upper in 1..=8 {
            let hints = DHints { upper: Some(upper), ..Default::default() };
            let r = large_davenport(&grp, &cfg, &hints, &Unlimited);
            assert_eq!(r.value, plain.value, "upper hint {upper}");
            assert_eq!(r.witness, plain.witness);
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn node_limit_gives_partial_results() {
        let grp = g("F:3,7");
        let cfg = SearchConfig::default();
        let r = small_davenport(&grp, &cfg, &NodeLimit::new(2000));
        assert!(!r.exhaustive);
        assert!(crate::lattice::is_product_one_free(&grp, &r.witness, 1 << 22).unwrap());
        let hints = DHints { upper: Some(14), ..Default::default() };
        let r = large_davenport(&grp, &cfg, &hints, &NodeLimit::new(2000));
        assert!(!r.exhaustive);
        assert_eq!(r.upper, Some(14));
        assert!(is_atom(&grp, &r.witness, 1 << 22).unwrap());
    }

    #[test]
    fn atoms_from_free_sequences() {
        let grp = g("F:2,5");
        let (a, t) = grp.metacyclic_generators().unwrap();
        let s = Sequence::from_terms(10, &[a, a, a, a, t]);
        assert!(crate::lattice::is_product_one_free(&grp, &s, 1 << 22).unwrap());
        let atom = atom_from_free(&grp, &s, 1 << 22).unwrap();
        assert_eq!(atom.len(), 6);
        assert!(is_atom(&grp, &atom, 1 << 22).unwrap());
        let _ = vec![0u8];
    }
}
