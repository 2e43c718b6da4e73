//! Compare every applicable bound with computed invariants.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::{evaluate_bound, BoundContext, BoundError, BoundId, GroupFacts, Interval, Rational, Relation};
use crate::group::FiniteGroup;
use crate::lattice::{self, Lattice, DEFAULT_DP_BUDGET};
use crate::search::{DHints, Invariant, InvariantResult, Solver};
use crate::seq::Sequence;
use crate::witness::{fpq_atom_terms, fpq_free_terms, mpn_atom_terms, near_dihedral_free_terms, Claim};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Violated,
    /// The computed invariants are not precise enough to decide.
    Unchecked,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Unchecked => "unchecked",
        }
    }
}

/// Whether an upper bound is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityStatus {
    Equal,
    Strict,
    Undetermined,
}

impl EqualityStatus {
    pub fn name(self) -> &'static str {
        match self {
            EqualityStatus::Equal => "equal",
            EqualityStatus::Strict => "strict",
            EqualityStatus::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub id: BoundId,
    pub applicable: bool,
    /// Why the bound was not evaluated.
    pub reason: Option<String>,
    pub value: Option<Rational>,
    pub conditional: bool,
    pub detail: String,
    /// `None` when not applicable.
    pub status: Option<Status>,
    pub equality: Option<EqualityStatus>,
}

/// An independent check of a witness or a structural identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub label: String,
    pub order: usize,
    pub small_d: InvariantResult,
    pub large_d: InvariantResult,
    pub eta: InvariantResult,
    pub entries: Vec<BoundEntry>,
    pub checks: Vec<Check>,
    pub violations: Vec<String>,
}

impl BoundReport {
    pub fn result(&self, inv: Invariant) -> &InvariantResult {
        match inv {
            Invariant::SmallD => &self.small_d,
            Invariant::LargeD => &self.large_d,
            Invariant::Eta => &self.eta,
        }
    }

    pub fn entry(&self, id: BoundId) -> &BoundEntry {
        self.entries.iter().find(|e| e.id == id).expect("every bound has an entry")
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Random sequences of length eta drawn to test the eta value.
    pub eta_samples: usize,
    pub dp_budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { eta_samples: 200, dp_budget: DEFAULT_DP_BUDGET }
    }
}

fn interval(r: &InvariantResult) -> Interval {
    let (lo, hi) = r.interval();
    Interval { lo, hi }
}

/// Compare a bound value with the interval known for the invariant.
pub fn compare(relation: Relation, value: Rational, known: Interval) -> (Status, EqualityStatus) {
    let status = match relation {
        Relation::AtMost => match known.hi {
            Some(hi) if value.ge_int(hi as u64) => Status::Holds,
            _ if value.lt_int(known.lo as u64) => Status::Violated,
            _ => Status::Unchecked,
        },
        Relation::AtLeast => {
            if !value.gt_int(known.lo as u64) {
                Status::Holds
            } else if known.hi.is_some_and(|hi| value.gt_int(hi as u64)) {
                Status::Violated
            } else {
                Status::Unchecked
            }
        }
        Relation::Exactly => {
            let outside = value.lt_int(known.lo as u64) || known.hi.is_some_and(|hi| value.gt_int(hi as u64));
            if outside || (known.is_exact() && !value.eq_int(known.lo as u64)) {
                Status::Violated
            } else if known.is_exact() {
                Status::Holds
            } else {
                Status::Unchecked
            }
        }
    };
    let equality = if known.is_exact() {
        if value.eq_int(known.lo as u64) {
            EqualityStatus::Equal
        } else {
            EqualityStatus::Strict
        }
    } else if relation == Relation::AtMost && known.hi.is_some_and(|hi| value.gt_int(hi as u64)) {
        EqualityStatus::Strict
    } else {
        EqualityStatus::Undetermined
    };
    (status, equality)
}

/// Smallest integer upper bound on D(G) among the applicable bounds.
fn d_upper_hint(facts: &GroupFacts, ctx: &BoundContext) -> Option<usize> {
    BoundId::ALL
        .into_iter()
        .filter(|id| id.target() == Invariant::LargeD && id.relation() != Relation::AtLeast)
        .filter_map(|id| evaluate_bound(id, facts, ctx).ok())
        .map(|v| v.value.floor() as usize)
        .min()
}

/// `D(H)` for a subgroup, computed with its own bound hints.
fn subgroup_large_d<S: Solver + ?Sized>(h: &FiniteGroup, solver: &S) -> Interval {
    let facts = GroupFacts::new(h);
    let d = solver.small_davenport(h);
    let ctx = BoundContext { small_d: Some(interval(&d)), ..Default::default() };
    let hints = DHints { upper: d_upper_hint(&facts, &ctx), atoms: Vec::new(), free: alloc::vec![d.witness] };
    interval(&solver.large_davenport(h, &hints))
}

struct FamilyWitness {
    name: &'static str,
    sequence: Sequence,
    claim: Claim,
    expected_len: usize,
}

/// The explicit constructions, built from generators found inside `g`.
fn family_witnesses(g: &FiniteGroup, facts: &GroupFacts) -> Vec<FamilyWitness> {
    let n = g.order();
    let mut out = Vec::new();
    if let Some((p, q, pr)) = facts.fpq {
        out.push(FamilyWitness {
            name: "fpq_atom",
            sequence: Sequence::from_terms(n, &fpq_atom_terms(g, pr.a, pr.t, p, q, pr.r)),
            claim: Claim::Atom,
            expected_len: 2 * q as usize,
        });
        out.push(FamilyWitness {
            name: "fpq_free",
            sequence: Sequence::from_terms(n, &fpq_free_terms(g, pr.a, pr.t, p, q)),
            claim: Claim::ProductOneFree,
            expected_len: (q + p - 2) as usize,
        });
    }
    if let Some((p, k, pr)) = facts.mpn {
        out.push(FamilyWitness {
            name: "mpn_atom",
            sequence: Sequence::from_terms(n, &mpn_atom_terms(g, pr.a, pr.t, p, k)),
            claim: Claim::Atom,
            expected_len: (p.pow(k - 1) + p) as usize,
        });
    }
    if let Some((q, pr)) = facts.near_dihedral {
        out.push(FamilyWitness {
            name: "near_dihedral_free",
            sequence: Sequence::from_terms(n, &near_dihedral_free_terms(pr.a, pr.t, q)),
            claim: Claim::ProductOneFree,
            expected_len: (q + 2) as usize,
        });
    }
    out
}

/// Bound context and D search hints for `g`, given its computed `d(G)`.
///
/// Subgroup invariants needed by the bounds are computed through `solver`;
/// the hints carry the tightest applicable upper bound on D(G) and the family
/// witnesses found inside `g`.
pub fn large_d_inputs<S: Solver + ?Sized>(
    g: &FiniteGroup,
    facts: &GroupFacts,
    solver: &S,
    small_d: &InvariantResult,
) -> (BoundContext, DHints) {
    let mut ctx = BoundContext { small_d: Some(interval(small_d)), ..Default::default() };
    let refined = evaluate_bound(BoundId::CommutatorRefined, facts, &BoundContext {
        small_d: Some(Interval::exact(0)),
        ..Default::default()
    });
    if refined.is_ok() {
        ctx.maximal_big_d = facts
            .maximal_subgroups
            .iter()
            .map(|h| Some(subgroup_large_d(&h.to_group(g).0, solver)))
            .collect();
    }
    ctx.kernel_small_d = facts
        .cp2_kernels
        .iter()
        .map(|(h, _)| Some(interval(&solver.small_davenport(&h.to_group(g).0))))
        .collect();

    let mut hints = DHints { upper: d_upper_hint(facts, &ctx), atoms: Vec::new(), free: alloc::vec![small_d.witness.clone()] };
    for w in family_witnesses(g, facts) {
        match w.claim {
            Claim::Atom => hints.atoms.push(w.sequence),
            Claim::ProductOneFree => hints.free.push(w.sequence),
        }
    }
    (ctx, hints)
}

fn check(name: impl Into<String>, ok: Option<bool>, detail: String) -> Check {
    let status = match ok {
        Some(true) => Status::Holds,
        Some(false) => Status::Violated,
        None => Status::Unchecked,
    };
    Check { name: name.into(), status, detail }
}

/// Does `s` contain a nonempty product-one subsequence of length at most `m`?
fn has_short_product_one(g: &FiniteGroup, s: &Sequence, m: usize, budget: usize) -> Option<bool> {
    let lat = Lattice::of(g, s, budget).ok()?;
    Some(lat.big_pi_upto(m).contains(g.identity()))
}

fn uniform(rng: &mut (impl RngCore + ?Sized), n: usize) -> usize {
    let n = n as u32;
    let zone = u32::MAX - u32::MAX % n;
    loop {
        let v = rng.next_u32();
        if v < zone {
            return (v % n) as usize;
        }
    }
}

fn witness_checks(g: &FiniteGroup, d: &InvariantResult, big: &InvariantResult, eta: &InvariantResult, budget: usize) -> Vec<Check> {
    let maxord = g.max_element_order() as usize;
    let free = lattice::is_product_one_free(g, &d.witness, budget).ok();
    let atom = lattice::is_atom(g, &big.witness, budget).ok();
    let short = has_short_product_one(g, &eta.witness, maxord, budget);
    alloc::vec![
        check(
            "d_witness",
            free.map(|f| f && d.witness.len() == d.value),
            format!("length {} product-one-free", d.witness.len()),
        ),
        check(
            "D_witness",
            atom.map(|a| a && big.witness.len() == big.value),
            format!("length {} atom", big.witness.len()),
        ),
        check(
            "eta_witness",
            short.map(|s| !s && eta.witness.len() + 1 == eta.value),
            format!("length {} without product-one subsequence of length <= {maxord}", eta.witness.len()),
        ),
    ]
}

/// Compute d, D and eta, evaluate every bound and check every witness.
///
/// Witnesses are re-checked through the product-set machinery rather than
/// trusted, and eta is tested on random sequences of length eta.
pub fn verify_group<S: Solver + ?Sized, R: RngCore + ?Sized>(
    g: &FiniteGroup,
    solver: &S,
    rng: &mut R,
    opts: &VerifyOptions,
) -> BoundReport {
    let facts = GroupFacts::new(g);
    let budget = opts.dp_budget;
    let small_d = solver.small_davenport(g);
    let eta = solver.eta(g);

    let (ctx, hints) = large_d_inputs(g, &facts, solver, &small_d);
    let family = family_witnesses(g, &facts);
    let large_d = solver.large_davenport(g, &hints);

    let mut known_small = interval(&small_d);
    if known_small.hi.is_none() {
        known_small.hi = large_d.interval().1.map(|h| h - 1);
    }
    let known = |inv: Invariant| match inv {
        Invariant::SmallD => known_small,
        Invariant::LargeD => interval(&large_d),
        Invariant::Eta => interval(&eta),
    };

    let entries: Vec<BoundEntry> = BoundId::ALL
        .into_iter()
        .map(|id| match evaluate_bound(id, &facts, &ctx) {
            Ok(v) => {
                let (status, equality) = compare(id.relation(), v.value, known(id.target()));
                BoundEntry {
                    id,
                    applicable: true,
                    reason: None,
                    value: Some(v.value),
                    conditional: v.conditional,
                    detail: v.detail,
                    status: Some(status),
                    equality: Some(equality),
                }
            }
            Err(e) => BoundEntry {
                id,
                applicable: false,
                reason: Some(match e {
                    BoundError::NotApplicable(s) | BoundError::MissingContext(s) => s,
                }),
                value: None,
                conditional: false,
                detail: String::new(),
                status: None,
                equality: None,
            },
        })
        .collect();

    let mut checks = witness_checks(g, &small_d, &large_d, &eta, budget);
    for w in &family {
        let ok = match w.claim {
            Claim::Atom => lattice::is_atom(g, &w.sequence, budget).ok(),
            Claim::ProductOneFree => lattice::is_product_one_free(g, &w.sequence, budget).ok(),
        };
        let what = match w.claim {
            Claim::Atom => "atom",
            Claim::ProductOneFree => "product-one-free",
        };
        checks.push(check(
            w.name,
            ok.map(|ok| ok && w.sequence.len() == w.expected_len),
            format!("length {} {what}, expected length {}", w.sequence.len(), w.expected_len),
        ));
    }

    if eta.exhaustive {
        let maxord = g.max_element_order() as usize;
        let mut failures = 0usize;
        let mut undecided = false;
        for _ in 0..opts.eta_samples {
            let terms: Vec<usize> = (0..eta.value).map(|_| uniform(rng, g.order())).collect();
            match has_short_product_one(g, &Sequence::from_terms(g.order(), &terms), maxord, budget) {
                Some(true) => {}
                Some(false) => failures += 1,
                None => undecided = true,
            }
        }
        let ok = if failures > 0 { Some(false) } else if undecided { None } else { Some(true) };
        checks.push(check(
            "eta_sampling",
            ok,
            format!("{} random sequences of length {}, {failures} without short product-one subsequence", opts.eta_samples, eta.value),
        ));
    }

    if facts.abelian {
        let ok = (small_d.exhaustive && large_d.exhaustive).then(|| large_d.value == small_d.value + 1);
        checks.push(check("abelian_D_eq_d_plus_1", ok, format!("d = {}, D = {}", small_d.value, large_d.value)));
    }

    let comm = entries.iter().find(|e| e.id == BoundId::Commutator).unwrap();
    if let Some(eq) = comm.equality {
        let ok = match eq {
            EqualityStatus::Equal => Some(facts.abelian),
            EqualityStatus::Strict => Some(!facts.abelian),
            EqualityStatus::Undetermined => None,
        };
        checks.push(check(
            "commutator_equality",
            ok,
            format!("{} with abelian = {}", eq.name(), facts.abelian),
        ));
    }

    let mut violations = Vec::new();
    for e in &entries {
        if e.status == Some(Status::Violated) {
            let rel = e.id.relation().symbol();
            let v = known(e.id.target());
            violations.push(format!(
                "{}: {} {rel} {} but {} in [{}, {}]",
                e.id,
                e.id.target().symbol(),
                e.value.unwrap(),
                e.id.target().symbol(),
                v.lo,
                v.hi.map_or(String::from("?"), |h| format!("{h}")),
            ));
        }
    }
    for c in &checks {
        if c.status == Status::Violated {
            violations.push(format!("{}: {}", c.name, c.detail));
        }
    }

    BoundReport {
        label: String::from(g.label()),
        order: g.order(),
        small_d,
        large_d,
        eta,
        entries,
        checks,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::search::SequentialSolver;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn report(s: &str) -> BoundReport {
        let g = s.parse::<GroupSpec>().unwrap().build().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        verify_group(&g, &SequentialSolver::default(), &mut rng, &VerifyOptions::default())
    }

    fn status(r: &BoundReport, id: BoundId) -> Option<Status> {
        r.entry(id).status
    }

    #[test]
    fn fpq_2_3() {
        let r = report("F:2,3");
        assert_eq!((r.small_d.value, r.large_d.value), (3, 6));
        assert!(r.small_d.exhaustive && r.large_d.exhaustive);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        for id in [BoundId::FpqExactD, BoundId::FpqExactSmallD] {
            assert_eq!(status(&r, id), Some(Status::Holds));
            assert_eq!(r.entry(id).equality, Some(EqualityStatus::Equal));
        }
        assert!(r.checks.iter().all(|c| c.status == Status::Holds), "{:?}", r.checks);
    }

    #[test]
    fn trivial_group() {
        let r = report("C:1");
        assert_eq!((r.small_d.value, r.large_d.value, r.eta.value), (0, 1, 1));
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn abelian_sweep_has_commutator_equality() {
        for s in ["C:2", "C:6", "C:2x2", "C:2x4"] {
            let r = report(s);
            assert!(r.violations.is_empty(), "{s}: {:?}", r.violations);
            assert_eq!(r.entry(BoundId::Commutator).equality, Some(EqualityStatus::Equal), "{s}");
            assert!(!r.entry(BoundId::PGroup).applicable);
        }
    }

    #[test]
    fn nonabelian_small() {
        for s in ["D:8", "MC:4,2,3", "F:2,5", "MC:3,4,2"] {
            let r = report(s);
            assert!(r.violations.is_empty(), "{s}: {:?}", r.violations);
            assert_eq!(r.entry(BoundId::Commutator).equality, Some(EqualityStatus::Strict), "{s}");
            assert!(r.checks.iter().all(|c| c.status == Status::Holds), "{s}: {:?}", r.checks);
        }
    }

    #[test]
    fn comparison_rules() {
        let iv = |lo, hi| Interval { lo, hi };
        let r = Rational::int;
        assert_eq!(compare(Relation::AtMost, r(6), iv(6, Some(6))), (Status::Holds, EqualityStatus::Equal));
        assert_eq!(compare(Relation::AtMost, r(6), iv(4, Some(8))).0, Status::Unchecked);
        assert_eq!(compare(Relation::AtMost, r(6), iv(7, None)).0, Status::Violated);
        assert_eq!(compare(Relation::AtMost, Rational::new(27, 2), iv(13, Some(13))).1, EqualityStatus::Strict);
        assert_eq!(compare(Relation::AtLeast, r(12), iv(12, None)).0, Status::Holds);
        assert_eq!(compare(Relation::AtLeast, r(12), iv(10, Some(11))).0, Status::Violated);
        assert_eq!(compare(Relation::Exactly, r(14), iv(14, Some(14))).0, Status::Holds);
        assert_eq!(compare(Relation::Exactly, r(14), iv(12, None)).0, Status::Unchecked);
        assert_eq!(compare(Relation::Exactly, r(14), iv(15, None)).0, Status::Violated);
    }
}
