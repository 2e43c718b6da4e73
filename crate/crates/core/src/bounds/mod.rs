//! Closed-form bounds on d(G), D(G) and eta(G), and their comparison with
//! computed values.

mod facts;
mod verify;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::search::Invariant;

pub use facts::{GroupFacts, Presentation, SUBGROUP_LIMIT};
pub use verify::{compare, large_d_inputs, verify_group, BoundEntry, BoundReport, Check, EqualityStatus, Status, VerifyOptions};

/// A rational number `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn int(v: u64) -> Self {
        Rational { num: v, den: 1 }
    }

    pub fn new(num: u64, den: u64) -> Self {
        let g = crate::arith::gcd(num, den).max(1);
        Rational { num: num / g, den: den / g }
    }

    /// `self <= v` for an integer `v`.
    pub fn ge_int(&self, v: u64) -> bool {
        (v as u128) * (self.den as u128) <= self.num as u128
    }

    /// `self < v`
    pub fn lt_int(&self, v: u64) -> bool {
        !self.ge_int(v)
    }

    /// `self > v`
    pub fn gt_int(&self, v: u64) -> bool {
        (v as u128) * (self.den as u128) < self.num as u128
    }

    pub fn eq_int(&self, v: u64) -> bool {
        (v as u128) * (self.den as u128) == self.num as u128
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    BasicUpper,
    BasicLower,
    Commutator,
    CommutatorRefined,
    PGroup,
    PGroupNoncyclic,
    Nilpotent,
    DQuotient,
    FpqExactD,
    FpqExactSmallD,
    FpqEta,
    NearDihedralExactSmallD,
    TwoOverP,
    ThreeOverFour,
    MpnLower,
}

impl BoundId {
    pub const ALL: [BoundId; 15] = [
        BoundId::BasicUpper,
        BoundId::BasicLower,
        BoundId::Commutator,
        BoundId::CommutatorRefined,
        BoundId::PGroup,
        BoundId::PGroupNoncyclic,
        BoundId::Nilpotent,
        BoundId::DQuotient,
        BoundId::FpqExactD,
        BoundId::FpqExactSmallD,
        BoundId::FpqEta,
        BoundId::NearDihedralExactSmallD,
        BoundId::TwoOverP,
        BoundId::ThreeOverFour,
        BoundId::MpnLower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::BasicUpper => "basic_upper",
            BoundId::BasicLower => "basic_lower",
            BoundId::Commutator => "commutator",
            BoundId::CommutatorRefined => "commutator_refined",
            BoundId::PGroup => "pgroup",
            BoundId::PGroupNoncyclic => "pgroup_noncyclic",
            BoundId::Nilpotent => "nilpotent",
            BoundId::DQuotient => "d_quotient",
            BoundId::FpqExactD => "fpq_exact_D",
            BoundId::FpqExactSmallD => "fpq_exact_d",
            BoundId::FpqEta => "fpq_eta",
            BoundId::NearDihedralExactSmallD => "near_dihedral_exact_d",
            BoundId::TwoOverP => "two_over_p",
            BoundId::ThreeOverFour => "three_over_four",
            BoundId::MpnLower => "mpn_lower",
        }
    }

    pub fn from_name(s: &str) -> Option<BoundId> {
        BoundId::ALL.into_iter().find(|b| b.name() == s)
    }

    /// Invariant the bound constrains.
    pub fn target(self) -> Invariant {
        match self {
            BoundId::DQuotient | BoundId::FpqExactSmallD | BoundId::NearDihedralExactSmallD => {
                Invariant::SmallD
            }
            BoundId::FpqEta => Invariant::Eta,
            _ => Invariant::LargeD,
        }
    }

    pub fn relation(self) -> Relation {
        match self {
            BoundId::BasicLower | BoundId::MpnLower => Relation::AtLeast,
            BoundId::FpqExactD | BoundId::FpqExactSmallD | BoundId::NearDihedralExactSmallD => {
                Relation::Exactly
            }
            _ => Relation::AtMost,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtMost,
    AtLeast,
    Exactly,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Exactly => "=",
        }
    }
}

/// Known interval `[lo, hi]` for an invariant; `hi = None` means unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: Option<usize>,
}

impl Interval {
    pub fn exact(v: usize) -> Self {
        Interval { lo: v, hi: Some(v) }
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }
}

/// Invariants of the group and its subgroups that some bounds need.
#[derive(Debug, Clone, Default)]
pub struct BoundContext {
    pub small_d: Option<Interval>,
    /// `D(H)` for the maximal subgroups, aligned with
    /// [`GroupFacts::maximal_subgroups`].
    pub maximal_big_d: Vec<Option<Interval>>,
    /// `d(H)` for the kernels in [`GroupFacts::cp2_kernels`].
    pub kernel_small_d: Vec<Option<Interval>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub id: BoundId,
    pub value: Rational,
    /// True when some input was only known as an upper estimate, so the
    /// value is valid but possibly weaker than the exact formula.
    pub conditional: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("missing context: {0}")]
    MissingContext(String),
}

fn na<T>(why: &str) -> Result<T, BoundError> {
    Err(BoundError::NotApplicable(why.into()))
}

/// `(|G'|-2) / (p-1)` rounded down, the correction term shared by the
/// refined commutator bound.
fn refined_slack(derived: u64, p: u64) -> u64 {
    (derived - 2) / (p - 1)
}

/// Evaluate one bound. Upper bounds that take other invariants as input use
/// their upper estimates, so the value stays a valid bound when those are not
/// known exactly (flagged as `conditional`).
pub fn evaluate_bound(
    id: BoundId,
    facts: &GroupFacts,
    ctx: &BoundContext,
) -> Result<BoundValue, BoundError> {
    let n = facts.order as u64;
    let derived = facts.derived.order() as u64;
    let val = |v: Rational, detail: String| BoundValue { id, value: v, conditional: false, detail };
    match id {
        BoundId::BasicUpper => Ok(val(Rational::int(n), format!("|G| = {n}"))),
        BoundId::BasicLower => {
            let d = ctx.small_d.ok_or_else(|| BoundError::MissingContext("d(G)".into()))?;
            Ok(val(Rational::int(d.lo as u64 + 1), format!("d(G) + 1 with d(G) >= {}", d.lo)))
        }
        BoundId::Commutator => {
            let d = ctx.small_d.and_then(|d| d.hi).ok_or_else(|| {
                BoundError::MissingContext("upper value of d(G)".into())
            })? as u64;
            let mut v = val(
                Rational::int(d + 2 * derived - 1),
                format!("d(G) + 2|G'| - 1 = {d} + 2*{derived} - 1"),
            );
            v.conditional = !ctx.small_d.unwrap().is_exact();
            Ok(v)
        }
        BoundId::CommutatorRefined => {
            if facts.abelian {
                return na("G is abelian");
            }
            if !crate::arith::is_prime(derived) {
                return na("G' is not cyclic of prime order");
            }
            if !facts.subgroups_enumerated {
                return na("subgroup lattice too large to enumerate");
            }
            let p = facts.min_class_size.expect("non-abelian") as u64;
            let slack = refined_slack(derived, p);
            let d = ctx.small_d.and_then(|d| d.hi).ok_or_else(|| {
                BoundError::MissingContext("upper value of d(G)".into())
            })? as u64;
            let mut conditional = !ctx.small_d.unwrap().is_exact();
            let mut best = d + derived + slack;
            for (i, h) in facts.maximal_subgroups.iter().enumerate() {
                let est = ctx.maximal_big_d.get(i).copied().flatten();
                let dh = match est.and_then(|e| e.hi) {
                    Some(hi) => {
                        conditional |= !est.unwrap().is_exact();
                        hi as u64
                    }
                    None => {
                        conditional = true;
                        h.order() as u64
                    }
                };
                best = best.max((dh + derived + slack).saturating_sub(2));
            }
            Ok(BoundValue {
                id,
                value: Rational::int(best),
                conditional,
                detail: format!("p = {p}, |G'| = {derived}, {} maximal subgroups", facts.maximal_subgroups.len()),
            })
        }
        BoundId::PGroup => match facts.p_group {
            Some(p) if !facts.abelian => Ok(val(
                Rational::new((p * p + 2 * p - 2) * n, p * p * p),
                format!("(p^2+2p-2)/p^3 |G| with p = {p}"),
            )),
            Some(_) => na("G is abelian"),
            None => na("G is not a p-group"),
        },
        BoundId::PGroupNoncyclic => match facts.p_group {
            Some(p) if !facts.cyclic => Ok(val(
                Rational::new((2 * p - 1) * n, p * p),
                format!("(2p-1)/p^2 |G| with p = {p}"),
            )),
            Some(_) => na("G is cyclic"),
            None => na("G is not a p-group"),
        },
        BoundId::Nilpotent => {
            if facts.abelian {
                return na("G is abelian");
            }
            if !facts.nilpotent {
                return na("G is not nilpotent");
            }
            let p = facts.smallest_prime.unwrap();
            Ok(val(
                Rational::new((p * p + 2 * p - 2) * n, p * p * p),
                format!("(p^2+2p-2)/p^3 |G| with p = {p}"),
            ))
        }
        BoundId::DQuotient => {
            if !facts.subgroups_enumerated {
                return na("subgroup lattice too large to enumerate");
            }
            if facts.cp2_kernels.is_empty() {
                return na("no normal H with G/H = C_p^2");
            }
            let mut best: Option<(u64, bool, String)> = None;
            for (i, (h, p)) in facts.cp2_kernels.iter().enumerate() {
                let est = ctx.kernel_small_d.get(i).copied().flatten();
                let (dh, exact) = match est.and_then(|e| e.hi) {
                    Some(hi) => (hi as u64, est.unwrap().is_exact()),
                    // d(H) <= |H| - 1 always
                    None => (h.order() as u64 - 1, false),
                };
                let v = (dh + 2) * p - 2;
                if best.as_ref().is_none_or(|b| v < b.0) {
                    best = Some((v, !exact, format!("|H| = {}, p = {p}, d(H) <= {dh}", h.order())));
                }
            }
            let (v, conditional, detail) = best.unwrap();
            Ok(BoundValue { id, value: Rational::int(v), conditional, detail })
        }
        BoundId::FpqExactD => match facts.fpq {
            Some((p, q, _)) => Ok(val(Rational::int(2 * q), format!("2q with p = {p}, q = {q}"))),
            None => na("G is not F_pq"),
        },
        BoundId::FpqExactSmallD => match facts.fpq {
            Some((p, q, _)) => Ok(val(Rational::int(q + p - 2), format!("q + p - 2 with p = {p}, q = {q}"))),
            None => na("G is not F_pq"),
        },
        BoundId::FpqEta => match facts.fpq {
            Some((p, q, _)) => Ok(val(Rational::int(q + 2 * p - 3), format!("q + 2p - 3 with p = {p}, q = {q}"))),
            None => na("G is not F_pq"),
        },
        BoundId::NearDihedralExactSmallD => match facts.near_dihedral {
            Some((q, _)) => Ok(val(Rational::int(q + 2), format!("q + 2 with q = {q}"))),
            None => na("G is not near-dihedral"),
        },
        BoundId::TwoOverP => {
            if facts.cyclic {
                return na("G is cyclic");
            }
            let p = facts.smallest_prime.unwrap();
            Ok(val(Rational::new(2 * n, p), format!("2/p |G| with p = {p}")))
        }
        BoundId::ThreeOverFour => {
            if facts.cyclic {
                return na("G is cyclic");
            }
            if facts.dihedral_odd {
                return na("G is dihedral of order 2n with n odd");
            }
            Ok(val(Rational::new(3 * n, 4), "3/4 |G|".into()))
        }
        BoundId::MpnLower => match facts.mpn {
            Some((p, k, _)) => {
                let v = p.pow(k - 1) + p;
                Ok(val(Rational::int(v), format!("p^(n-1) + p with p = {p}, n = {k}")))
            }
            None => na("G is not M_{p^n}"),
        },
    }
}
