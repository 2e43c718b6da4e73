//! Explicit extremal sequences for the metacyclic families.

use alloc::vec::Vec;

use crate::error::GroupError;
use crate::group::{Elem, FiniteGroup, GroupSpec};
use crate::seq::Sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Atom of length `2q` in `F_pq`.
    FpqAtom { p: u64, q: u64, r: Option<u64> },
    /// Product-one-free sequence of length `q + p - 2` in `F_pq`.
    FpqFree { p: u64, q: u64 },
    /// Atom of length `p^(n-1) + p` in `M_{p^n}`.
    MpnAtom { p: u64, n: u32 },
    /// Product-one-free sequence of length `q + 2` in the near-dihedral group.
    NearDihedralFree { q: u64 },
}

/// What a witness is supposed to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    Atom,
    ProductOneFree,
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub group: FiniteGroup,
    pub sequence: Sequence,
    pub claim: Claim,
    /// Length the construction is supposed to have.
    pub expected_len: usize,
}

impl WitnessKind {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessKind::FpqAtom { .. } => "fpq_atom",
            WitnessKind::FpqFree { .. } => "fpq_free",
            WitnessKind::MpnAtom { .. } => "mpn_atom",
            WitnessKind::NearDihedralFree { .. } => "near_dihedral_free",
        }
    }

    /// Parse a kind name and its numeric parameters.
    pub fn parse(kind: &str, params: &[u64]) -> Result<WitnessKind, GroupError> {
        let bad = || GroupError::InvalidParameters(alloc::format!("bad parameters for {kind}"));
        Ok(match (kind, params) {
            ("fpq_atom", &[p, q]) => WitnessKind::FpqAtom { p, q, r: None },
            ("fpq_atom", &[p, q, r]) => WitnessKind::FpqAtom { p, q, r: Some(r) },
            ("fpq_free", &[p, q]) => WitnessKind::FpqFree { p, q },
            ("mpn_atom", &[p, n]) => WitnessKind::MpnAtom { p, n: u32::try_from(n).map_err(|_| bad())? },
            ("near_dihedral_free", &[q]) => WitnessKind::NearDihedralFree { q },
            ("fpq_atom" | "fpq_free" | "mpn_atom" | "near_dihedral_free", _) => return Err(bad()),
            _ => return Err(GroupError::InvalidParameters(alloc::format!("unknown witness kind {kind}"))),
        })
    }

    pub fn spec(&self) -> GroupSpec {
        match *self {
            WitnessKind::FpqAtom { p, q, r } => GroupSpec::Fpq { p, q, r },
            WitnessKind::FpqFree { p, q } => GroupSpec::Fpq { p, q, r: None },
            WitnessKind::MpnAtom { p, n } => GroupSpec::Mpn { p, n },
            WitnessKind::NearDihedralFree { q } => GroupSpec::NearDihedral(q),
        }
    }

    /// Build the group and the sequence.
    pub fn build(&self) -> Result<Witness, GroupError> {
        let group = self.spec().build()?;
        let (a, t) = group.metacyclic_generators().expect("metacyclic family");
        let r = match group.family() {
            crate::group::Family::Metacyclic { r, .. } => *r,
            _ => unreachable!(),
        };
        let (terms, claim, expected_len) = match *self {
            WitnessKind::FpqAtom { p, q, .. } => (
                fpq_atom_terms(&group, a, t, p, q, r),
                Claim::Atom,
                2 * q as usize,
            ),
            WitnessKind::FpqFree { p, q } => {
                (fpq_free_terms(&group, a, t, p, q), Claim::ProductOneFree, (q + p - 2) as usize)
            }
            WitnessKind::MpnAtom { p, n } => {
                let big = p.pow(n - 1);
                (mpn_atom_terms(&group, a, t, p, n), Claim::Atom, (big + p) as usize)
            }
            WitnessKind::NearDihedralFree { q } => {
                (near_dihedral_free_terms(a, t, q), Claim::ProductOneFree, (q + 2) as usize)
            }
        };
        let sequence = Sequence::from_terms(group.order(), &terms);
        Ok(Witness { group, sequence, claim, expected_len })
    }
}

fn rep(x: Elem, k: u64) -> impl Iterator<Item = Elem> {
    core::iter::repeat_n(x, k as usize)
}

/// `t^(p-1) . a^[q-1] . t a^(r+1) . a^[q-1]` for generators `a` (order q)
/// and `t` (order p) with `a t = t a^r`.
pub fn fpq_atom_terms(g: &FiniteGroup, a: Elem, t: Elem, p: u64, q: u64, r: u64) -> Vec<Elem> {
    let mut v = Vec::new();
    v.push(g.pow(t, p - 1));
    v.extend(rep(a, q - 1));
    v.push(g.mul(t, g.pow(a, r + 1)));
    v.extend(rep(a, q - 1));
    v
}

/// `a^[q-1] . t^[p-1]`
pub fn fpq_free_terms(_g: &FiniteGroup, a: Elem, t: Elem, p: u64, q: u64) -> Vec<Elem> {
    rep(a, q - 1).chain(rep(t, p - 1)).collect()
}

/// `t^(p-1) a . a^[p-1] . t a^(1-p) . a^[p^(n-1)-1]` for `a` of order
/// `p^(n-1)` and `t` of order `p`.
pub fn mpn_atom_terms(g: &FiniteGroup, a: Elem, t: Elem, p: u64, n: u32) -> Vec<Elem> {
    let big = p.pow(n - 1);
    let mut v = Vec::new();
    v.push(g.mul(g.pow(t, p - 1), a));
    v.extend(rep(a, p - 1));
    // a^(1-p) = a^(big + 1 - p)
    v.push(g.mul(t, g.pow(a, big + 1 - p)));
    v.extend(rep(a, big - 1));
    v
}

/// `a^[q-1] . t^[3]`
pub fn near_dihedral_free_terms(a: Elem, t: Elem, q: u64) -> Vec<Elem> {
    rep(a, q - 1).chain(rep(t, 3)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{is_atom, is_product_one_free, DEFAULT_DP_BUDGET};

    fn check(kind: WitnessKind) -> Witness {
        let w = kind.build().unwrap();
        assert_eq!(w.sequence.len(), w.expected_len, "{kind:?}");
        let ok = match w.claim {
            Claim::Atom => is_atom(&w.group, &w.sequence, DEFAULT_DP_BUDGET).unwrap(),
            Claim::ProductOneFree => is_product_one_free(&w.group, &w.sequence, DEFAULT_DP_BUDGET).unwrap(),
        };
        assert!(ok, "{kind:?}");
        w
    }

    #[test]
    fn family_witnesses() {
        check(WitnessKind::FpqAtom { p: 2, q: 3, r: None });
        check(WitnessKind::FpqAtom { p: 3, q: 7, r: Some(2) });
        check(WitnessKind::FpqAtom { p: 3, q: 7, r: Some(4) });
        check(WitnessKind::FpqFree { p: 2, q: 3 });
        check(WitnessKind::FpqFree { p: 3, q: 7 });
        check(WitnessKind::NearDihedralFree { q: 5 });
        let m = check(WitnessKind::MpnAtom { p: 3, n: 3 });
        assert_eq!(m.sequence.len(), 12);
        check(WitnessKind::MpnAtom { p: 2, n: 4 });
    }

    #[test]
    fn fpq_atom_product_is_one_in_written_order() {
        let w = WitnessKind::FpqAtom { p: 3, q: 7, r: None }.build().unwrap();
        let (a, t) = w.group.metacyclic_generators().unwrap();
        let terms = fpq_atom_terms(&w.group, a, t, 3, 7, 2);
        assert_eq!(w.group.product(&terms), 0);
    }

    #[test]
    fn parse_kinds() {
        assert_eq!(WitnessKind::parse("fpq_atom", &[3, 7]).unwrap(), WitnessKind::FpqAtom { p: 3, q: 7, r: None });
        assert!(WitnessKind::parse("fpq_atom", &[3]).is_err());
        assert!(WitnessKind::parse("nope", &[3]).is_err());
        assert!(WitnessKind::parse("fpq_free", &[3, 5]).unwrap().build().is_err());
    }
}
