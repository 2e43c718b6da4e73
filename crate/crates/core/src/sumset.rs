//! Subsets of `Z/pZ` for small primes `p` and their sumsets.

use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{is_prime, mult_order};

/// Largest supported modulus.
pub const MAX_PRIME: u32 = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SumsetError {
    #[error("{0} is not a prime at most 127")]
    BadModulus(u32),
    #[error("moduli {0} and {1} differ")]
    ModulusMismatch(u32, u32),
    #[error("both sets need at least two elements")]
    TooSmall,
    #[error("{r} does not have multiplicative order {p} modulo {q}")]
    BadOrder { r: u32, p: u32, q: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    p: u32,
    mask: u128,
}

impl PrimeSet {
    pub fn empty(p: u32) -> Result<Self, SumsetError> {
        if p > MAX_PRIME || !is_prime(p as u64) {
            return Err(SumsetError::BadModulus(p));
        }
        Ok(PrimeSet { p, mask: 0 })
    }

    /// Residues are reduced modulo `p`.
    pub fn new(p: u32, members: impl IntoIterator<Item = u32>) -> Result<Self, SumsetError> {
        let mut s = PrimeSet::empty(p)?;
        for x in members {
            s.insert(x);
        }
        Ok(s)
    }

    fn full_mask(p: u32) -> u128 {
        (1u128 << p) - 1
    }

    /// Bit mask of the members (bit `i` for residue `i`).
    pub fn from_mask(p: u32, mask: u128) -> Result<Self, SumsetError> {
        let s = PrimeSet::empty(p)?;
        Ok(PrimeSet { mask: mask & Self::full_mask(p), ..s })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn insert(&mut self, x: u32) {
        self.mask |= 1 << (x % self.p);
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask >> (x % self.p) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn members(&self) -> Vec<u32> {
        (0..self.p).filter(|&x| self.contains(x)).collect()
    }

    /// `{x + c}`
    pub fn shift(&self, c: u32) -> PrimeSet {
        let c = c % self.p;
        let m = self.mask;
        let rot = if c == 0 { m } else { ((m << c) | (m >> (self.p - c))) & Self::full_mask(self.p) };
        PrimeSet { p: self.p, mask: rot }
    }

    /// `{c * x}`
    pub fn scale(&self, c: u32) -> PrimeSet {
        let mut out = PrimeSet { p: self.p, mask: 0 };
        for x in self.members() {
            out.insert((x as u64 * c as u64 % self.p as u64) as u32);
        }
        out
    }

    /// `{a + b : a in A, b in B}`
    pub fn sumset(&self, other: &PrimeSet) -> Result<PrimeSet, SumsetError> {
        if self.p != other.p {
            return Err(SumsetError::ModulusMismatch(self.p, other.p));
        }
        let mut out = PrimeSet { p: self.p, mask: 0 };
        for b in other.members() {
            out.mask |= self.shift(b).mask;
        }
        Ok(out)
    }

    /// A difference `d` in `[1, (p-1)/2]` such that the set is
    /// `{a, a + d, ..., a + l d}`, if there is one. Sets with at most one
    /// element and the full group are progressions of difference 1.
    pub fn progression_difference(&self) -> Option<u32> {
        let n = self.len() as u32;
        if n <= 1 || n == self.p {
            return Some(1);
        }
        // A is an AP of difference d iff |A ∩ (A + d)| = |A| - 1
        (1..=(self.p - 1) / 2).find(|&d| (self.mask & self.shift(d).mask).count_ones() == n - 1)
    }

    pub fn is_arithmetic_progression(&self) -> bool {
        self.progression_difference().is_some()
    }

    /// All differences `d` in `[1, p-1]` for which the set is a progression.
    pub fn progression_differences(&self) -> Vec<u32> {
        let n = self.len() as u32;
        if n <= 1 || n == self.p {
            return (1..self.p).collect();
        }
        (1..self.p).filter(|&d| (self.mask & self.shift(d).mask).count_ones() == n - 1).collect()
    }
}

/// Sumset size lower bound `min(p, |A| + |B| - 1)` for nonempty sets.
pub fn cauchy_davenport_bound(a: &PrimeSet, b: &PrimeSet) -> usize {
    (a.p as usize).min(a.len() + b.len() - 1)
}

/// Whether `|A + B| < min(p - 1, |A| + |B|)` forces `A` and `B` to be
/// progressions with a common difference (true when the hypothesis fails).
pub fn vosper_check(a: &PrimeSet, b: &PrimeSet) -> Result<bool, SumsetError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(SumsetError::TooSmall);
    }
    let s = a.sumset(b)?;
    let limit = (a.p as usize - 1).min(a.len() + b.len());
    if s.len() >= limit {
        return Ok(true);
    }
    let da = a.progression_differences();
    let db = b.progression_differences();
    Ok(da.iter().any(|d| db.contains(d)))
}

/// Which `r`-orbits of `Z/qZ` to take: optionally `{0}`, plus the orbits
/// `g {1, r, ..., r^(p-1)}` of the listed `g`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrbitSelection {
    pub zero: bool,
    pub reps: Vec<u32>,
}

/// Union of the selected orbits of multiplication by `r`, which must have
/// multiplicative order `p` modulo `q`.
pub fn orbit_union_sets(q: u32, p: u32, r: u32, sel: &OrbitSelection) -> Result<PrimeSet, SumsetError> {
    let mut out = PrimeSet::empty(q)?;
    if mult_order(r as u64, q as u64) != Some(p as u64) {
        return Err(SumsetError::BadOrder { r, p, q });
    }
    if sel.zero {
        out.insert(0);
    }
    for &g in &sel.reps {
        let mut x = g % q;
        for _ in 0..p {
            out.insert(x);
            x = (x as u64 * r as u64 % q as u64) as u32;
        }
    }
    Ok(out)
}

/// One representative (the smallest member) per nonzero orbit of
/// multiplication by `r` modulo `q`.
pub fn orbit_representatives(q: u32, r: u32) -> Vec<u32> {
    let mut seen = alloc::vec![false; q as usize];
    let mut reps = Vec::new();
    for g in 1..q {
        if seen[g as usize] {
            continue;
        }
        reps.push(g);
        let mut x = g;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = (x as u64 * r as u64 % q as u64) as u32;
        }
    }
    reps
}
