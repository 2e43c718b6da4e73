//! Product sets of sequences via dynamic programming over sub-multisets.
//!
//! For a sequence with support `x_1..x_k` and multiplicities `m_1..m_k`, every
//! sub-multiset `U` is a digit vector and gets the mixed-radix rank
//! `sum u_i * stride_i`. The table holds `f(U)`, the set of products of all
//! orderings of `U`, from `f(empty) = {1}` and
//! `f(U) = union over x in supp(U) of f(U - x) * x`.
//!
//! The last support element is the most significant digit, so appending a term
//! equal to or larger than every previous one only appends new states.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::ElementSet;
use crate::error::SeqError;
use crate::group::{Elem, FiniteGroup};
use crate::seq::Sequence;

/// Default cap on the number of lattice states.
pub const DEFAULT_DP_BUDGET: usize = 1 << 22;

#[derive(Clone)]
pub struct Lattice<'g> {
    g: &'g FiniteGroup,
    support: Vec<(Elem, u32)>,
    strides: Vec<usize>,
    f: Vec<ElementSet>,
    lens: Vec<u32>,
    budget: usize,
}

impl<'g> Lattice<'g> {
    pub fn new(g: &'g FiniteGroup, budget: usize) -> Self {
        Lattice {
            g,
            support: Vec::new(),
            strides: Vec::new(),
            f: vec![ElementSet::singleton(0)],
            lens: vec![0],
            budget,
        }
    }

    /// Lattice of a whole sequence.
    pub fn of(g: &'g FiniteGroup, s: &Sequence, budget: usize) -> Result<Self, SeqError> {
        let needed = s
            .multiplicities()
            .iter()
            .fold(1u64, |acc, &m| acc.saturating_mul(m as u64 + 1));
        if needed > budget as u64 {
            return Err(SeqError::BudgetExceeded { needed, budget: budget as u64 });
        }
        let mut lat = Lattice::new(g, budget);
        for x in s.terms() {
            lat.push(x)?;
        }
        Ok(lat)
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.g
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.support.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn states(&self) -> usize {
        self.f.len()
    }

    pub fn support(&self) -> &[(Elem, u32)] {
        &self.support
    }

    /// Rank of the full sequence.
    pub fn full(&self) -> usize {
        self.f.len() - 1
    }

    #[inline]
    pub fn set(&self, rank: usize) -> &ElementSet {
        &self.f[rank]
    }

    #[inline]
    pub fn state_len(&self, rank: usize) -> u32 {
        self.lens[rank]
    }

    /// Rank of the complementary sub-multiset.
    #[inline]
    pub fn complement(&self, rank: usize) -> usize {
        self.full() - rank
    }

    /// Largest element currently in the sequence.
    pub fn last(&self) -> Option<Elem> {
        self.support.last().map(|&(x, _)| x)
    }

    /// Append a term; `x` must be at least every term already present.
    /// Returns the rank range of the new states.
    pub fn push(&mut self, x: Elem) -> Result<core::ops::Range<usize>, SeqError> {
        let old = self.f.len();
        let base = match self.support.last_mut() {
            Some((y, m)) if *y == x => {
                *m += 1;
                *self.strides.last().unwrap()
            }
            Some(&mut (y, _)) if y > x => panic!("terms must be pushed in non-decreasing order"),
            _ => {
                self.support.push((x, 1));
                self.strides.push(old);
                old
            }
        };
        let new_len = old + base;
        if new_len > self.budget {
            self.undo_support();
            return Err(SeqError::BudgetExceeded {
                needed: new_len as u64,
                budget: self.budget as u64,
            });
        }
        let k = self.support.len() - 1;
        self.f.reserve(base);
        self.lens.reserve(base);
        for r in old..new_len {
            let low = r - old;
            let mut acc = self.g.right_mul_set(&self.f[r - base], x);
            for i in 0..k {
                let (y, m) = self.support[i];
                let digit = (low / self.strides[i]) % (m as usize + 1);
                if digit > 0 {
                    let prev = &self.f[r - self.strides[i]];
                    acc.union_with(&self.g.right_mul_set(prev, y));
                }
            }
            self.f.push(acc);
            self.lens.push(self.lens[r - base] + 1);
        }
        Ok(old..new_len)
    }

    fn undo_support(&mut self) {
        let (_, m) = self.support.last_mut().unwrap();
        *m -= 1;
        if *m == 0 {
            self.support.pop();
            self.strides.pop();
        }
    }

    /// Remove the most recently pushed term.
    pub fn pop(&mut self) {
        let base = *self.strides.last().expect("pop on empty lattice");
        let new_len = self.f.len() - base;
        self.f.truncate(new_len);
        self.lens.truncate(new_len);
        self.undo_support();
    }

    /// `pi(S)`: products of all orderings of the whole sequence.
    pub fn pi(&self) -> &ElementSet {
        &self.f[self.full()]
    }

    /// `Pi(S)`: union over nonempty sub-multisets.
    pub fn big_pi(&self) -> ElementSet {
        let mut out = ElementSet::new();
        for s in &self.f[1..] {
            out.union_with(s);
        }
        out
    }

    /// Union over sub-multisets of length `1..=n`.
    pub fn big_pi_upto(&self, n: usize) -> ElementSet {
        let mut out = ElementSet::new();
        for (s, &l) in self.f.iter().zip(self.lens.iter()).skip(1) {
            if l as usize <= n {
                out.union_with(s);
            }
        }
        out
    }

    /// Atom test for the whole sequence: nonempty, product-one, and no
    /// nonempty proper sub-multiset that is product-one together with its
    /// complement.
    pub fn is_atom(&self) -> bool {
        if self.is_empty() || !self.pi().contains(0) {
            return false;
        }
        let full = self.full();
        (1..full).all(|r| !(self.f[r].contains(0) && self.f[full - r].contains(0)))
    }

    /// Multiset of a rank, as a digit-by-support list of terms.
    pub fn terms_of(&self, rank: usize) -> Vec<Elem> {
        let mut out = Vec::new();
        for (i, &(x, m)) in self.support.iter().enumerate() {
            let d = (rank / self.strides[i]) % (m as usize + 1);
            out.extend(core::iter::repeat_n(x, d));
        }
        out
    }

    /// An ordering of the sub-multiset `rank` whose product is `target`.
    pub fn ordering(&self, rank: usize, target: Elem) -> Option<Vec<Elem>> {
        if !self.f[rank].contains(target) {
            return None;
        }
        let mut rank = rank;
        let mut target = target;
        let mut rev = Vec::with_capacity(self.lens[rank] as usize);
        while rank != 0 {
            let mut step = None;
            for (i, &(x, m)) in self.support.iter().enumerate() {
                let d = (rank / self.strides[i]) % (m as usize + 1);
                if d == 0 {
                    continue;
                }
                let prev = rank - self.strides[i];
                let t = self.g.mul(target, self.g.inv(x));
                if self.f[prev].contains(t) {
                    step = Some((prev, t, x));
                    break;
                }
            }
            let (prev, t, x) = step.expect("table is consistent");
            rev.push(x);
            rank = prev;
            target = t;
        }
        rev.reverse();
        Some(rev)
    }
}

pub fn pi_set(g: &FiniteGroup, s: &Sequence, budget: usize) -> Result<ElementSet, SeqError> {
    Ok(*Lattice::of(g, s, budget)?.pi())
}

pub fn big_pi(g: &FiniteGroup, s: &Sequence, budget: usize) -> Result<ElementSet, SeqError> {
    Ok(Lattice::of(g, s, budget)?.big_pi())
}

pub fn big_pi_upto(
    g: &FiniteGroup,
    s: &Sequence,
    n: usize,
    budget: usize,
) -> Result<ElementSet, SeqError> {
    Ok(Lattice::of(g, s, budget)?.big_pi_upto(n))
}

/// The empty sequence counts as product-one.
pub fn is_product_one(g: &FiniteGroup, s: &Sequence, budget: usize) -> Result<bool, SeqError> {
    Ok(pi_set(g, s, budget)?.contains(0))
}

pub fn is_product_one_free(
    g: &FiniteGroup,
    s: &Sequence,
    budget: usize,
) -> Result<bool, SeqError> {
    Ok(!big_pi(g, s, budget)?.contains(0))
}

pub fn is_atom(g: &FiniteGroup, s: &Sequence, budget: usize) -> Result<bool, SeqError> {
    Ok(Lattice::of(g, s, budget)?.is_atom())
}

/// An ordering of `s` with product `target`, if one exists.
pub fn find_ordering(
    g: &FiniteGroup,
    s: &Sequence,
    target: Elem,
    budget: usize,
) -> Result<Option<Vec<Elem>>, SeqError> {
    let lat = Lattice::of(g, s, budget)?;
    Ok(lat.ordering(lat.full(), target))
}
