//! Block factorization of ordered sequences in non-abelian groups.
//!
//! Starting from an ordered sequence `S*`, the procedure rewrites `S*` into
//! `T_1* ... T_r* R*` keeping the multiset and the product up to conjugation,
//! where every block `T_i` has `|pi(T_i)| >= |T_i| >= 2`, a non-central
//! product, and (except possibly the last) a conjugation-closed `pi(T_i)`.
//! It stops in one of three cases:
//!
//! * I: `sum |T_i| <= omega - 1` and `<supp(R)>` is a proper subgroup;
//! * II: `omega <= sum |T_i| <= omega + 1`, and at least `omega_H` terms of
//!   `R` lie in `H`;
//! * III: `sum |T_i| <= omega - 1` and exactly `omega_H` terms of `R` lie in
//!   `H`.
//!
//! Two moves grow the blocks. If the last block is not conjugation-closed,
//! the first remainder term `g` with `g pi(T_r) != pi(T_r) g` is brought to
//! the front of `R` and appended to `T_r`. Otherwise two adjacent
//! non-commuting terms of `R` are brought to its front and become a new
//! block. Bringing a term to the front moves the preceding remainder terms
//! past the blocks (re-ordering each block so its product becomes the
//! matching conjugate) and then cyclically to the end.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bits::ElementSet;
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::lattice::Lattice;
use crate::seq::{OrderedSequence, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizerError {
    #[error("the group is abelian")]
    Abelian,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizerConfig {
    /// Abelian subgroup whose terms in `R` are counted.
    pub h: Subgroup,
    pub omega: usize,
    pub omega_h: i64,
    /// Length of the prefix `S_0` that must end up inside `T_1` (0 for none).
    pub omega_0: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    I,
    II,
    III,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Start,
    /// Swap of the commuting remainder terms at positions `pos`, `pos + 1`.
    Swap { pos: usize },
    /// The first `len` remainder terms moved in front of the blocks, with
    /// the blocks re-ordered so that the product is unchanged.
    CommutePrefix { len: usize },
    /// The first `len` terms moved to the end (product conjugated).
    CyclicShift { len: usize },
    /// The first remainder term appended to the last block.
    Absorb,
    /// The first two remainder terms split off as a new block.
    NewBlock,
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::Start => "start",
            Move::Swap { .. } => "swap",
            Move::CommutePrefix { .. } => "commute_prefix",
            Move::CyclicShift { .. } => "cyclic_shift",
            Move::Absorb => "absorb",
            Move::NewBlock => "new_block",
        }
    }
}

/// State after one move: the full ordered sequence and the block lengths
/// (the remainder is what follows the blocks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub mv: Move,
    pub sequence: Vec<Elem>,
    pub block_lens: Vec<usize>,
    pub product: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub blocks: Vec<OrderedSequence>,
    pub remainder: OrderedSequence,
    pub case: Case,
    /// Number of block-growing moves.
    pub rewrite_steps: usize,
    pub trace: Vec<TraceStep>,
}

impl Factorization {
    pub fn sequence(&self) -> OrderedSequence {
        let mut terms: Vec<Elem> = self.blocks.iter().flat_map(|b| b.terms.iter().copied()).collect();
        terms.extend_from_slice(&self.remainder.terms);
        OrderedSequence::new(terms)
    }

    pub fn block_total(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }
}

/// `pi` of a short block. Blocks have at most `omega + 1` terms.
fn pi(g: &FiniteGroup, terms: &[Elem]) -> ElementSet {
    let s = Sequence::from_terms(g.order(), terms);
    *Lattice::of(g, &s, usize::MAX).expect("unbounded budget").pi()
}

fn is_conjugation_closed(g: &FiniteGroup, set: &ElementSet) -> bool {
    set.iter().all(|a| g.elements().all(|x| set.contains(g.conj(a, x))))
}

fn commutes_with_set(g: &FiniteGroup, x: Elem, set: &ElementSet) -> bool {
    g.left_mul_set(x, set) == g.right_mul_set(set, x)
}

pub fn are_conjugate(g: &FiniteGroup, a: Elem, b: Elem) -> bool {
    g.elements().any(|x| g.conj(a, x) == b)
}

fn count_in(h: &Subgroup, terms: &[Elem]) -> i64 {
    terms.iter().filter(|&&x| h.contains(x)).count() as i64
}

fn generates_whole(g: &FiniteGroup, terms: &[Elem]) -> bool {
    g.subgroup_generated(terms.iter().copied()).order() == g.order()
}

fn check_config(g: &FiniteGroup, s: &OrderedSequence, cfg: &FactorizerConfig) -> Result<(), FactorizerError> {
    let bad = |m: String| Err(FactorizerError::Precondition(m));
    if g.is_abelian() {
        return Err(FactorizerError::Abelian);
    }
    if g.subgroup_from_set(*cfg.h.members()).is_none() {
        return bad("H is not a subgroup".into());
    }
    let hg = cfg.h.to_group(g).0;
    if !hg.is_abelian() {
        return bad("H is not abelian".into());
    }
    if cfg.omega < 1 {
        return bad("omega must be at least 1".into());
    }
    if s.terms.iter().any(|&x| x >= g.order()) {
        return bad("sequence term out of range".into());
    }
    let k = cfg.omega_0;
    if k == 1 || k > s.len() || k > cfg.omega {
        return bad(format!("omega_0 = {k} must be 0 or in [2, min(|S|, omega)]"));
    }
    if k > 0 {
        let p = pi(g, &s.terms[..k]);
        if p.len() < k {
            return bad(format!("|pi(S_0)| = {} < {k}", p.len()));
        }
        if p.is_subset(g.center().members()) {
            return bad("pi(S_0) is central".into());
        }
    }
    if count_in(&cfg.h, &s.terms[k..]) < cfg.omega_h {
        return bad(format!("fewer than {} terms outside S_0 lie in H", cfg.omega_h));
    }
    Ok(())
}

struct State<'g> {
    g: &'g FiniteGroup,
    blocks: Vec<Vec<Elem>>,
    rem: Vec<Elem>,
    trace: Vec<TraceStep>,
}

impl State<'_> {
    fn flat(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.blocks.concat();
        v.extend_from_slice(&self.rem);
        v
    }

    fn record(&mut self, mv: Move) {
        let sequence = self.flat();
        let product = self.g.product(&sequence);
        let block_lens = self.blocks.iter().map(Vec::len).collect();
        self.trace.push(TraceStep { mv, sequence, block_lens, product });
    }

    /// Bring remainder term `x` to the front of the remainder. Requires that
    /// every term before it commutes, as a set, with `pi` of every block.
    fn bring_to_front(&mut self, x: usize) {
        if x == 0 {
            return;
        }
        let g = self.g;
        let prefix: Vec<Elem> = self.rem[..x].to_vec();
        let c = g.product(&prefix);
        // T_1 ... T_r P = P T_1' ... T_r' with pi(T_j') = c^{-1} pi(T_j) c
        for b in self.blocks.iter_mut() {
            let target = g.conj(g.product(b), c);
            let s = Sequence::from_terms(g.order(), b);
            let lat = Lattice::of(g, &s, usize::MAX).expect("unbounded budget");
            *b = lat.ordering(lat.full(), target).expect("block products are closed under the prefix");
        }
        if !self.blocks.is_empty() {
            let blocks = core::mem::take(&mut self.blocks);
            let rest = self.rem.split_off(x);
            // P T_1' ... T_r' R(x..): record it with P as a leading pseudo-block
            let mut all = alloc::vec![prefix.clone()];
            all.extend(blocks);
            self.blocks = all;
            self.rem = rest;
            self.record(Move::CommutePrefix { len: x });
            let mut blocks = core::mem::take(&mut self.blocks);
            blocks.remove(0);
            self.blocks = blocks;
            self.rem.extend_from_slice(&prefix);
        } else {
            self.rem.rotate_left(x);
        }
        self.record(Move::CyclicShift { len: x });
    }
}

/// Run the rewriting procedure.
pub fn factorize(
    g: &FiniteGroup,
    s: &OrderedSequence,
    cfg: &FactorizerConfig,
) -> Result<Factorization, FactorizerError> {
    check_config(g, s, cfg)?;
    let k = cfg.omega_0;
    let mut st = State { g, blocks: Vec::new(), rem: s.terms[k..].to_vec(), trace: Vec::new() };
    if k > 0 {
        st.blocks.push(s.terms[..k].to_vec());
    }
    st.record(Move::Start);
    let mut steps = 0usize;
    let case = loop {
        let total: usize = st.blocks.iter().map(Vec::len).sum();
        if total >= cfg.omega {
            break Case::II;
        }
        if count_in(&cfg.h, &st.rem) == cfg.omega_h {
            break Case::III;
        }
        if !generates_whole(g, &st.rem) {
            break Case::I;
        }
        let last = st.blocks.last().map(|b| pi(g, b));
        match last {
            Some(p) if !is_conjugation_closed(g, &p) => {
                let x = st
                    .rem
                    .iter()
                    .position(|&y| !commutes_with_set(g, y, &p))
                    .expect("remainder generates G");
                st.bring_to_front(x);
                let y = st.rem.remove(0);
                st.blocks.last_mut().unwrap().push(y);
                st.record(Move::Absorb);
            }
            _ => {
                // first j with a non-commuting earlier term, i the last such
                let (i, j) = (1..st.rem.len())
                    .find_map(|j| {
                        (0..j).rev().find(|&i| !g.commute(st.rem[i], st.rem[j])).map(|i| (i, j))
                    })
                    .expect("remainder generates a non-abelian group");
                for pos in (i + 1..j).rev() {
                    st.rem.swap(pos, pos + 1);
                    st.record(Move::Swap { pos });
                }
                st.bring_to_front(i);
                let pair: Vec<Elem> = st.rem.drain(..2).collect();
                st.blocks.push(pair);
                st.record(Move::NewBlock);
            }
        }
        steps += 1;
    };
    Ok(Factorization {
        blocks: st.blocks.into_iter().map(OrderedSequence::new).collect(),
        remainder: OrderedSequence::new(st.rem),
        case,
        rewrite_steps: steps,
        trace: st.trace,
    })
}

/// Every violated property of `f`, re-derived from scratch.
pub fn factorization_failures(
    g: &FiniteGroup,
    f: &Factorization,
    original: &OrderedSequence,
    cfg: &FactorizerConfig,
) -> Vec<String> {
    let mut out = Vec::new();
    let n = g.order();
    let all = f.sequence();
    if all.terms.iter().any(|&x| x >= n) || original.terms.iter().any(|&x| x >= n) {
        out.push("term out of range".into());
        return out;
    }
    if all.multiset(n) != original.multiset(n) {
        out.push("multiset differs from the input".into());
    }
    if !are_conjugate(g, all.product(g), original.product(g)) {
        out.push("product is not conjugate to the input product".into());
    }
    let center = *g.center().members();
    let r = f.blocks.len();
    for (i, b) in f.blocks.iter().enumerate() {
        let p = pi(g, &b.terms);
        if b.len() < 2 {
            out.push(format!("block {} has fewer than 2 terms", i + 1));
        }
        if p.len() < b.len() {
            out.push(format!("block {} has |pi| = {} < {}", i + 1, p.len(), b.len()));
        }
        if p.is_subset(&center) {
            out.push(format!("block {} has central products only", i + 1));
        }
        if i + 1 < r && !is_conjugation_closed(g, &p) {
            out.push(format!("block {} is not conjugation-closed", i + 1));
        }
    }
    if cfg.omega_0 > 0 {
        let s0 = Sequence::from_terms(n, &original.terms[..cfg.omega_0.min(original.len())]);
        if r == 0 || !s0.divides(&f.blocks[0].multiset(n)) {
            out.push("S_0 does not divide T_1".into());
        }
    }
    let total = f.block_total();
    let in_h = count_in(&cfg.h, &f.remainder.terms);
    let omega = cfg.omega;
    match f.case {
        Case::I => {
            if total + 1 > omega {
                out.push(format!("case i with block total {total} >= omega"));
            }
            if generates_whole(g, &f.remainder.terms) {
                out.push("case i with remainder generating G".into());
            }
        }
        Case::II => {
            if total < omega || total > omega + 1 {
                out.push(format!("case ii with block total {total} outside [omega, omega + 1]"));
            }
            if total == omega + 1 && (f.blocks[r - 1].len() != 2 || total - 2 + 1 != omega) {
                out.push("case ii at omega + 1 without a final pair".into());
            }
            if in_h < cfg.omega_h {
                out.push(format!("case ii with {in_h} < omega_H terms of R in H"));
            }
        }
        Case::III => {
            if total + 1 > omega {
                out.push(format!("case iii with block total {total} >= omega"));
            }
            if in_h != cfg.omega_h {
                out.push(format!("case iii with {in_h} != omega_H terms of R in H"));
            }
        }
    }
    let start = original.product(g);
    for (k, step) in f.trace.iter().enumerate() {
        if Sequence::from_terms(n, &step.sequence) != original.multiset(n)
            || g.product(&step.sequence) != step.product
            || !are_conjugate(g, step.product, start)
        {
            out.push(format!("trace step {k} ({}) breaks the product class", step.mv.name()));
        }
    }
    out
}

/// True iff every property of the factorization holds.
pub fn check_factorization(
    g: &FiniteGroup,
    f: &Factorization,
    original: &OrderedSequence,
    cfg: &FactorizerConfig,
) -> bool {
    factorization_failures(g, f, original, cfg).is_empty()
}
