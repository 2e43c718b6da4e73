//! Structural facts that decide which bounds apply.

use alloc::vec::Vec;

use crate::arith::{factorize, is_prime, smallest_prime_divisor};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// Subgroup lattices are only enumerated up to this order.
pub const SUBGROUP_LIMIT: usize = 64;

/// Generators realizing `<a, t | a^n, t^m, a t = t a^r>` inside a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Presentation {
    pub a: Elem,
    pub t: Elem,
    pub r: u64,
}

#[derive(Debug, Clone)]
pub struct GroupFacts {
    pub order: usize,
    pub abelian: bool,
    pub cyclic: bool,
    pub center: Subgroup,
    pub derived: Subgroup,
    /// `p`-group prime, if `|G|` is a prime power (and `|G| > 1`).
    pub p_group: Option<u64>,
    pub nilpotent: bool,
    pub smallest_prime: Option<u64>,
    /// `min |G| / |C_G(x)|` over non-central `x`.
    pub min_class_size: Option<usize>,
    /// `(p, q, presentation)` when G is the non-abelian group of order `pq`.
    pub fpq: Option<(u64, u64, Presentation)>,
    /// `(q, presentation)` for the near-dihedral group of order `4q`.
    pub near_dihedral: Option<(u64, Presentation)>,
    /// `(p, n, presentation)` for `M_{p^n}`.
    pub mpn: Option<(u64, u32, Presentation)>,
    /// Dihedral of order `2n` with `n` odd.
    pub dihedral_odd: bool,
    /// Maximal subgroups (empty when the group is too large to enumerate).
    pub maximal_subgroups: Vec<Subgroup>,
    /// Normal subgroups `H` with `G/H` elementary abelian of order `p^2`.
    pub cp2_kernels: Vec<(Subgroup, u64)>,
    pub subgroups_enumerated: bool,
}

impl GroupFacts {
    pub fn new(g: &FiniteGroup) -> GroupFacts {
        let n = g.order();
        let abelian = g.is_abelian();
        let center = g.center();
        let derived = g.commutator_subgroup();
        let p_group = if n > 1 { g.is_p_group() } else { None };
        let min_class_size = g
            .elements()
            .filter(|&x| !center.contains(x))
            .map(|x| n / g.centralizer(x).order())
            .min();
        let enumerate = n <= SUBGROUP_LIMIT;
        let (maximal_subgroups, cp2_kernels) = if enumerate {
            let subs = g.all_subgroups();
            let maximal = g.maximal_subgroups();
            let kernels = subs
                .iter()
                .filter_map(|h| {
                    let idx = n / h.order();
                    let p = match factorize(idx as u64).as_slice() {
                        [(p, 2)] => *p,
                        _ => return None,
                    };
                    if !g.is_normal(h) {
                        return None;
                    }
                    let q = g.quotient(h).ok()?;
                    let elementary = q.image.elements().skip(1).all(|x| q.image.element_order(x) as u64 == p);
                    elementary.then_some((*h, p))
                })
                .collect();
            (maximal, kernels)
        } else {
            (Vec::new(), Vec::new())
        };
        GroupFacts {
            order: n,
            abelian,
            cyclic: g.is_cyclic(),
            center,
            derived,
            p_group,
            nilpotent: g.is_nilpotent(),
            smallest_prime: smallest_prime_divisor(n as u64),
            min_class_size,
            fpq: detect_fpq(g, abelian),
            near_dihedral: detect_near_dihedral(g, &center, &derived),
            mpn: detect_mpn(g, abelian),
            dihedral_odd: detect_dihedral_odd(g),
            maximal_subgroups,
            cp2_kernels,
            subgroups_enumerated: enumerate,
        }
    }
}

/// Find `a` of order `n_a`, `t` of order `m_t` outside `<a>`, with
/// `t^{-1} a t = a^r` for some `r` accepted by `want_r`.
fn find_presentation(
    g: &FiniteGroup,
    n_a: u32,
    m_t: u32,
    want_r: impl Fn(u64) -> bool,
) -> Option<Presentation> {
    for a in g.elements().filter(|&a| g.element_order(a) == n_a) {
        let cyc = g.subgroup_generated([a]);
        let powers: Vec<Elem> = (0..n_a as u64).map(|k| g.pow(a, k)).collect();
        for t in g.elements().filter(|&t| g.element_order(t) == m_t && !cyc.contains(t)) {
            let c = g.conj(a, t);
            if let Some(r) = powers.iter().position(|&x| x == c) {
                if want_r(r as u64) {
                    return Some(Presentation { a, t, r: r as u64 });
                }
            }
        }
    }
    None
}

fn detect_fpq(g: &FiniteGroup, abelian: bool) -> Option<(u64, u64, Presentation)> {
    if abelian {
        return None;
    }
    let f = factorize(g.order() as u64);
    let (p, q) = match f.as_slice() {
        [(p, 1), (q, 1)] => (*p, *q),
        _ => return None,
    };
    if (q - 1) % p != 0 {
        return None;
    }
    let pres = find_presentation(g, q as u32, p as u32, |r| r != 1)?;
    Some((p, q, pres))
}

fn detect_near_dihedral(
    g: &FiniteGroup,
    center: &Subgroup,
    derived: &Subgroup,
) -> Option<(u64, Presentation)> {
    let n = g.order() as u64;
    if !n.is_multiple_of(4) {
        return None;
    }
    let q = n / 4;
    if !is_prime(q) || q % 4 != 1 || derived.order() as u64 != q || !center.is_trivial() {
        return None;
    }
    let quo = g.quotient(derived).ok()?;
    if !quo.image.is_cyclic() {
        return None;
    }
    let pres = find_presentation(g, q as u32, 4, |r| r * r % q == q - 1)?;
    Some((q, pres))
}

fn detect_mpn(g: &FiniteGroup, abelian: bool) -> Option<(u64, u32, Presentation)> {
    if abelian {
        return None;
    }
    let (p, n) = match factorize(g.order() as u64).as_slice() {
        [(p, n)] if *n >= 3 => (*p, *n),
        _ => return None,
    };
    let big = p.pow(n - 1);
    let want = 1 + big / p;
    let pres = find_presentation(g, big as u32, p as u32, |r| r == want % big)?;
    Some((p, n, pres))
}

fn detect_dihedral_odd(g: &FiniteGroup) -> bool {
    let order = g.order();
    if !order.is_multiple_of(2) {
        return false;
    }
    let n = order / 2;
    if n.is_multiple_of(2) {
        return false;
    }
    g.elements().filter(|&x| g.element_order(x) as usize == n).any(|x| {
        let cyc = g.subgroup_generated([x]);
        g.elements().any(|y| {
            g.element_order(y) == 2 && !cyc.contains(y) && g.conj(x, y) == g.inv(x)
        })
    })
}
