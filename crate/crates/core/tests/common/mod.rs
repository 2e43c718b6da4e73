#![allow(dead_code)]

use davenport_core::{Elem, ElementSet, FiniteGroup, GroupSpec, Sequence};
use rand::Rng;

pub fn group(spec: &str) -> FiniteGroup {
    spec.parse::<GroupSpec>().unwrap().build().unwrap()
}

/// Products of all orderings, by explicit permutation.
pub fn brute_pi(g: &FiniteGroup, terms: &[Elem]) -> ElementSet {
    fn rec(g: &FiniteGroup, rest: &mut Vec<Elem>, acc: Elem, out: &mut ElementSet) {
        if rest.is_empty() {
            out.insert(acc);
            return;
        }
        for i in 0..rest.len() {
            if rest[..i].contains(&rest[i]) {
                continue;
            }
            let x = rest.remove(i);
            rec(g, rest, g.mul(acc, x), out);
            rest.insert(i, x);
        }
    }
    let mut out = ElementSet::new();
    rec(g, &mut terms.to_vec(), g.identity(), &mut out);
    out
}

/// Union of `brute_pi` over nonempty sub-multisets of length at most `max_len`.
pub fn brute_big_pi(g: &FiniteGroup, terms: &[Elem], max_len: usize) -> ElementSet {
    let mut out = ElementSet::new();
    for mask in 1u32..(1 << terms.len()) {
        if mask.count_ones() as usize > max_len {
            continue;
        }
        let sub: Vec<Elem> = (0..terms.len()).filter(|i| mask >> i & 1 == 1).map(|i| terms[i]).collect();
        out.union_with(&brute_pi(g, &sub));
    }
    out
}

pub fn random_terms(rng: &mut impl Rng, n: usize, len: usize) -> Vec<Elem> {
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

pub fn seq(g: &FiniteGroup, terms: &[Elem]) -> Sequence {
    Sequence::from_terms(g.order(), terms)
}

/// All multisets of length `len` drawn from `pool`, as sorted vectors.
pub fn multisets(pool: &[Elem], len: usize) -> Vec<Vec<Elem>> {
    fn rec(pool: &[Elem], len: usize, start: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, len, 0, &mut Vec::new(), &mut out);
    out
}
