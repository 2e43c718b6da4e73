use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, FiniteGroup};
use crate::error::GroupError;

/// Default order limit for automorphism enumeration.
pub const DEFAULT_AUT_LIMIT: usize = 64;

/// Enumeration stops after this many automorphisms.
const COUNT_CAP: usize = 1 << 18;

/// Greedy generating set: repeatedly add the element of largest order not yet
/// in the generated subgroup.
fn generators(g: &FiniteGroup) -> Vec<Elem> {
    let mut by_order: Vec<Elem> = g.elements().skip(1).collect();
    by_order.sort_by_key(|&x| (core::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut sub = g.trivial_subgroup();
    for x in by_order {
        if sub.order() == g.order() {
            break;
        }
        if !sub.contains(x) {
            gens.push(x);
            sub = g.subgroup_generated(gens.iter().copied());
        }
    }
    gens
}

/// Extend `gens[..k] -> imgs[..k]` to a map on the generated subgroup by
/// walking the Cayley graph; `None` if it is not a well-defined injection.
fn extend(g: &FiniteGroup, gens: &[Elem], imgs: &[Elem]) -> Option<Vec<Elem>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(imgs.iter()) {
            let y = g.mul(x, s);
            let fy = g.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                map[y] = fy;
                used[fy] = true;
                stack.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

fn search(
    g: &FiniteGroup,
    gens: &[Elem],
    imgs: &mut Vec<Elem>,
    cap: usize,
    out: &mut Vec<Vec<Elem>>,
) -> bool {
    if out.len() >= cap {
        return false;
    }
    let k = imgs.len();
    if k == gens.len() {
        let map = extend(g, gens, imgs).expect("checked at previous level");
        out.push(map);
        return true;
    }
    let want = g.element_order(gens[k]);
    for cand in g.elements() {
        if g.element_order(cand) != want {
            continue;
        }
        imgs.push(cand);
        if extend(g, &gens[..=k], imgs).is_some() && !search(g, gens, imgs, cap, out) {
            imgs.pop();
            return false;
        }
        imgs.pop();
    }
    true
}

fn enumerate(g: &FiniteGroup, cap: usize) -> (Vec<Vec<Elem>>, bool) {
    let gens = generators(g);
    let mut out = Vec::new();
    let complete = search(g, &gens, &mut Vec::new(), cap, &mut out);
    (out, complete)
}

/// All automorphisms as element permutations (`perm[x]` is the image of `x`),
/// identity first.
pub fn automorphism_group(g: &FiniteGroup, limit: usize) -> Result<Vec<Vec<Elem>>, GroupError> {
    if g.order() > limit {
        return Err(GroupError::LimitExceeded { order: g.order(), limit });
    }
    let (auts, complete) = enumerate(g, COUNT_CAP);
    if !complete {
        return Err(GroupError::LimitExceeded { order: g.order(), limit });
    }
    Ok(auts)
}

/// For each element, the smallest element of its orbit under the
/// automorphisms that were found. When the full group is out of reach the
/// orbits come from a subgroup of Aut(G) (inner automorphisms at worst),
/// which is still a valid symmetry for pruning.
pub fn automorphism_orbits(g: &FiniteGroup, limit: usize) -> Vec<Elem> {
    let n = g.order();
    let mut parent: Vec<Elem> = (0..n).collect();
    fn find(p: &mut [Elem], x: Elem) -> Elem {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nxt = p[y];
            p[y] = r;
            y = nxt;
        }
        r
    }
    let mut join = |a: Elem, b: Elem| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    };
    if n <= limit {
        let (auts, _) = enumerate(g, COUNT_CAP);
        for a in &auts {
            for (x, &y) in a.iter().enumerate() {
                join(x, y);
            }
        }
    } else {
        for c in g.conjugacy_classes() {
            let first = c.first().unwrap();
            for x in &c {
                join(first, x);
            }
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}
