use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Elem, Family, FiniteGroup};
use crate::arith::factorize;
use crate::bits::ElementSet;
use crate::error::GroupError;

/// A subgroup, stored as its member set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: ElementSet,
}

impl Subgroup {
    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Re-index the subgroup as a standalone group. Returns the group and
    /// the embedding (new index -> parent index).
    pub fn to_group(&self, parent: &FiniteGroup) -> (FiniteGroup, Vec<Elem>) {
        let embed: Vec<Elem> = self.members.iter().collect();
        let mut back = vec![usize::MAX; parent.order()];
        for (i, &x) in embed.iter().enumerate() {
            back[x] = i;
        }
        let k = embed.len();
        let mut mul = vec![0u8; k * k];
        for (i, &a) in embed.iter().enumerate() {
            for (j, &b) in embed.iter().enumerate() {
                mul[i * k + j] = back[parent.mul(a, b)] as u8;
            }
        }
        let names = embed.iter().map(|&x| String::from(parent.name(x))).collect();
        let label = format!("{} < {}", set_label(parent, &self.members), parent.label());
        let g = FiniteGroup::from_raw(k, mul, names, label, Family::Table)
            .expect("subgroup of a valid group is a group");
        (g, embed)
    }
}

fn set_label(g: &FiniteGroup, s: &ElementSet) -> String {
    let names: Vec<&str> = s.iter().map(|x| g.name(x)).collect();
    format!("<{}>", names.join(","))
}

/// Projection onto a quotient group.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub kernel: Subgroup,
    pub image: FiniteGroup,
    /// Image index of every source element.
    pub projection: Vec<Elem>,
}

impl QuotientMap {
    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x]
    }
}

impl FiniteGroup {
    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (0..a).all(|b| self.commute(a, b)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.max_element_order() as usize == self.order()
    }

    /// Wrap an element set that is already known to be a subgroup; checked.
    pub fn subgroup_from_set(&self, members: ElementSet) -> Option<Subgroup> {
        if !members.contains(0) {
            return None;
        }
        for a in &members {
            if !members.contains(self.inv(a)) {
                return None;
            }
            for b in &members {
                if !members.contains(self.mul(a, b)) {
                    return None;
                }
            }
        }
        Some(Subgroup { members })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: ElementSet::singleton(0) }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: self.all() }
    }

    /// Closure of `gens` under multiplication (finite, so inverses follow).
    pub fn subgroup_generated<I: IntoIterator<Item = Elem>>(&self, gens: I) -> Subgroup {
        let gens: Vec<Elem> = gens.into_iter().collect();
        let mut members = ElementSet::singleton(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    frontier.push(y);
                }
            }
        }
        Subgroup { members }
    }

    pub fn center(&self) -> Subgroup {
        let members = self
            .elements()
            .filter(|&a| self.elements().all(|x| self.commute(a, x)))
            .collect();
        Subgroup { members }
    }

    pub fn centralizer(&self, g: Elem) -> Subgroup {
        let members = self.elements().filter(|&x| self.commute(x, g)).collect();
        Subgroup { members }
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut comms = ElementSet::new();
        for x in self.elements() {
            for y in self.elements() {
                let c = self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y));
                comms.insert(c);
            }
        }
        self.subgroup_generated(comms.iter())
    }

    /// `a^H = { h^{-1} a h : h in H }`
    pub fn conjugation_orbit(&self, h: &Subgroup, a: Elem) -> ElementSet {
        h.members.iter().map(|x| self.conj(a, x)).collect()
    }

    /// Conjugacy classes ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<ElementSet> {
        let whole = self.whole();
        let mut seen = ElementSet::new();
        let mut out = Vec::new();
        for a in self.elements() {
            if !seen.contains(a) {
                let c = self.conjugation_orbit(&whole, a);
                seen.union_with(&c);
                out.push(c);
            }
        }
        out
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.elements()
            .all(|g| n.members.iter().all(|x| n.members.contains(self.conj(x, g))))
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientMap, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if projection[g] == usize::MAX {
                let idx = reps.len();
                reps.push(g);
                for x in &n.members {
                    projection[self.mul(g, x)] = idx;
                }
            }
        }
        let k = reps.len();
        let mut mul = vec![0u8; k * k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = projection[self.mul(reps[i], reps[j])] as u8;
            }
        }
        let names = reps.iter().map(|&r| format!("[{}]", self.name(r))).collect();
        let image = FiniteGroup::from_raw(
            k,
            mul,
            names,
            format!("{} / {}", self.label(), set_label(self, &n.members)),
            Family::Table,
        )
        .expect("quotient by a normal subgroup is a group");
        Ok(QuotientMap { kernel: *n, image, projection })
    }

    /// Every subgroup, sorted by order then member set.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        // one generator per cyclic subgroup
        let mut cyclic: Vec<(Subgroup, Elem)> = Vec::new();
        let mut seen = BTreeSet::new();
        for g in self.elements() {
            let c = self.subgroup_generated([g]);
            if seen.insert(c) {
                cyclic.push((c, g));
            }
        }
        let mut found: BTreeSet<Subgroup> = seen;
        let mut frontier: Vec<(Subgroup, Vec<Elem>)> =
            cyclic.iter().map(|&(c, g)| (c, vec![g])).collect();
        while let Some((h, gens)) = frontier.pop() {
            for &(c, g) in &cyclic {
                if c.members.is_subset(&h.members) {
                    continue;
                }
                let mut more = gens.clone();
                more.push(g);
                let j = self.subgroup_generated(more.iter().copied());
                if found.insert(j) {
                    frontier.push((j, more));
                }
            }
        }
        let mut v: Vec<Subgroup> = found.into_iter().collect();
        v.sort_by_key(|s| (s.order(), s.members));
        v
    }

    /// Proper subgroups not contained in any other proper subgroup.
    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        let subs: Vec<Subgroup> =
            self.all_subgroups().into_iter().filter(|s| s.order() < self.order()).collect();
        subs.iter()
            .filter(|h| {
                !subs
                    .iter()
                    .any(|k| k.order() > h.order() && h.members.is_subset(&k.members))
            })
            .copied()
            .collect()
    }

    pub fn is_p_group(&self) -> Option<u64> {
        match factorize(self.order() as u64).as_slice() {
            [(p, _)] => Some(*p),
            _ => None,
        }
    }

    /// A finite group is nilpotent iff it has a unique Sylow subgroup for each
    /// prime, i.e. the p-power-order elements number exactly the p-part.
    pub fn is_nilpotent(&self) -> bool {
        factorize(self.order() as u64).iter().all(|&(p, e)| {
            let part = p.pow(e) as usize;
            let count = self
                .elements()
                .filter(|&g| crate::arith::prime_power(self.element_order(g) as u64).map_or(
                    self.element_order(g) == 1,
                    |(q, _)| q == p,
                ))
                .count();
            count == part
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn g(s: &str) -> FiniteGroup {
        s.parse::<GroupSpec>().unwrap().build().unwrap()
    }

    fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut v: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        v.sort();
        v
    }

    #[test]
    fn centers() {
        assert_eq!(g("F:2,3").center().order(), 1);
        assert_eq!(g("C:6").center().order(), 6);
        assert_eq!(g("M:3,3").center().order(), 3);
    }

    #[test]
    fn commutators() {
        let f = g("F:3,7");
        let d = f.commutator_subgroup();
        assert_eq!(d.order(), 7);
        let (a, _) = f.metacyclic_generators().unwrap();
        assert_eq!(d, f.subgroup_generated([a]));
        assert!(g("C:3x3").commutator_subgroup().is_trivial());
        assert_eq!(g("M:3,3").commutator_subgroup().order(), 3);
    }

    #[test]
    fn centralizers() {
        let f = g("F:2,5");
        let (a, _) = f.metacyclic_generators().unwrap();
        assert_eq!(f.centralizer(a), f.subgroup_generated([a]));
        assert_eq!(f.centralizer(0).order(), 10);
        let nd = g("ND:5");
        let (_, t) = nd.metacyclic_generators().unwrap();
        assert_eq!(nd.centralizer(t).order(), 4);
    }

    #[test]
    fn orbits_and_classes() {
        let f = g("F:2,3");
        let (a, t) = f.metacyclic_generators().unwrap();
        let whole = f.whole();
        let orb = f.conjugation_orbit(&whole, a);
        assert_eq!(orb, [a, f.mul(a, a)].into_iter().collect());
        let orb_t = f.conjugation_orbit(&whole, t);
        let coset: ElementSet = f.commutator_subgroup().members().iter().map(|x| f.mul(t, x)).collect();
        assert_eq!(orb_t, coset);
        assert_eq!(class_sizes(&f), [1, 2, 3]);
        assert_eq!(class_sizes(&g("C:5")), [1; 5]);
        assert_eq!(class_sizes(&g("F:3,7")), [1, 3, 3, 7, 7]);
    }

    #[test]
    fn quotients() {
        let f = g("F:3,7");
        let q = f.quotient(&f.commutator_subgroup()).unwrap();
        assert_eq!(q.image.order(), 3);
        assert!(q.image.is_cyclic());
        let nd = g("ND:5");
        let q = nd.quotient(&nd.commutator_subgroup()).unwrap();
        assert_eq!(q.image.order(), 4);
        assert!(q.image.is_cyclic());
        let t = f.quotient(&f.trivial_subgroup()).unwrap();
        assert_eq!(t.image.order(), 21);
        assert_eq!(t.image.table(), f.table());
        let (_, tau) = f.metacyclic_generators().unwrap();
        assert_eq!(f.quotient(&f.subgroup_generated([tau])).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn generated_subgroups() {
        let f = g("F:2,3");
        assert!(f.subgroup_generated([]).is_trivial());
        let ta = f.element("ta").unwrap();
        let t = f.element("t").unwrap();
        assert_eq!(f.subgroup_generated([ta, t]).order(), 6);
        let nd = g("ND:5");
        let t2 = nd.element("t^2").unwrap();
        assert_eq!(nd.subgroup_generated([t2]).order(), 2);
    }

    #[test]
    fn subgroup_lattice() {
        // S_3 has 6 subgroups, 4 of them maximal (three of order 2, one of order 3)
        let f = g("F:2,3");
        assert_eq!(f.all_subgroups().len(), 6);
        assert_eq!(f.maximal_subgroups().len(), 4);
        // C_2 x C_2 x C_2 has 16 subgroups
        assert_eq!(g("C:2x2x2").all_subgroups().len(), 16);
        assert_eq!(g("D:8").all_subgroups().len(), 10);
    }

    #[test]
    fn nilpotency() {
        assert!(g("M:3,3").is_nilpotent());
        assert!(g("D:8").is_nilpotent());
        assert!(!g("F:2,3").is_nilpotent());
        assert!(!g("ND:5").is_nilpotent());
        assert!(g("C:12").is_nilpotent());
    }
}
