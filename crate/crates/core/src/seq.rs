//! Unordered and ordered sequences of group elements.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::ElementSet;
use crate::error::GroupError;
use crate::group::{Elem, FiniteGroup};

/// A multiset of group elements, stored as a multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    mult: Vec<u32>,
}

impl Sequence {
    pub fn empty(order: usize) -> Self {
        Sequence { mult: vec![0; order] }
    }

    pub fn from_terms(order: usize, terms: &[Elem]) -> Self {
        let mut s = Self::empty(order);
        for &t in terms {
            s.mult[t] += 1;
        }
        s
    }

    pub fn from_mult(mult: Vec<u32>) -> Self {
        Sequence { mult }
    }

    pub fn group_order(&self) -> usize {
        self.mult.len()
    }

    pub fn len(&self) -> usize {
        self.mult.iter().map(|&m| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn mult(&self, x: Elem) -> u32 {
        self.mult[x]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// Largest multiplicity of any term.
    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    pub fn support(&self) -> ElementSet {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Terms in increasing index order.
    pub fn terms(&self) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.len());
        for (x, &m) in self.mult.iter().enumerate() {
            out.extend(core::iter::repeat_n(x, m as usize));
        }
        out
    }

    pub fn push(&mut self, x: Elem) {
        self.mult[x] += 1;
    }

    pub fn push_n(&mut self, x: Elem, k: u32) {
        self.mult[x] += k;
    }

    /// Remove one copy of `x`; false if absent.
    pub fn remove(&mut self, x: Elem) -> bool {
        if self.mult[x] == 0 {
            return false;
        }
        self.mult[x] -= 1;
        true
    }

    /// Number of terms lying in `set`.
    pub fn count_in(&self, set: &ElementSet) -> usize {
        set.iter().map(|x| self.mult[x] as usize).sum()
    }

    pub fn divides(&self, other: &Sequence) -> bool {
        self.mult.iter().zip(other.mult.iter()).all(|(a, b)| a <= b)
    }

    /// `other^{-1} * self` as multisets; `None` unless `other` divides `self`.
    pub fn minus(&self, other: &Sequence) -> Option<Sequence> {
        if !other.divides(self) {
            return None;
        }
        Some(Sequence {
            mult: self.mult.iter().zip(other.mult.iter()).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn concat(&self, other: &Sequence) -> Sequence {
        Sequence {
            mult: self.mult.iter().zip(other.mult.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    /// Display as `name[k]` terms separated by commas.
    pub fn format(&self, g: &FiniteGroup) -> String {
        let parts: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(x, &m)| {
                if m == 1 {
                    g.name(x).to_string()
                } else {
                    format!("{}[{m}]", g.name(x))
                }
            })
            .collect();
        parts.join(", ")
    }
}

/// A sequence with a fixed order of terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedSequence {
    pub terms: Vec<Elem>,
}

impl OrderedSequence {
    pub fn new(terms: Vec<Elem>) -> Self {
        OrderedSequence { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Left-to-right product.
    pub fn product(&self, g: &FiniteGroup) -> Elem {
        g.product(&self.terms)
    }

    /// Move the first `k` terms to the end. The new product is
    /// `c^{-1} * product * c` where `c` is the product of the moved prefix.
    pub fn cyclic_shift(&self, k: usize) -> OrderedSequence {
        if self.terms.is_empty() {
            return self.clone();
        }
        let k = k % self.terms.len();
        let mut terms = self.terms[k..].to_vec();
        terms.extend_from_slice(&self.terms[..k]);
        OrderedSequence { terms }
    }

    pub fn multiset(&self, order: usize) -> Sequence {
        Sequence::from_terms(order, &self.terms)
    }

    pub fn format(&self, g: &FiniteGroup) -> String {
        let parts: Vec<&str> = self.terms.iter().map(|&x| g.name(x)).collect();
        parts.join(", ")
    }
}

/// Parse a term list such as `t, a[6], t^2a, #3`. Terms are separated by
/// commas or whitespace; `name[k]` repeats a term `k` times and `#i` refers to
/// the element with index `i`.
pub fn parse_terms(g: &FiniteGroup, text: &str) -> Result<Vec<Elem>, GroupError> {
    let mut out = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let (name, reps) = match tok.strip_suffix(']').and_then(|t| t.split_once('[')) {
            Some((name, k)) => {
                let k: usize =
                    k.parse().map_err(|_| GroupError::UnknownElement(tok.to_string()))?;
                (name, k)
            }
            None => (tok, 1),
        };
        let x = g.element(name)?;
        out.extend(core::iter::repeat_n(x, reps));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn g(s: &str) -> FiniteGroup {
        s.parse::<GroupSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn parse_and_format() {
        let f = g("F:2,3");
        let terms = parse_terms(&f, "t, a[2], ta^2 #0").unwrap();
        assert_eq!(terms.len(), 5);
        let s = Sequence::from_terms(6, &terms);
        assert_eq!(s.format(&f), "1, a[2], t, ta^2");
        assert_eq!(s.max_multiplicity(), 2);
        assert!(parse_terms(&f, "b").is_err());
        assert!(parse_terms(&f, "a[x]").is_err());
    }

    #[test]
    fn counting() {
        let f = g("F:2,3");
        let s = Sequence::from_terms(6, &parse_terms(&f, "a, a, t").unwrap());
        let d = *f.commutator_subgroup().members();
        assert_eq!(s.count_in(&d), 2);
        assert_eq!(s.count_in(&f.all()), 3);
        assert_eq!(s.count_in(&ElementSet::new()), 0);
    }

    #[test]
    fn shift_conjugates_product() {
        let f = g("F:2,3");
        let (a, t) = f.metacyclic_generators().unwrap();
        let s = OrderedSequence::new(vec![t, a]);
        assert_eq!(s.product(&f), f.element("ta").unwrap());
        let sh = s.cyclic_shift(1);
        assert_eq!(sh.terms, [a, t]);
        assert_eq!(sh.product(&f), f.element("ta^2").unwrap());
        assert_eq!(sh.product(&f), f.conj(s.product(&f), t));
        assert_eq!(s.cyclic_shift(0), s);
    }
}
