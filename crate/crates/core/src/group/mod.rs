//! Finite groups given by Cayley tables.

mod automorphism;
mod spec;
mod structure;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{ElementSet, MAX_ORDER};
use crate::error::GroupError;

pub use automorphism::{automorphism_group, automorphism_orbits, DEFAULT_AUT_LIMIT};
pub use spec::GroupSpec;
pub use structure::{QuotientMap, Subgroup};

/// Element of a group, as a dense index. Index 0 is always the identity.
pub type Elem = usize;

/// How a group was presented, when it came from one of the built-in families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Direct product of cyclic groups; element index is mixed radix with the
    /// first factor least significant.
    Abelian(Vec<u64>),
    /// `<a, t | a^n, t^m, a t = t a^r>`, element `t^i a^j` has index `i*n + j`.
    Metacyclic { n: u64, m: u64, r: u64 },
    Table,
}

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    orders: Vec<u32>,
    names: Vec<String>,
    label: String,
    family: Family,
}

impl core::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Build from a full multiplication table. The identity is moved to index
    /// 0; all other elements keep their relative order. Validates the group
    /// axioms exhaustively.
    pub fn from_table(
        rows: &[Vec<usize>],
        names: Option<Vec<String>>,
        label: String,
    ) -> Result<FiniteGroup, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::MalformedTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n as u64, MAX_ORDER));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::MalformedTable(format!(
                    "entry {bad} in row {i} is out of range"
                )));
            }
        }
        let e = (0..n)
            .find(|&i| (0..n).all(|j| rows[i][j] == j && rows[j][i] == j))
            .ok_or_else(|| GroupError::MalformedTable("no two-sided identity".into()))?;
        // new index of old element x
        let relabel = |x: usize| -> usize {
            if x == e {
                0
            } else if x < e {
                x + 1
            } else {
                x
            }
        };
        let mut old_of = vec![0usize; n];
        for x in 0..n {
            old_of[relabel(x)] = x;
        }
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = relabel(rows[old_of[a]][old_of[b]]) as u8;
            }
        }
        let names = match names {
            Some(v) => {
                if v.len() != n {
                    return Err(GroupError::MalformedTable("name count mismatch".into()));
                }
                (0..n).map(|i| v[old_of[i]].clone()).collect()
            }
            None => (0..n)
                .map(|i| if i == 0 { "1".to_string() } else { format!("e{i}") })
                .collect(),
        };
        Self::from_raw(n, mul, names, label, Family::Table)
    }

    /// Parse the text table format: the order on the first line, then one
    /// line of whitespace-separated indices per element.
    pub fn from_table_text(text: &str, label: String) -> Result<FiniteGroup, GroupError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines
            .next()
            .ok_or_else(|| GroupError::MalformedTable("missing order line".into()))?;
        let n: usize = first
            .parse()
            .map_err(|_| GroupError::MalformedTable(format!("bad order line `{first}`")))?;
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n as u64, MAX_ORDER));
        }
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| GroupError::MalformedTable(format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(GroupError::MalformedTable(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        Self::from_table(&rows, None, label)
    }

    pub(crate) fn from_raw(
        n: usize,
        mul: Vec<u8>,
        names: Vec<String>,
        label: String,
        family: Family,
    ) -> Result<FiniteGroup, GroupError> {
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err(GroupError::MalformedTable("index 0 is not the identity".into()));
            }
            let mut row = ElementSet::new();
            let mut col = ElementSet::new();
            for b in 0..n {
                row.insert(mul[a * n + b] as usize);
                col.insert(mul[b * n + a] as usize);
            }
            if row.len() != n || col.len() != n {
                return Err(GroupError::MalformedTable(format!(
                    "row or column {a} is not a permutation"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b] as usize;
                for c in 0..n {
                    let bc = mul[b * n + c] as usize;
                    if mul[ab * n + c] != mul[a * n + bc] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inv = vec![0u8; n];
        for a in 0..n {
            let b = (0..n).find(|&b| mul[a * n + b] == 0).unwrap();
            inv[a] = b as u8;
        }
        let mut orders = vec![1u32; n];
        for (a, o) in orders.iter_mut().enumerate() {
            let mut x = a;
            while x != 0 {
                x = mul[x * n + a] as usize;
                *o += 1;
            }
        }
        Ok(FiniteGroup { order: n, mul, inv, orders, names, label, family })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: Elem) -> u32 {
        self.orders[a]
    }

    pub fn max_element_order(&self) -> u32 {
        self.orders.iter().copied().max().unwrap_or(1)
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Canonical spec-like label of the construction.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Row-major multiplication table, one byte per entry.
    pub fn table(&self) -> &[u8] {
        &self.mul
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.order
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// Left-to-right product of a word.
    pub fn product(&self, word: &[Elem]) -> Elem {
        word.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let k = k % self.orders[a] as u64;
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `b^{-1} a b`
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `{ s * x : s in set }`
    #[inline]
    pub fn right_mul_set(&self, set: &ElementSet, x: Elem) -> ElementSet {
        let mut out = ElementSet::new();
        for s in set {
            out.insert(self.mul[s * self.order + x] as usize);
        }
        out
    }

    /// `{ x * s : s in set }`
    pub fn left_mul_set(&self, x: Elem, set: &ElementSet) -> ElementSet {
        let row = &self.mul[x * self.order..(x + 1) * self.order];
        set.iter().map(|s| row[s] as usize).collect()
    }

    /// `{ a * b : a in A, b in B }`
    pub fn product_set(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::new();
        for y in b {
            out.union_with(&self.right_mul_set(a, y));
        }
        out
    }

    /// Look up an element by display name or by `#index`.
    pub fn element(&self, name: &str) -> Result<Elem, GroupError> {
        let name = name.trim();
        if let Some(idx) = name.strip_prefix('#') {
            return idx
                .parse::<usize>()
                .ok()
                .filter(|&i| i < self.order)
                .ok_or_else(|| GroupError::UnknownElement(name.to_string()));
        }
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(i);
        }
        if name == "e" {
            return Ok(0);
        }
        Err(GroupError::UnknownElement(name.to_string()))
    }

    /// Element `t^i a^j` of a metacyclic group.
    pub fn metacyclic_element(&self, i: u64, j: i64) -> Option<Elem> {
        match self.family {
            Family::Metacyclic { n, m, .. } => {
                let j = j.rem_euclid(n as i64) as u64;
                Some(((i % m) * n + j) as usize)
            }
            _ => None,
        }
    }

    /// Metacyclic generators `(a, t)`.
    pub fn metacyclic_generators(&self) -> Option<(Elem, Elem)> {
        Some((self.metacyclic_element(0, 1)?, self.metacyclic_element(1, 0)?))
    }
}

pub(crate) fn metacyclic_name(i: u64, j: u64) -> String {
    let mut s = String::new();
    match i {
        0 => {}
        1 => s.push('t'),
        _ => s.push_str(&format!("t^{i}")),
    }
    match j {
        0 => {}
        1 => s.push('a'),
        _ => s.push_str(&format!("a^{j}")),
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Semidirect product `C_n ⋊ C_m` with `a t = t a^r`.
pub fn metacyclic(n: u64, m: u64, r: u64, label: String) -> Result<FiniteGroup, GroupError> {
    if n == 0 || m == 0 {
        return Err(GroupError::InvalidParameters("n and m must be positive".into()));
    }
    let size = n.saturating_mul(m);
    if size > MAX_ORDER as u64 {
        return Err(GroupError::TooLarge(size, MAX_ORDER));
    }
    let r = r % n;
    if crate::arith::gcd(r, n) != 1 && n > 1 {
        return Err(GroupError::InvalidParameters(format!("gcd({r}, {n}) != 1")));
    }
    if crate::arith::pow_mod(r, m, n) != 1 % n {
        return Err(GroupError::InvalidParameters(format!("{r}^{m} is not 1 mod {n}")));
    }
    let total = size as usize;
    let mut rpow = vec![1 % n; m as usize];
    for k in 1..m as usize {
        rpow[k] = rpow[k - 1] * r % n;
    }
    let mut mul = vec![0u8; total * total];
    for i in 0..m {
        for j in 0..n {
            let a = (i * n + j) as usize;
            for k in 0..m {
                for l in 0..n {
                    let b = (k * n + l) as usize;
                    let ii = (i + k) % m;
                    let jj = (j * rpow[k as usize] + l) % n;
                    mul[a * total + b] = (ii * n + jj) as u8;
                }
            }
        }
    }
    let names = (0..total as u64).map(|x| metacyclic_name(x / n, x % n)).collect();
    FiniteGroup::from_raw(total, mul, names, label, Family::Metacyclic { n, m, r })
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(factors: &[u64], label: String) -> Result<FiniteGroup, GroupError> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(GroupError::InvalidParameters("factor orders must be positive".into()));
    }
    let size = factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .unwrap_or(u64::MAX);
    if size > MAX_ORDER as u64 {
        return Err(GroupError::TooLarge(size, MAX_ORDER));
    }
    let n = size as usize;
    let digits = |mut x: usize| -> Vec<u64> {
        factors
            .iter()
            .map(|&f| {
                let d = x as u64 % f;
                x /= f as usize;
                d
            })
            .collect()
    };
    let undigits = |ds: &[u64]| -> usize {
        let mut x = 0u64;
        for (d, f) in ds.iter().zip(factors.iter()).rev() {
            x = x * f + d;
        }
        x as usize
    };
    let all: Vec<Vec<u64>> = (0..n).map(digits).collect();
    let mut mul = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            let s: Vec<u64> = all[a]
                .iter()
                .zip(all[b].iter())
                .zip(factors.iter())
                .map(|((x, y), f)| (x + y) % f)
                .collect();
            mul[a * n + b] = undigits(&s) as u8;
        }
    }
    let letters: Vec<char> = if factors.len() == 1 {
        vec!['a']
    } else {
        "abcdefghijklmnopqrsuvwxyz".chars().collect()
    };
    let names = all
        .iter()
        .map(|ds| {
            let mut s = String::new();
            for (k, &d) in ds.iter().enumerate() {
                match d {
                    0 => {}
                    1 => s.push(letters[k]),
                    _ => s.push_str(&format!("{}^{d}", letters[k])),
                }
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        })
        .collect();
    FiniteGroup::from_raw(n, mul, names, label, Family::Abelian(factors.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metacyclic_relation_holds() {
        let g = metacyclic(7, 3, 2, "F:3,7,2".into()).unwrap();
        let (a, t) = g.metacyclic_generators().unwrap();
        assert_eq!(g.mul(a, t), g.mul(t, g.pow(a, 2)));
        assert_eq!(g.element_order(a), 7);
        assert_eq!(g.element_order(t), 3);
        assert_eq!(g.name(g.mul(t, a)), "ta");
        assert_eq!(g.element("t^2a^3").unwrap(), 2 * 7 + 3);
    }

    #[test]
    fn table_relabels_identity() {
        // C_3 with identity at index 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(&rows, None, "T".into()).unwrap();
        assert_eq!(g.mul(1, 1), 2);
        assert_eq!(g.name(0), "1");
        assert_eq!(g.element_order(1), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        let rows = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(&rows, None, "T".into()).is_err());
        assert!(FiniteGroup::from_table_text("2\n0 1\n", "T".into()).is_err());
        // a Latin square with identity that is not associative
        let text = "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        assert!(matches!(
            FiniteGroup::from_table_text(text, "T".into()),
            Err(GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn abelian_names() {
        let g = abelian(&[2, 4], "C:2x4".into()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.name(1), "a");
        assert_eq!(g.name(7), "ab^3");
        assert_eq!(g.max_element_order(), 4);
    }
}
