use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{abelian, metacyclic, FiniteGroup};
use crate::arith::{is_prime, mult_order, pow_mod};
use crate::error::GroupError;

/// Textual description of a group construction.
///
/// Grammar: `C:n`, `C:n1xn2x...`, `D:2n` (the number is the group order),
/// `MC:n,m,r`, `F:p,q[,r]`, `M:p,n`, `ND:q`, `T:path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Abelian(Vec<u64>),
    Dihedral(u64),
    Metacyclic { n: u64, m: u64, r: u64 },
    Fpq { p: u64, q: u64, r: Option<u64> },
    Mpn { p: u64, n: u32 },
    NearDihedral(u64),
    Table(String),
}

impl GroupSpec {
    /// Check the parameter constraints of each family.
    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |msg: String| Err(GroupError::InvalidParameters(msg));
        match *self {
            GroupSpec::Cyclic(0) => bad("cyclic order must be positive".into()),
            GroupSpec::Abelian(ref fs) if fs.is_empty() || fs.contains(&0) => {
                bad("factor orders must be positive".into())
            }
            GroupSpec::Dihedral(k) if k == 0 || k % 2 == 1 => {
                bad(format!("dihedral order {k} must be a positive even number"))
            }
            GroupSpec::Metacyclic { n, m, r } => {
                if n == 0 || m == 0 {
                    return bad("n and m must be positive".into());
                }
                if n > 1 && crate::arith::gcd(r % n, n) != 1 {
                    return bad(format!("gcd({r}, {n}) != 1"));
                }
                if pow_mod(r, m, n) != 1 % n {
                    return bad(format!("{r}^{m} is not 1 mod {n}"));
                }
                Ok(())
            }
            GroupSpec::Fpq { p, q, r } => {
                if !is_prime(p) || !is_prime(q) {
                    return bad(format!("{p} and {q} must be prime"));
                }
                if (q - 1) % p != 0 {
                    return bad(format!("{p} does not divide {q}-1"));
                }
                if let Some(r) = r {
                    if pow_mod(r, p, q) != 1 || r % q == 1 {
                        return bad(format!("{r} does not have order {p} mod {q}"));
                    }
                }
                Ok(())
            }
            GroupSpec::Mpn { p, n } => {
                if !is_prime(p) {
                    return bad(format!("{p} is not prime"));
                }
                if n < 3 {
                    return bad(format!("n = {n} must be at least 3"));
                }
                Ok(())
            }
            GroupSpec::NearDihedral(q) => {
                if !is_prime(q) || q % 4 != 1 {
                    return bad(format!("{q} must be a prime congruent to 1 mod 4"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Build and validate the group. `Table` specs need file access and are
    /// rejected here; use [`FiniteGroup::from_table_text`] instead.
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        self.validate()?;
        match *self {
            GroupSpec::Cyclic(n) => abelian(&[n], format!("C:{n}")),
            GroupSpec::Abelian(ref fs) => abelian(fs, self.to_string()),
            GroupSpec::Dihedral(k) => {
                let n = k / 2;
                metacyclic(n, 2, n.saturating_sub(1), format!("D:{k}"))
            }
            GroupSpec::Metacyclic { n, m, r } => metacyclic(n, m, r, self.to_string()),
            GroupSpec::Fpq { p, q, r } => {
                let r = match r {
                    Some(r) => r,
                    None => default_fpq_r(p, q)?,
                };
                metacyclic(q, p, r, format!("F:{p},{q},{r}"))
            }
            GroupSpec::Mpn { p, n } => {
                let big = checked_pow(p, n - 1)?;
                let r = 1 + big / p;
                metacyclic(big, p, r, format!("M:{p},{n}"))
            }
            GroupSpec::NearDihedral(q) => {
                let r = (2..q)
                    .find(|&r| r * r % q == q - 1)
                    .ok_or_else(|| GroupError::InvalidParameters(format!("no square root of -1 mod {q}")))?;
                metacyclic(q, 4, r, format!("ND:{q}"))
            }
            GroupSpec::Table(_) => Err(GroupError::NeedsLoader),
        }
    }
}

fn checked_pow(p: u64, e: u32) -> Result<u64, GroupError> {
    p.checked_pow(e)
        .filter(|&v| v <= crate::bits::MAX_ORDER as u64)
        .ok_or(GroupError::TooLarge(u64::MAX, crate::bits::MAX_ORDER))
}

/// Smallest `r` in `[2, q-1]` of multiplicative order exactly `p` mod `q`.
pub fn default_fpq_r(p: u64, q: u64) -> Result<u64, GroupError> {
    (2..q)
        .find(|&r| mult_order(r, q) == Some(p))
        .ok_or_else(|| GroupError::InvalidParameters(format!("no element of order {p} mod {q}")))
}

fn parse_list(s: &str, sep: char) -> Option<Vec<u64>> {
    s.split(sep).map(|t| t.trim().parse::<u64>().ok()).collect()
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || GroupError::BadSpec(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(err)?;
        let kind = kind.trim().to_ascii_uppercase();
        if kind == "T" {
            let path = rest.trim();
            if path.is_empty() {
                return Err(err());
            }
            return Ok(GroupSpec::Table(path.to_string()));
        }
        let spec = match kind.as_str() {
            "C" => {
                let fs = parse_list(rest, 'x').ok_or_else(err)?;
                if fs.len() == 1 {
                    GroupSpec::Cyclic(fs[0])
                } else {
                    GroupSpec::Abelian(fs)
                }
            }
            "D" => GroupSpec::Dihedral(rest.trim().parse().map_err(|_| err())?),
            "MC" => match parse_list(rest, ',').ok_or_else(err)?.as_slice() {
                &[n, m, r] => GroupSpec::Metacyclic { n, m, r },
                _ => return Err(err()),
            },
            "F" => match *parse_list(rest, ',').ok_or_else(err)?.as_slice() {
                [p, q] => GroupSpec::Fpq { p, q, r: None },
                [p, q, r] => GroupSpec::Fpq { p, q, r: Some(r) },
                _ => return Err(err()),
            },
            "M" => match parse_list(rest, ',').ok_or_else(err)?.as_slice() {
                &[p, n] => GroupSpec::Mpn { p, n: u32::try_from(n).map_err(|_| err())? },
                _ => return Err(err()),
            },
            "ND" => GroupSpec::NearDihedral(rest.trim().parse().map_err(|_| err())?),
            _ => return Err(err()),
        };
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C:{n}"),
            GroupSpec::Abelian(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "C:{}", parts.join("x"))
            }
            GroupSpec::Dihedral(k) => write!(f, "D:{k}"),
            GroupSpec::Metacyclic { n, m, r } => write!(f, "MC:{n},{m},{r}"),
            GroupSpec::Fpq { p, q, r: None } => write!(f, "F:{p},{q}"),
            GroupSpec::Fpq { p, q, r: Some(r) } => write!(f, "F:{p},{q},{r}"),
            GroupSpec::Mpn { p, n } => write!(f, "M:{p},{n}"),
            GroupSpec::NearDihedral(q) => write!(f, "ND:{q}"),
            GroupSpec::Table(path) => write!(f, "T:{path}"),
        }
    }
}
