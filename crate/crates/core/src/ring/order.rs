//! Monomial orders.

use super::mono::Mono;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A global monomial order on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MonomialOrder {
    /// Degree reverse lexicographic, variables in ring order.
    #[default]
    DegRevLex,
    /// Pure lexicographic.
    Lex,
    /// Two-block order eliminating the first `split` variables; each block
    /// is compared by degrevlex, the first block first.
    Elimination { split: usize },
    /// Nonnegative weight vector, ties broken by degrevlex.
    Weight(Vec<u32>),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(a.exponents(), b.exponents(), a.degree(), b.degree()),
            MonomialOrder::Lex => lex(a.exponents(), b.exponents()),
            MonomialOrder::Elimination { split } => {
                let (a1, a2) = a.exponents().split_at(*split);
                let (b1, b2) = b.exponents().split_at(*split);
                let da1: u32 = a1.iter().map(|&e| e as u32).sum();
                let db1: u32 = b1.iter().map(|&e| e as u32).sum();
                degrevlex(a1, b1, da1, db1)
                    .then_with(|| degrevlex(a2, b2, a.degree() - da1, b.degree() - db1))
            }
            MonomialOrder::Weight(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| degrevlex(a.exponents(), b.exponents(), a.degree(), b.degree())),
        }
    }

    /// Checks that the order descriptor fits a ring with `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::Elimination { split } if *split > nvars => Err(Error::InvalidArgument(
                format!("elimination split {split} exceeds {nvars} variables"),
            )),
            MonomialOrder::Weight(w) if w.len() != nvars => Err(Error::InvalidArgument(format!(
                "weight vector has {} entries, ring has {nvars} variables",
                w.len()
            ))),
            _ => Ok(()),
        }
    }

    /// Whether the order refines the standard total degree.
    pub fn is_degree_compatible(&self) -> bool {
        match self {
            MonomialOrder::DegRevLex => true,
            MonomialOrder::Weight(w) => w.iter().all(|&x| x == w[0]),
            _ => false,
        }
    }
}

#[inline]
fn degrevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for i in 0..a.len() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Elimination { split } => write!(f, "elim:{split}"),
            MonomialOrder::Weight(w) => {
                let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "weight:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown monomial order `{s}`"));
        match s.trim() {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            other => {
                if let Some(k) = other.strip_prefix("elim:") {
                    let split = k.parse().map_err(|_| bad())?;
                    Ok(MonomialOrder::Elimination { split })
                } else if let Some(w) = other.strip_prefix("weight:") {
                    let w: std::result::Result<Vec<u32>, _> =
                        w.split(',').map(|x| x.trim().parse()).collect();
                    Ok(MonomialOrder::Weight(w.map_err(|_| bad())?))
                } else {
                    Err(bad())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Mono {
        Mono::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::DegRevLex;
        // x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        // x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_elimination() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let e = MonomialOrder::Elimination { split: 1 };
        assert_eq!(e.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 3])), Ordering::Greater);
        assert_eq!(e.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn parse_roundtrip() {
        for o in [
            MonomialOrder::DegRevLex,
            MonomialOrder::Lex,
            MonomialOrder::Elimination { split: 3 },
            MonomialOrder::Weight(vec![1, 1, 0]),
        ] {
            assert_eq!(o.to_string().parse::<MonomialOrder>().unwrap(), o);
        }
        assert!("revlexx".parse::<MonomialOrder>().is_err());
    }
}
