//! Graded Betti tables.

use crate::error::{Error, Result};
use crate::groebner::HilbertNumerator;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Graded Betti numbers `β_{i,d}` of a resolved object, `d ∈ Z^g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    id: String,
    arity: usize,
    entries: BTreeMap<(usize, Vec<i32>), u64>,
}

/// JSON form `{"id", "g", "entries": [[i, [d..], β], ..], "ranks"}`.
impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<(usize, &[i32], u64)> = self.entries().collect();
        let mut st = s.serialize_struct("BettiTable", 4)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("g", &self.arity)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("ranks", &self.ranks())?;
        st.end()
    }
}

impl BettiTable {
    pub fn new(id: impl Into<String>, arity: usize) -> Self {
        BettiTable {
            id: id.into(),
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add(&mut self, i: usize, deg: &[i32], m: u64) {
        debug_assert_eq!(deg.len(), self.arity);
        if m > 0 {
            *self.entries.entry((i, deg.to_vec())).or_insert(0) += m;
        }
    }

    pub fn get(&self, i: usize, deg: &[i32]) -> u64 {
        self.entries.get(&(i, deg.to_vec())).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, degree, β)` in increasing `(i, degree)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &[i32], u64)> {
        self.entries.iter().map(|((i, d), &m)| (*i, d.as_slice(), m))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total Betti number `β_i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Ranks `β_0, …, β_p` of the free modules.
    pub fn ranks(&self) -> Vec<u64> {
        match self.projdim() {
            Some(p) => (0..=p).map(|i| self.total(i)).collect(),
            None => vec![],
        }
    }

    /// Largest `i` with `β_i ≠ 0`.
    pub fn projdim(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    /// `max{ j − i : β_{i,j} ≠ 0 }` for a Z-graded table.
    pub fn regularity(&self) -> Result<i64> {
        if self.arity != 1 {
            return Err(Error::GradingArity {
                expected: 1,
                found: self.arity,
            });
        }
        self.max_shift(|d| d[0] as i64)
    }

    /// `max{ a − i : β_{i,(a,b)} ≠ 0 }` for a Z²-graded table.
    pub fn reg_10(&self) -> Result<i64> {
        if self.arity != 2 {
            return Err(Error::GradingArity {
                expected: 2,
                found: self.arity,
            });
        }
        self.max_shift(|d| d[0] as i64)
    }

    fn max_shift(&self, f: impl Fn(&[i32]) -> i64) -> Result<i64> {
        self.entries()
            .map(|(i, d, _)| f(d) - i as i64)
            .max()
            .ok_or_else(|| Error::InvalidArgument("empty Betti table".into()))
    }

    /// Whether every nonzero `β_{i,j}` (total degree `j`) has `j = d + i`.
    pub fn is_linear(&self, d: i64) -> bool {
        self.entries()
            .all(|(i, deg, _)| deg.iter().map(|&x| x as i64).sum::<i64>() == d + i as i64)
    }

    /// The table with homological indices moved by `delta`; entries whose
    /// index would become negative are dropped.
    pub fn shifted(&self, delta: isize) -> BettiTable {
        let mut out = BettiTable::new(self.id.clone(), self.arity);
        for (i, d, m) in self.entries() {
            let j = i as isize + delta;
            if j >= 0 {
                out.add(j as usize, d, m);
            }
        }
        out
    }

    /// `Σ_i (−1)^i β_{i,d} t^d`.
    pub fn euler_numerator(&self) -> HilbertNumerator {
        let mut h = HilbertNumerator::zero(self.arity);
        for (i, d, m) in self.entries() {
            let s = if i % 2 == 0 { 1 } else { -1 };
            h.add_term(d, s * m as i64);
        }
        h
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the text format produced by [`BettiTable::to_text`].
    pub fn parse(text: &str) -> Result<BettiTable> {
        let bad = |pos: usize, msg: &str| Error::Parse {
            input: text.to_string(),
            pos,
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| bad(0, "missing header"))?;
        let mut h = header.split_whitespace();
        if h.next() != Some("betti") {
            return Err(bad(0, "header must start with `betti`"));
        }
        let id = h.next().ok_or_else(|| bad(0, "missing object id"))?;
        let arity: usize = h
            .next()
            .and_then(|g| g.strip_prefix("g="))
            .and_then(|g| g.parse().ok())
            .filter(|g| *g == 1 || *g == 2)
            .ok_or_else(|| bad(0, "expected g=1 or g=2"))?;
        let mut t = BettiTable::new(id, arity);
        for (ln, line) in lines {
            let nums: Vec<i64> = line
                .split_whitespace()
                .map(|w| w.parse::<i64>().map_err(|_| bad(ln, "expected integers")))
                .collect::<Result<_>>()?;
            if nums.len() != arity + 2 || nums[0] < 0 || nums[arity + 1] <= 0 {
                return Err(bad(ln, "malformed entry"));
            }
            let deg: Vec<i32> = nums[1..=arity].iter().map(|&x| x as i32).collect();
            t.add(nums[0] as usize, &deg, nums[arity + 1] as u64);
        }
        Ok(t)
    }

    /// Human-readable grid (Z-graded tables only): row `r`, column `i`
    /// holds `β_{i,i+r}`.
    pub fn grid(&self) -> Option<String> {
        if self.arity != 1 || self.is_empty() {
            return None;
        }
        let p = self.projdim()?;
        let lo = self.entries().map(|(i, d, _)| d[0] as i64 - i as i64).min()?;
        let hi = self.entries().map(|(i, d, _)| d[0] as i64 - i as i64).max()?;
        let mut s = String::new();
        s.push_str(&format!("{:>6}", ""));
        for i in 0..=p {
            s.push_str(&format!("{i:>6}"));
        }
        s.push('\n');
        for r in lo..=hi {
            s.push_str(&format!("{:>5}:", r));
            for i in 0..=p {
                let b = self.get(i, &[(r + i as i64) as i32]);
                if b == 0 {
                    s.push_str(&format!("{:>6}", "."));
                } else {
                    s.push_str(&format!("{b:>6}"));
                }
            }
            s.push('\n');
        }
        Some(s)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "betti {} g={}", self.id, self.arity)?;
        for (i, d, m) in self.entries() {
            write!(f, "{i}")?;
            for x in d {
                write!(f, " {x}")?;
            }
            writeln!(f, " {m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_and_invariants() {
        let mut t = BettiTable::new("sq", 1);
        t.add(0, &[2], 3);
        t.add(1, &[3], 2);
        assert_eq!(t.to_text(), "betti sq g=1\n0 2 3\n1 3 2\n");
        assert_eq!(BettiTable::parse(&t.to_text()).unwrap(), t);
        assert_eq!(t.regularity().unwrap(), 2);
        assert_eq!(t.projdim(), Some(1));
        assert!(t.is_linear(2));
        assert!(t.reg_10().is_err());
        assert_eq!(t.euler_numerator().to_string(), "3*t^2 - 2*t^3");
    }

    #[test]
    fn bigraded_reg_10() {
        let mut t = BettiTable::new("r", 2);
        t.add(0, &[0, 0], 1);
        t.add(1, &[1, 1], 4);
        t.add(2, &[2, 2], 1);
        assert_eq!(t.reg_10().unwrap(), 0);
        assert!(BettiTable::parse("betti x g=3\n").is_err());
    }
}
